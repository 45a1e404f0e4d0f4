// Copyright 2026 The QCE Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * JSON files for instruction sets and programs.
 *
 * Instruction set:
 *   {"name", "num_qubits", "instructions": [{"name", "kind", "tau_over_2pi",
 *     "J": [{"j","k","axis","value"}],
 *     "fields": [{"qubit","axis","h0","h1","f","phi"}]}]}
 * Program:
 *   {"name", "steps": ["Initialize", "X1", ...]}
 *
 * Durations are stored as tau / 2pi; omitted parameters are zero.
 */
#pragma once

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "qce/algolib.hpp"
#include "qce/error.hpp"
#include "qce/model.hpp"
#include "qce/program.hpp"

namespace qce {

using nlohmann::json;

namespace detail {

inline constexpr double kTauUnit = 2.0 * std::numbers::pi;

template <typename T>
T get_or(const json &j, std::string_view key, T fallback) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return fallback;
    }
    return it->get<T>();
}

inline std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json(const std::string &text, std::string_view what) {
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        throw ValidationError(std::string(what) + ": " + e.what());
    }
}

} // namespace detail

inline json to_json(const MicroInstruction &mi) {
    json j;
    j["name"] = mi.name;
    j["kind"] = std::string(kind_name(mi.kind));
    j["tau_over_2pi"] = mi.tau / detail::kTauUnit;
    j["J"] = json::array();
    for (const auto &[key, v] : mi.J) {
        const auto [a, b, axis] = key;
        j["J"].push_back({{"j", a}, {"k", b}, {"axis", axis_name(axis)}, {"value", v}});
    }
    j["fields"] = json::array();
    for (const auto &[key, p] : mi.fields) {
        j["fields"].push_back({{"qubit", key.first},
                               {"axis", axis_name(key.second)},
                               {"h0", p.h0},
                               {"h1", p.h1},
                               {"f", p.f},
                               {"phi", p.phi}});
    }
    return j;
}

inline json to_json(const InstructionSet &set) {
    json j;
    j["name"] = set.name;
    j["num_qubits"] = set.num_qubits;
    j["instructions"] = json::array();
    for (const auto &mi : set.instructions) {
        j["instructions"].push_back(to_json(mi));
    }
    return j;
}

inline MicroInstruction instruction_from_json(const json &j) {
    try {
        MicroInstruction mi;
        mi.name = j.at("name").get<std::string>();
        mi.kind = parse_kind(detail::get_or<std::string>(j, "kind", "normal"));
        mi.tau = detail::kTauUnit * detail::get_or<double>(j, "tau_over_2pi", 0.0);
        for (const auto &c : detail::get_or<json>(j, "J", json::array())) {
            const auto a = c.at("j").get<std::size_t>();
            const auto b = c.at("k").get<std::size_t>();
            mi.set_coupling(a, b, parse_axis(c.at("axis").get<std::string>()),
                            detail::get_or<double>(c, "value", 0.0));
        }
        for (const auto &f : detail::get_or<json>(j, "fields", json::array())) {
            FieldParams p;
            p.h0 = detail::get_or<double>(f, "h0", 0.0);
            p.h1 = detail::get_or<double>(f, "h1", 0.0);
            p.f = detail::get_or<double>(f, "f", 0.0);
            p.phi = detail::get_or<double>(f, "phi", 0.0);
            mi.set_field(f.at("qubit").get<std::size_t>(),
                         parse_axis(f.at("axis").get<std::string>()), p);
        }
        return mi;
    } catch (const json::exception &e) {
        throw ValidationError(std::string("instruction: ") + e.what());
    }
}

/// Parses and validates; invariant violations are reported together.
inline InstructionSet set_from_json(const json &j) {
    InstructionSet set;
    try {
        set.name = j.at("name").get<std::string>();
        set.num_qubits = j.at("num_qubits").get<std::size_t>();
        for (const auto &mi : j.at("instructions")) {
            set.instructions.push_back(instruction_from_json(mi));
        }
    } catch (const json::exception &e) {
        throw ValidationError(std::string("instruction set: ") + e.what());
    }
    const auto diags = validate_set(set);
    if (!diags.empty()) {
        std::string msg = "invalid instruction set:";
        for (const auto &d : diags) {
            msg += "\n  " + d.str();
        }
        throw ValidationError(msg);
    }
    return set;
}

inline json to_json(const QuantumProgram &p) {
    return json{{"name", p.name}, {"steps", p.steps}};
}

inline QuantumProgram program_from_json(const json &j) {
    try {
        QuantumProgram p;
        p.name = j.at("name").get<std::string>();
        p.steps = j.at("steps").get<std::vector<std::string>>();
        if (p.name.empty()) {
            throw ValidationError("program name is empty");
        }
        return p;
    } catch (const json::exception &e) {
        throw ValidationError(std::string("program: ") + e.what());
    }
}

/// Built-in id ("NMR", "Ideal", "NMR-Ideal") or path to a set file.
inline InstructionSet load_set(const std::string &id_or_path) {
    for (const auto &id : builtin_set_ids()) {
        if (id == id_or_path) {
            return builtin_set(id);
        }
    }
    return set_from_json(
        detail::parse_json(detail::read_file(id_or_path), id_or_path));
}

/// Built-in program name ("d-j3", "grov2", ...) or path to a program file.
inline QuantumProgram load_program(const std::string &id_or_path,
                                   const ProgramLibrary &lib) {
    if (auto it = lib.find(id_or_path); it != lib.end()) {
        return it->second;
    }
    return program_from_json(
        detail::parse_json(detail::read_file(id_or_path), id_or_path));
}

/// Steps that resolve to neither an MI of `set` nor a program of `lib`.
inline std::vector<Diagnostic> validate_program(const QuantumProgram &p,
                                                const ProgramLibrary &lib,
                                                const InstructionSet &set) {
    std::vector<Diagnostic> out;
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        const auto &s = p.steps[i];
        if (set.find(s) == nullptr && lib.find(s) == lib.end()) {
            out.push_back({p.name, "steps[" + std::to_string(i) + "]",
                           "MI not found: " + s});
        }
    }
    return out;
}

} // namespace qce
