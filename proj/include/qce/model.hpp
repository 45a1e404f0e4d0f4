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
 * Hardware model: micro-instructions (MIs) and instruction sets.
 *
 * While an MI is active the Hamiltonian is
 *
 *   H(t) = - sum_{j<k} sum_a J_{j,k,a} S_j^a S_k^a
 *          - sum_j sum_a (h_{j,a,0} + h_{j,a,1} sin(f_{j,a} t + phi_{j,a})) S_j^a
 *
 * with hbar = 1. Each pair coupling is stored and counted once.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "qce/error.hpp"
#include "qce/state.hpp"

namespace qce {

/// Static plus sinusoidal drive of one (qubit, axis) component.
struct FieldParams {
    double h0 = 0.0;
    double h1 = 0.0;
    double f = 0.0;
    double phi = 0.0;

    [[nodiscard]] double at(double t) const {
        return h1 == 0.0 ? h0 : h0 + h1 * std::sin(f * t + phi);
    }
    [[nodiscard]] bool is_zero() const { return h0 == 0.0 && h1 == 0.0; }
    [[nodiscard]] bool is_static() const { return h1 == 0.0; }
    [[nodiscard]] bool finite() const {
        return std::isfinite(h0) && std::isfinite(h1) && std::isfinite(f) &&
               std::isfinite(phi);
    }
    bool operator==(const FieldParams &) const = default;
};

enum class InstructionKind { normal, initialize, breakpoint };

inline std::string_view kind_name(InstructionKind k) {
    switch (k) {
    case InstructionKind::initialize:
        return "initialize";
    case InstructionKind::breakpoint:
        return "breakpoint";
    default:
        return "normal";
    }
}

inline InstructionKind parse_kind(std::string_view s) {
    if (s == "normal") {
        return InstructionKind::normal;
    }
    if (s == "initialize") {
        return InstructionKind::initialize;
    }
    if (s == "breakpoint") {
        return InstructionKind::breakpoint;
    }
    throw ValidationError("unknown instruction kind: " + std::string(s));
}

/// (j, k, axis) with j < k, both 1-based.
using CouplingKey = std::tuple<std::size_t, std::size_t, Axis>;
/// (qubit, axis), qubit 1-based.
using FieldKey = std::pair<std::size_t, Axis>;

struct MicroInstruction {
    std::string name;
    InstructionKind kind = InstructionKind::normal;
    /// Duration in simulation time units (files carry tau / 2pi).
    double tau = 0.0;
    std::map<CouplingKey, double> J;
    std::map<FieldKey, FieldParams> fields;

    [[nodiscard]] double coupling(std::size_t j, std::size_t k, Axis a) const {
        if (j > k) {
            std::swap(j, k);
        }
        auto it = J.find({j, k, a});
        return it == J.end() ? 0.0 : it->second;
    }

    [[nodiscard]] FieldParams field(std::size_t j, Axis a) const {
        auto it = fields.find({j, a});
        return it == fields.end() ? FieldParams{} : it->second;
    }

    void set_coupling(std::size_t j, std::size_t k, Axis a, double v) {
        J[{j, k, a}] = v;
    }
    void set_field(std::size_t j, Axis a, FieldParams p) { fields[{j, a}] = p; }

    /// True when nothing acts along x or y; the propagator then needs only
    /// diagonal phases.
    [[nodiscard]] bool is_diagonal() const {
        for (const auto &[key, v] : J) {
            if (std::get<2>(key) != Axis::z && v != 0.0) {
                return false;
            }
        }
        for (const auto &[key, p] : fields) {
            if (key.second != Axis::z && !p.is_zero()) {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] bool is_time_independent() const {
        return std::all_of(fields.begin(), fields.end(),
                           [](const auto &kv) { return kv.second.is_static(); });
    }

    bool operator==(const MicroInstruction &) const = default;
};

class InstructionSet {
  public:
    std::string name;
    std::size_t num_qubits = 0;
    std::vector<MicroInstruction> instructions;

    [[nodiscard]] const MicroInstruction *find(std::string_view mi) const {
        for (const auto &m : instructions) {
            if (m.name == mi) {
                return &m;
            }
        }
        return nullptr;
    }

    [[nodiscard]] MicroInstruction *find(std::string_view mi) {
        for (auto &m : instructions) {
            if (m.name == mi) {
                return &m;
            }
        }
        return nullptr;
    }

    [[nodiscard]] const MicroInstruction &at(std::string_view mi) const {
        if (const auto *p = find(mi)) {
            return *p;
        }
        throw ExecutionError("MI not found: " + std::string(mi));
    }

    /// Name of the first instruction of the given kind, if any.
    [[nodiscard]] std::optional<std::string>
    reserved(InstructionKind k) const {
        for (const auto &m : instructions) {
            if (m.kind == k) {
                return m.name;
            }
        }
        return std::nullopt;
    }

    bool operator==(const InstructionSet &) const = default;
};

/// One axis of the Hamiltonian at a fixed time: pair couplings and the
/// instantaneous per-qubit field g_j(t) = h0 + h1 sin(f t + phi).
struct AxisBundle {
    struct Pair {
        std::size_t j;
        std::size_t k;
        double value;
    };
    std::vector<Pair> couplings;
    std::vector<double> field; // indexed j-1

    [[nodiscard]] bool is_zero() const {
        return std::all_of(couplings.begin(), couplings.end(),
                           [](const Pair &p) { return p.value == 0.0; }) &&
               std::all_of(field.begin(), field.end(),
                           [](double g) { return g == 0.0; });
    }
};

inline AxisBundle axis_hamiltonian(const MicroInstruction &mi, Axis a,
                                   double t, std::size_t num_qubits) {
    AxisBundle b;
    b.field.assign(num_qubits, 0.0);
    for (const auto &[key, v] : mi.J) {
        const auto [j, k, axis] = key;
        if (axis == a && v != 0.0) {
            b.couplings.push_back({j, k, v});
        }
    }
    for (const auto &[key, p] : mi.fields) {
        if (key.second == a && key.first >= 1 && key.first <= num_qubits) {
            b.field[key.first - 1] = p.at(t);
        }
    }
    return b;
}

struct Diagnostic {
    std::string instruction;
    std::string field;
    std::string message;

    [[nodiscard]] std::string str() const {
        std::string s = instruction.empty() ? "set" : instruction;
        if (!field.empty()) {
            s += "." + field;
        }
        return s + ": " + message;
    }
};

/// Checks every InstructionSet/MicroInstruction invariant; empty when valid.
inline std::vector<Diagnostic> validate_set(const InstructionSet &set) {
    std::vector<Diagnostic> out;
    if (set.name.empty()) {
        out.push_back({"", "name", "set name is empty"});
    }
    if (set.num_qubits < 1 || set.num_qubits > max_qubits()) {
        out.push_back({"", "num_qubits",
                       "qubit count " + std::to_string(set.num_qubits) +
                           " outside 1.." + std::to_string(max_qubits())});
    }
    std::size_t inits = 0;
    std::size_t breaks = 0;
    std::map<std::string, int> seen;
    for (const auto &mi : set.instructions) {
        const std::string &n = mi.name;
        if (n.empty()) {
            out.push_back({n, "name", "instruction name is empty"});
        }
        if (++seen[n] == 2) {
            out.push_back({n, "name", "duplicate instruction name"});
        }
        if (mi.kind == InstructionKind::initialize) {
            ++inits;
        }
        if (mi.kind == InstructionKind::breakpoint) {
            ++breaks;
            if (mi.tau != 0.0 || !mi.J.empty() || !mi.fields.empty()) {
                out.push_back(
                    {n, "kind", "breakpoint must have tau = 0 and no parameters"});
            }
        }
        if (!std::isfinite(mi.tau) || mi.tau < 0.0) {
            out.push_back({n, "tau", "duration must be finite and >= 0"});
        }
        for (const auto &[key, v] : mi.J) {
            const auto [j, k, axis] = key;
            const std::string where = "J(" + std::to_string(j) + "," +
                                      std::to_string(k) + "," +
                                      std::string(axis_name(axis)) + ")";
            if (j >= k) {
                out.push_back({n, where, "coupling requires j < k"});
            }
            if (j < 1 || k > set.num_qubits) {
                out.push_back({n, where, "qubit index out of range"});
            }
            if (!std::isfinite(v)) {
                out.push_back({n, where, "non-finite coupling"});
            }
        }
        for (const auto &[key, p] : mi.fields) {
            const std::string where = "field(" + std::to_string(key.first) +
                                      "," + std::string(axis_name(key.second)) +
                                      ")";
            if (key.first < 1 || key.first > set.num_qubits) {
                out.push_back({n, where, "qubit index out of range"});
            }
            if (!p.finite()) {
                out.push_back({n, where, "non-finite field parameter"});
            }
        }
    }
    if (inits != 1) {
        out.push_back({"", "instructions",
                       "expected exactly one initialize instruction, found " +
                           std::to_string(inits)});
    }
    if (breaks != 1) {
        out.push_back({"", "instructions",
                       "expected exactly one breakpoint instruction, found " +
                           std::to_string(breaks)});
    }
    return out;
}

inline std::vector<std::string> builtin_set_ids() {
    return {"NMR", "Ideal", "NMR-Ideal"};
}

namespace detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline MicroInstruction reserved_mi(std::string name, InstructionKind k) {
    MicroInstruction m;
    m.name = std::move(name);
    m.kind = k;
    return m;
}

/// Flips every RF amplitude (NMR) or every static transverse field (Ideal).
inline MicroInstruction inverted(MicroInstruction m, std::string name,
                                 bool flip_static) {
    m.name = std::move(name);
    for (auto &[key, p] : m.fields) {
        if (key.second == Axis::z) {
            continue;
        }
        if (flip_static) {
            p.h0 = -p.h0;
        } else {
            p.h1 = -p.h1;
        }
    }
    return m;
}

inline MicroInstruction nmr_base(std::string name, double tau_over_2pi) {
    MicroInstruction m;
    m.name = std::move(name);
    m.tau = kTwoPi * tau_over_2pi;
    m.set_coupling(1, 2, Axis::z, -1e-6);
    m.set_field(1, Axis::z, {1.0, 0.0, 0.0, 0.0});
    m.set_field(2, Axis::z, {0.25, 0.0, 0.0, 0.0});
    return m;
}

/// RF pulse on both spins; the second spin sees 1/4 of the amplitude.
inline MicroInstruction nmr_pulse(std::string name, double tau_over_2pi,
                                  Axis rf_axis, double h1, double f) {
    MicroInstruction m = nmr_base(std::move(name), tau_over_2pi);
    m.set_field(1, rf_axis, {0.0, h1, f, 0.0});
    m.set_field(2, rf_axis, {0.0, h1 / 4.0, f, 0.0});
    return m;
}

inline InstructionSet nmr_set() {
    InstructionSet s;
    s.name = "NMR";
    s.num_qubits = 2;
    // Rotation about x needs an RF pulse along y and vice versa.
    const auto x1 = nmr_pulse("X1", 10, Axis::y, -0.05, 1.0);
    const auto x2b = nmr_pulse("X2bar", 40, Axis::y, 0.05, 0.25);
    const auto y1 = nmr_pulse("Y1", 10, Axis::x, 0.05, 1.0);
    const auto y2b = nmr_pulse("Y2bar", 40, Axis::x, -0.05, 0.25);
    s.instructions = {
        x1,
        inverted(x1, "X1bar", false),
        inverted(x2b, "X2", false),
        x2b,
        y1,
        inverted(y1, "Y1bar", false),
        inverted(y2b, "Y2", false),
        y2b,
        nmr_base("I(pi/2)", 25e4),
        nmr_base("I(pi)", 50e4),
        reserved_mi("Initialize", InstructionKind::initialize),
        reserved_mi("Breakpoint", InstructionKind::breakpoint),
    };
    return s;
}

inline InstructionSet ideal_set() {
    InstructionSet s;
    s.name = "Ideal";
    s.num_qubits = 2;
    auto rot = [](std::string name, std::size_t q, Axis a, double h0) {
        MicroInstruction m;
        m.name = std::move(name);
        m.tau = kTwoPi * 0.25;
        m.set_field(q, a, {h0, 0.0, 0.0, 0.0});
        return m;
    };
    auto ising = [](std::string name, double tau_over_2pi) {
        MicroInstruction m;
        m.name = std::move(name);
        m.tau = kTwoPi * tau_over_2pi;
        m.set_coupling(1, 2, Axis::z, -1e-6);
        return m;
    };
    s.instructions = {
        rot("X1", 1, Axis::x, 1.0),     rot("X1bar", 1, Axis::x, -1.0),
        rot("X2", 2, Axis::x, 1.0),     rot("X2bar", 2, Axis::x, -1.0),
        rot("Y1", 1, Axis::y, 1.0),     rot("Y1bar", 1, Axis::y, -1.0),
        rot("Y2", 2, Axis::y, 1.0),     rot("Y2bar", 2, Axis::y, -1.0),
        ising("I(pi/2)", 25e4),         ising("I(pi)", 50e4),
        reserved_mi("Initialize", InstructionKind::initialize),
        reserved_mi("Breakpoint", InstructionKind::breakpoint),
    };
    return s;
}

/// Qubit addressed by an NMR pulse name ("X1", "Y2bar", ...), 0 otherwise.
inline std::size_t resonant_qubit(const std::string &name) {
    if (name.size() >= 2 && (name[0] == 'X' || name[0] == 'Y')) {
        return static_cast<std::size_t>(name[1] - '0');
    }
    return 0;
}

inline InstructionSet nmr_ideal_set() {
    InstructionSet s = nmr_set();
    s.name = "NMR-Ideal";
    for (auto &m : s.instructions) {
        const std::size_t q = resonant_qubit(m.name);
        if (q == 0) {
            continue;
        }
        const std::size_t other = q == 1 ? 2 : 1;
        for (auto &[key, p] : m.fields) {
            if (key.first == other && key.second != Axis::z) {
                p.h1 = 0.0;
            }
        }
    }
    return s;
}

} // namespace detail

/// Two-qubit sets: "NMR" (chloroform NMR pulses), "Ideal" (exact
/// rotations) and "NMR-Ideal" (NMR with RF acting on the resonant spin only).
inline InstructionSet builtin_set(std::string_view id) {
    if (id == "NMR") {
        return detail::nmr_set();
    }
    if (id == "Ideal") {
        return detail::ideal_set();
    }
    if (id == "NMR-Ideal") {
        return detail::nmr_ideal_set();
    }
    throw ValidationError("unknown instruction set: " + std::string(id));
}

} // namespace qce
