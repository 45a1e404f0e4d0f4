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
 * Reference reports: action of the D-J function sequences on the basis
 * states, and final readouts of the D-J, CKH and Grover programs on each
 * instruction set compared against reference values.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qce/algolib.hpp"
#include "qce/model.hpp"
#include "qce/oracle.hpp"
#include "qce/program.hpp"
#include "qce/propagator.hpp"

namespace qce::tables {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Function sequences on basis states

struct BasisAction {
    int function = 0;       // 1..4
    std::size_t input = 0;  // basis index
    std::size_t output = 0; // basis index of the image
    std::complex<double> coefficient;
    std::complex<double> expected;
    std::size_t expected_output = 0;
    double error = 0.0; // |U - expected| over the whole column
};

namespace detail {

inline std::complex<double> eipi(double frac) {
    return std::polar(1.0, frac * std::numbers::pi);
}

/// Reference column F_k |n> = c |m>, as (m, c).
inline std::pair<std::size_t, std::complex<double>> expected_action(int k,
                                                                    std::size_t n) {
    const bool x1 = (n & 1U) != 0;
    switch (k) {
    case 1:
        return {n, -1.0};
    case 2:
        return {n ^ 2U, {0.0, 1.0}};
    case 3:
        return x1 ? std::pair{n ^ 2U, -eipi(-0.25)} : std::pair{n, eipi(-0.25)};
    default:
        return x1 ? std::pair{n, eipi(0.25)} : std::pair{n ^ 2U, -eipi(0.25)};
    }
}

} // namespace detail

inline std::vector<BasisAction> function_actions() {
    std::vector<BasisAction> out;
    for (int k = 1; k <= 4; ++k) {
        const auto u = oracle::sequence_matrix(dj_function_sequence(k), 2);
        for (std::size_t n = 0; n < 4; ++n) {
            BasisAction a;
            a.function = k;
            a.input = n;
            const auto col = u.col(static_cast<Eigen::Index>(n));
            Eigen::Index best = 0;
            col.cwiseAbs().maxCoeff(&best);
            a.output = static_cast<std::size_t>(best);
            a.coefficient = col(best);
            const auto [m, c] = detail::expected_action(k, n);
            a.expected_output = m;
            a.expected = c;
            double err = 0.0;
            for (std::size_t r = 0; r < 4; ++r) {
                const std::complex<double> want = r == m ? c : 0.0;
                err = std::max(err, std::abs(col(static_cast<Eigen::Index>(r)) - want));
            }
            a.error = err;
            out.push_back(a);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Final readouts

struct Cell {
    std::string program;
    double value = 0.0;
    std::optional<double> reference;
    double tolerance = 0.0;

    [[nodiscard]] double deviation() const {
        return reference ? value - *reference : 0.0;
    }
    [[nodiscard]] bool ok() const {
        return !reference || std::abs(value - *reference) <= tolerance;
    }
};

struct ReadoutTable {
    std::string title;
    std::string set;
    ClockConvention clock = ClockConvention::global;
    std::vector<std::vector<Cell>> rows; // rows[qubit][program]
    std::vector<std::string> row_labels;

    [[nodiscard]] bool ok() const {
        for (const auto &r : rows) {
            for (const auto &c : r) {
                if (!c.ok()) {
                    return false;
                }
            }
        }
        return true;
    }
    [[nodiscard]] double max_abs_deviation() const {
        double d = 0.0;
        for (const auto &r : rows) {
            for (const auto &c : r) {
                d = std::max(d, std::abs(c.deviation()));
            }
        }
        return d;
    }
};

using Pair = std::array<double, 2>;

/// Reference (Q1, Q2) for d-j1..4; empty when none is known.
inline std::optional<std::array<Pair, 4>> dj_reference(const std::string &set) {
    if (set == "Ideal") {
        return std::array<Pair, 4>{{{0, 0}, {0, 0}, {1, 0}, {1, 0}}};
    }
    if (set == "NMR") {
        return std::array<Pair, 4>{
            {{0.169, 0.999}, {0.064, 1.000}, {0.867, 0.001}, {0.867, 0.002}}};
    }
    if (set == "NMR-Ideal") {
        return std::array<Pair, 4>{
            {{0.000, 1.000}, {0.000, 1.000}, {0.998, 0.001}, {0.998, 0.001}}};
    }
    return std::nullopt;
}

/// Reference Q1 for ckh1..4.
inline std::optional<std::array<double, 4>> ckh_reference(const std::string &set) {
    if (set == "Ideal" || set == "NMR-Ideal") {
        return std::array<double, 4>{0.000, 0.000, 1.000, 1.000};
    }
    if (set == "NMR") {
        return std::array<double, 4>{0.000, 0.000, 0.995, 0.996};
    }
    return std::nullopt;
}

/// Reference (Q1, Q2) for grov0..3.
inline std::optional<std::array<Pair, 4>> grover_reference(const std::string &set) {
    if (set == "Ideal") {
        return std::array<Pair, 4>{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
    }
    if (set == "NMR") {
        return std::array<Pair, 4>{
            {{0.028, 0.163}, {0.966, 0.171}, {0.037, 0.836}, {0.955, 0.830}}};
    }
    return std::nullopt;
}

inline double tolerance_for(const std::string &set) {
    if (set == "Ideal") {
        return 1e-3;
    }
    if (set == "NMR-Ideal") {
        return 0.01;
    }
    return 0.02;
}

/// Final z readouts of a built-in program.
inline std::vector<double> final_z(const InstructionSet &set,
                                   const ProgramLibrary &lib,
                                   const std::string &program,
                                   EvolutionConfig cfg) {
    Session s(set, lib, lib.at(program), cfg);
    s.run();
    if (s.status() != SessionStatus::finished) {
        throw ExecutionError(program + ": " +
                             (s.error_message().empty() ? "did not finish"
                                                        : s.error_message()));
    }
    std::vector<double> z;
    for (const auto &q : readouts(s.state())) {
        z.push_back(q[2]);
    }
    return z;
}

inline ReadoutTable dj_table(const InstructionSet &set, const ProgramLibrary &lib,
                             EvolutionConfig cfg) {
    ReadoutTable t{"D-J final readouts", set.name, cfg.clock, {{}, {}}, {"Q1", "Q2"}};
    const auto ref = dj_reference(set.name);
    for (int k = 1; k <= 4; ++k) {
        const std::string p = "d-j" + std::to_string(k);
        const auto z = final_z(set, lib, p, cfg);
        for (std::size_t q = 0; q < 2; ++q) {
            Cell c{p, z[q], std::nullopt, tolerance_for(set.name)};
            if (ref) {
                c.reference = (*ref)[static_cast<std::size_t>(k - 1)][q];
            }
            t.rows[q].push_back(c);
        }
    }
    return t;
}

inline ReadoutTable ckh_table(const InstructionSet &set, const ProgramLibrary &lib,
                              EvolutionConfig cfg) {
    ReadoutTable t{"CKH final readouts", set.name, cfg.clock, {{}}, {"Q1"}};
    const auto ref = ckh_reference(set.name);
    for (int k = 1; k <= 4; ++k) {
        const std::string p = "ckh" + std::to_string(k);
        const auto z = final_z(set, lib, p, cfg);
        Cell c{p, z[0], std::nullopt, 0.01};
        if (ref) {
            c.reference = (*ref)[static_cast<std::size_t>(k - 1)];
        }
        t.rows[0].push_back(c);
    }
    return t;
}

inline ReadoutTable grover_table(const InstructionSet &set, const ProgramLibrary &lib,
                                 EvolutionConfig cfg) {
    ReadoutTable t{"Grover final readouts", set.name, cfg.clock, {{}, {}}, {"Q1", "Q2"}};
    const auto ref = grover_reference(set.name);
    for (int j = 0; j <= 3; ++j) {
        const std::string p = "grov" + std::to_string(j);
        const auto z = final_z(set, lib, p, cfg);
        for (std::size_t q = 0; q < 2; ++q) {
            Cell c{p, z[q], std::nullopt, tolerance_for(set.name)};
            if (ref) {
                c.reference = (*ref)[static_cast<std::size_t>(j)][q];
            }
            t.rows[q].push_back(c);
        }
    }
    return t;
}

struct Report {
    std::vector<BasisAction> actions;
    std::vector<ReadoutTable> tables;
};

/// All reports for the given set ids under each clock convention.
inline Report build_report(const std::vector<std::string> &set_ids,
                           EvolutionConfig cfg = {}) {
    Report r;
    r.actions = function_actions();
    const auto lib = builtin_library();
    for (const auto &id : set_ids) {
        const auto set = builtin_set(id);
        for (auto clock : {ClockConvention::global, ClockConvention::per_instruction}) {
            cfg.clock = clock;
            r.tables.push_back(dj_table(set, lib, cfg));
            r.tables.push_back(ckh_table(set, lib, cfg));
            r.tables.push_back(grover_table(set, lib, cfg));
        }
    }
    return r;
}

/// Conventions under which every table with the given title and set matches.
inline std::vector<ClockConvention> matching_clocks(const Report &r,
                                                    const std::string &title,
                                                    const std::string &set) {
    std::vector<ClockConvention> out;
    for (const auto &t : r.tables) {
        if (t.title == title && t.set == set && t.ok()) {
            out.push_back(t.clock);
        }
    }
    return out;
}

inline std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, std::abs(v) < 5e-13 ? 0.0 : v);
    return buf;
}

inline std::string complex_str(std::complex<double> c) {
    return "(" + fmt("%+.6f", c.real()) + fmt("%+.6f", c.imag()) + "i)";
}

inline std::string render_text(const Report &r) {
    std::ostringstream os;
    os << "== D-J function sequences on basis states ==\n";
    for (const auto &a : r.actions) {
        os << "F" << a.function << ' ' << basis_label(a.input, 2) << " -> "
           << complex_str(a.coefficient) << ' ' << basis_label(a.output, 2)
           << "   expected " << complex_str(a.expected) << ' '
           << basis_label(a.expected_output, 2) << "   err " << fmt("%.1e", a.error)
           << '\n';
    }
    std::vector<std::pair<std::string, std::string>> seen;
    for (const auto &t : r.tables) {
        os << "\n== " << t.title << " | set " << t.set << " | clock "
           << clock_name(t.clock) << " ==\n";
        os << "      ";
        for (const auto &c : t.rows[0]) {
            os << ' ' << std::string(20 - std::min<std::size_t>(20, c.program.size()), ' ')
               << c.program;
        }
        os << '\n';
        for (std::size_t q = 0; q < t.rows.size(); ++q) {
            os << t.row_labels[q] << "    ";
            for (const auto &c : t.rows[q]) {
                std::string cell = fmt("%.3f", c.value);
                if (c.reference) {
                    cell += " (" + fmt("%.3f", *c.reference) + " " +
                            fmt("%+.3f", c.deviation()) + ")";
                }
                os << ' ' << std::string(20 - std::min<std::size_t>(20, cell.size()), ' ')
                   << cell;
            }
            os << '\n';
        }
        os << "within tolerance " << fmt("%g", t.rows[0][0].tolerance) << ": "
           << (t.ok() ? "yes" : "no") << "   max |deviation| "
           << fmt("%.4f", t.max_abs_deviation()) << '\n';
    }
    os << "\n== matching clock convention ==\n";
    for (const auto &t : r.tables) {
        const std::pair key{t.title, t.set};
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
            continue;
        }
        seen.push_back(key);
        const auto m = matching_clocks(r, t.title, t.set);
        os << t.title << " | " << t.set << ": ";
        if (m.empty()) {
            os << "none";
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            os << (i ? ", " : "") << clock_name(m[i]);
        }
        os << '\n';
    }
    return os.str();
}

inline json to_json(const Report &r) {
    json actions = json::array();
    for (const auto &a : r.actions) {
        actions.push_back({{"function", a.function},
                           {"input", basis_label(a.input, 2)},
                           {"output", basis_label(a.output, 2)},
                           {"coefficient", {a.coefficient.real(), a.coefficient.imag()}},
                           {"expected_output", basis_label(a.expected_output, 2)},
                           {"expected", {a.expected.real(), a.expected.imag()}},
                           {"error", a.error}});
    }
    json tables = json::array();
    for (const auto &t : r.tables) {
        json rows = json::object();
        for (std::size_t q = 0; q < t.rows.size(); ++q) {
            json cells = json::array();
            for (const auto &c : t.rows[q]) {
                json cell{{"program", c.program}, {"value", c.value}};
                if (c.reference) {
                    cell["reference"] = *c.reference;
                    cell["deviation"] = c.deviation();
                    cell["ok"] = c.ok();
                }
                cells.push_back(cell);
            }
            rows[t.row_labels[q]] = cells;
        }
        const auto m = matching_clocks(r, t.title, t.set);
        json match = json::array();
        for (auto c : m) {
            match.push_back(std::string(clock_name(c)));
        }
        tables.push_back({{"title", t.title},
                          {"set", t.set},
                          {"clock_convention", std::string(clock_name(t.clock))},
                          {"tolerance", t.rows[0][0].tolerance},
                          {"ok", t.ok()},
                          {"rows", rows},
                          {"matching_clock_conventions", match}});
    }
    return {{"function_actions", actions}, {"readout_tables", tables}};
}

} // namespace qce::tables
