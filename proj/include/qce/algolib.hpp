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
 * Built-in two-qubit programs: Deutsch-Jozsa (d-j1..4), its one-qubit
 * Collins-Kim-Holton refinement (ckh1..4) and Grover search over four
 * items (grov0..3 shortened, grov0..3-full, g0..3 composed from
 * sub-programs).
 *
 * Gate sequences are kept in written order, where the rightmost symbol acts
 * first. Programs list MIs in execution order.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qce/error.hpp"
#include "qce/program.hpp"

namespace qce {

struct FunctionTable {
    std::size_t arity = 0;
    std::vector<int> outputs; // indexed by x = x_1 + 2 x_2 + ...
};

enum class FunctionClass { constant, balanced, other };

inline std::string_view class_name(FunctionClass c) {
    switch (c) {
    case FunctionClass::constant:
        return "constant";
    case FunctionClass::balanced:
        return "balanced";
    default:
        return "other";
    }
}

inline FunctionClass classify_function(const FunctionTable &t) {
    if (t.outputs.size() != (std::size_t{1} << t.arity)) {
        throw ValidationError("function table needs 2^arity outputs");
    }
    std::size_t ones = 0;
    for (int v : t.outputs) {
        if (v != 0 && v != 1) {
            throw ValidationError("function outputs must be 0 or 1");
        }
        ones += static_cast<std::size_t>(v);
    }
    if (ones == 0 || ones == t.outputs.size()) {
        return FunctionClass::constant;
    }
    if (2 * ones == t.outputs.size()) {
        return FunctionClass::balanced;
    }
    return FunctionClass::other;
}

/// One-bit functions f_1..f_4: two constant, two balanced.
inline FunctionTable one_bit_function(int k) {
    switch (k) {
    case 1:
        return {1, {0, 0}};
    case 2:
        return {1, {1, 1}};
    case 3:
        return {1, {0, 1}};
    case 4:
        return {1, {1, 0}};
    default:
        throw ValidationError("function index must be 1..4");
    }
}

/// Three-bit functions f_1..f_5, rows ordered by x_1 + 2 x_2 + 4 x_3.
inline FunctionTable three_bit_function(int k) {
    switch (k) {
    case 1:
        return {3, {0, 0, 0, 0, 0, 0, 0, 0}};
    case 2:
        return {3, {1, 1, 1, 1, 1, 1, 1, 1}};
    case 3:
        return {3, {0, 0, 0, 1, 0, 1, 1, 1}};
    case 4:
        return {3, {0, 0, 1, 1, 0, 0, 1, 1}};
    case 5:
        return {3, {0, 1, 1, 0, 1, 0, 0, 1}};
    default:
        throw ValidationError("function index must be 1..5");
    }
}

using GateSequence = std::vector<std::string>;

namespace detail {

inline void check_index(int k, int lo, int hi, const char *what) {
    if (k < lo || k > hi) {
        throw ValidationError(std::string(what) + " index must be " +
                              std::to_string(lo) + ".." + std::to_string(hi));
    }
}

/// W_q = X_q X_q Ybar_q in written order.
inline GateSequence expand_walsh(const GateSequence &written) {
    GateSequence out;
    for (const auto &g : written) {
        if (g.size() == 2 && g[0] == 'W') {
            const std::string q(1, g[1]);
            out.insert(out.end(), {"X" + q, "X" + q, "Y" + q + "bar"});
        } else {
            out.push_back(g);
        }
    }
    return out;
}

inline void append_executed(std::vector<std::string> &steps,
                            const GateSequence &written) {
    const GateSequence g = expand_walsh(written);
    steps.insert(steps.end(), g.rbegin(), g.rend());
}

} // namespace detail

// ---------------------------------------------------------------------------
// Deutsch-Jozsa, qubit 1 is the input, qubit 2 the work space

inline GateSequence dj_prepare() { return {"Y2bar", "Y1"}; }
/// Ybar1 Y2 as an operator; Ybar1 is executed first.
inline GateSequence dj_readout() { return {"Y2", "Y1bar"}; }

inline GateSequence dj_function_sequence(int k) {
    detail::check_index(k, 1, 4, "D-J function");
    switch (k) {
    case 1:
        return {"X2", "X2", "I(pi/2)", "X2", "X2", "I(pi/2)"};
    case 2:
        return {"I(pi/2)", "X2", "X2", "I(pi/2)"};
    case 3:
        return {"Y1", "X1bar", "Y1bar", "X2", "Y2bar", "I(pi)", "Y2"};
    default:
        return {"Y1", "X1bar", "Y1bar", "X2bar", "Y2bar", "I(pi)", "Y2"};
    }
}

inline QuantumProgram dj_program(int k) {
    QuantumProgram p{"d-j" + std::to_string(k), {"Initialize"}};
    const GateSequence f = dj_function_sequence(k);
    detail::append_executed(p.steps, dj_prepare());
    detail::append_executed(p.steps, f);
    detail::append_executed(p.steps, dj_readout());
    return p;
}

// ---------------------------------------------------------------------------
// Collins-Kim-Holton: one qubit, f-controlled phase U_f|x> = (-1)^f(x) |x>

inline GateSequence ckh_prepare() { return {"Y1"}; }
inline GateSequence ckh_readout() { return {"Y1bar"}; }

inline GateSequence ckh_function_sequence(int k) {
    detail::check_index(k, 1, 4, "CKH function");
    switch (k) {
    case 1:
        return {"W1", "W1"};
    case 2:
        return {"X1", "X1"};
    case 3:
        return {"Y1bar", "X1", "Y1", "Y1bar", "X1", "Y1"};
    default:
        return {"Y1", "X1bar", "Y1bar", "Y1", "X1bar", "Y1bar"};
    }
}

inline QuantumProgram ckh_program(int k) {
    QuantumProgram p{"ckh" + std::to_string(k), {"Initialize"}};
    const GateSequence f = ckh_function_sequence(k);
    detail::append_executed(p.steps, ckh_prepare());
    detail::append_executed(p.steps, f);
    detail::append_executed(p.steps, ckh_readout());
    return p;
}

// ---------------------------------------------------------------------------
// Grover search over four items

enum class GroverVariant { shortened, full };

inline GateSequence grover_prepare() { return {"W2", "W1"}; }

/// Conditional phase shift P (= -F_0), inverted about |00>.
inline GateSequence grover_phase_shift() {
    return {"Y1", "X1bar", "Y1bar", "Y2", "X2bar", "Y2bar", "I(pi)"};
}

/// F_j: flips the sign of item j of the uniform superposition.
inline GateSequence grover_query(int j) {
    detail::check_index(j, 0, 3, "Grover item");
    const bool b1 = (j & 1) != 0;
    const bool b2 = (j & 2) != 0;
    return {"Y1",  b2 ? "X1" : "X1bar", "Y1bar", "Y2", b1 ? "X2" : "X2bar",
            "Y2bar", "I(pi)"};
}

/// U_j with the redundant rotations cancelled; the bars on the rightmost X_1
/// and X_2 encode the item.
inline GateSequence grover_shortened(int j) {
    detail::check_index(j, 0, 3, "Grover item");
    const bool b1 = (j & 1) != 0;
    const bool b2 = (j & 2) != 0;
    return {"X1",    "Y1bar", "X2", "Y2bar", "I(pi)",
            b2 ? "X1bar" : "X1", "Y1bar", b1 ? "X2bar" : "X2", "Y2bar",
            "I(pi)"};
}

/// U_j = W1 W2 P W1 W2 F_j.
inline GateSequence grover_full(int j) {
    GateSequence u{"W1", "W2"};
    const auto p = grover_phase_shift();
    u.insert(u.end(), p.begin(), p.end());
    u.insert(u.end(), {"W1", "W2"});
    const auto f = grover_query(j);
    u.insert(u.end(), f.begin(), f.end());
    return u;
}

/// Initialize, Prepare, then U_j. grov<j> is the shortened program and
/// grov<j>-full the complete sequence.
inline QuantumProgram grover_program(int j, GroverVariant variant) {
    detail::check_index(j, 0, 3, "Grover item");
    const std::string n = std::to_string(j);
    const bool full = variant == GroverVariant::full;
    QuantumProgram p{"grov" + n + (full ? "-full" : ""), {"Initialize"}};
    detail::append_executed(p.steps, grover_prepare());
    detail::append_executed(p.steps, full ? grover_full(j) : grover_shortened(j));
    return p;
}

/// g<j>: grov<j> assembled from the sub-programs grover-prepare and
/// grover-U<j>.
inline QuantumProgram grover_composite(int j) {
    detail::check_index(j, 0, 3, "Grover item");
    const std::string n = std::to_string(j);
    return {"g" + n, {"Initialize", "grover-prepare", "grover-U" + n}};
}

/// Every built-in program, including the sub-programs used by g0..g3.
inline ProgramLibrary builtin_library() {
    ProgramLibrary lib;
    auto add = [&](QuantumProgram p) { lib[p.name] = std::move(p); };
    auto sub = [&](std::string name, const GateSequence &written) {
        QuantumProgram p{std::move(name), {}};
        detail::append_executed(p.steps, written);
        add(std::move(p));
    };
    for (int k = 1; k <= 4; ++k) {
        add(dj_program(k));
        add(ckh_program(k));
    }
    sub("WH1", {"W1"});
    sub("WH2", {"W2"});
    sub("grover-prepare", grover_prepare());
    for (int j = 0; j <= 3; ++j) {
        add(grover_program(j, GroverVariant::shortened));
        add(grover_program(j, GroverVariant::full));
        add(grover_composite(j));
        sub("grover-U" + std::to_string(j), grover_shortened(j));
    }
    return lib;
}

// ---------------------------------------------------------------------------
// Reading the answer

inline FunctionClass decide_dj(double q1) {
    return q1 < 0.5 ? FunctionClass::constant : FunctionClass::balanced;
}

/// Item index from the two z readouts: round(Q1) + 2 round(Q2).
inline int decide_grover(double q1, double q2) {
    return static_cast<int>(std::lround(q1)) +
           2 * static_cast<int>(std::lround(q2));
}

} // namespace qce
