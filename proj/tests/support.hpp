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


// Shared helpers for the test suites: seeded generators for random states,
// unitaries and micro-instructions.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "qce/model.hpp"
#include "qce/state.hpp"

namespace qce::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng &rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline StateVector random_state(Rng &rng, std::size_t num_qubits) {
    std::normal_distribution<double> g;
    std::vector<Complex> a(std::size_t{1} << num_qubits);
    double norm = 0.0;
    for (auto &c : a) {
        c = {g(rng), g(rng)};
        norm += std::norm(c);
    }
    for (auto &c : a) {
        c /= std::sqrt(norm);
    }
    return StateVector::from_amplitudes(std::move(a));
}

/// exp(i a) * Rz(b) Ry(c) Rz(d), which covers U(2).
inline Matrix2 random_unitary(Rng &rng) {
    const double pi = std::numbers::pi;
    const double a = uniform(rng, 0, 2 * pi), b = uniform(rng, 0, 2 * pi);
    const double c = uniform(rng, 0, pi), d = uniform(rng, 0, 2 * pi);
    const Complex ph = std::polar(1.0, a);
    const Complex e1 = std::polar(1.0, -(b + d) / 2), e2 = std::polar(1.0, (b - d) / 2);
    const double cs = std::cos(c / 2), sn = std::sin(c / 2);
    return {ph * e1 * cs, -ph * std::conj(e2) * sn, ph * e2 * sn, ph * std::conj(e1) * cs};
}

/// Random normal MI on L qubits: every coupling and field drawn from
/// bounded ranges, sinusoid frequencies up to 2, durations in [0.2, 1].
inline MicroInstruction random_instruction(Rng &rng, std::size_t num_qubits) {
    MicroInstruction mi;
    mi.name = "random";
    mi.tau = uniform(rng, 0.2, 1.0);
    for (std::size_t j = 1; j <= num_qubits; ++j) {
        for (std::size_t k = j + 1; k <= num_qubits; ++k) {
            for (Axis a : kAxes) {
                mi.set_coupling(j, k, a, uniform(rng, -1, 1));
            }
        }
        for (Axis a : kAxes) {
            mi.set_field(j, a,
                         {uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, 0, 2),
                          uniform(rng, 0, 2 * std::numbers::pi)});
        }
    }
    return mi;
}

inline double max_abs_diff(const StateVector &a, const StateVector &b) {
    double m = 0.0;
    for (std::size_t n = 0; n < a.dim(); ++n) {
        m = std::max(m, std::abs(a[n] - b[n]));
    }
    return m;
}

} // namespace qce::testing
