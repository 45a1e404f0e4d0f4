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
 * Time integration of one micro-instruction with the symmetrized
 * second-order product formula
 *
 *   U(t+d, t) ~ e^{-i d Hz/2} e^{-i d Hy/2} e^{-i d Hx} e^{-i d Hy/2} e^{-i d Hz/2}
 *
 * where every axis Hamiltonian is evaluated at the step midpoint. The z
 * factor is a diagonal phase. The y (x) factor is the same diagonal phase
 * built from the y (x) parameters, sandwiched between global pi/2 rotations
 * of all spins about x (y).
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qce/error.hpp"
#include "qce/model.hpp"
#include "qce/state.hpp"

namespace qce {

enum class ClockConvention { global, per_instruction };

inline std::string_view clock_name(ClockConvention c) {
    return c == ClockConvention::global ? "global" : "per_instruction";
}

inline ClockConvention parse_clock(std::string_view s) {
    if (s == "global") {
        return ClockConvention::global;
    }
    if (s == "per_instruction" || s == "per-instruction") {
        return ClockConvention::per_instruction;
    }
    throw ValidationError("unknown clock convention: " + std::string(s));
}

struct EvolutionConfig {
    /// Time steps per shortest dynamical period.
    double steps_per_period = 512.0;
    /// Fixed time step; overrides steps_per_period when set.
    std::optional<double> delta;
    ClockConvention clock = ClockConvention::global;
    /// Apply MIs without x/y terms and with static fields in one exact step.
    bool exact_diagonal_shortcut = true;
};

/// Largest angular frequency present in an MI: sinusoid frequencies, static
/// fields, RF amplitudes and couplings.
inline double frequency_scale(const MicroInstruction &mi) {
    double w = 0.0;
    for (const auto &[key, p] : mi.fields) {
        w = std::max({w, std::abs(p.h0), std::abs(p.h1)});
        if (p.h1 != 0.0) {
            w = std::max(w, std::abs(p.f));
        }
    }
    for (const auto &[key, v] : mi.J) {
        w = std::max(w, std::abs(v));
    }
    return w;
}

/// Time step used for `mi` before rounding tau to an integer step count.
inline double step_size(const MicroInstruction &mi, const EvolutionConfig &cfg) {
    if (cfg.delta) {
        if (!(*cfg.delta > 0.0) || !std::isfinite(*cfg.delta)) {
            throw ValidationError("time step must be positive");
        }
        return std::min(*cfg.delta, mi.tau);
    }
    const double w = frequency_scale(mi);
    if (w == 0.0) {
        return mi.tau;
    }
    const double period = 2.0 * std::numbers::pi / w;
    return std::min(mi.tau, period / cfg.steps_per_period);
}

inline std::size_t step_count(double tau, double delta) {
    if (tau <= 0.0) {
        return 0;
    }
    const double m = std::ceil(tau / delta * (1.0 - 1e-12));
    return std::max<std::size_t>(1, static_cast<std::size_t>(m));
}

/// exp(i s pi S/2) for S = S^x or S^y, s = +1 or -1.
inline Matrix2 quarter_turn(Axis a, int sign) {
    const double r = 1.0 / std::numbers::sqrt2;
    const Complex i{0.0, 1.0};
    const double s = sign >= 0 ? 1.0 : -1.0;
    if (a == Axis::x) {
        return {r, s * r * i, s * r * i, r};
    }
    if (a == Axis::y) {
        return {r, s * r, -s * r, r};
    }
    throw ValidationError("global rotation axis must be x or y");
}

/// Rotates every spin by pi/2 about `a`: exp(+-i pi S_j^a / 2) for all j.
///
/// Every entry of the rotation is +-r or +-ir with r = 1/sqrt(2). Scaling by
/// a double-rounded r biases the norm by the same factor on every call, which
/// adds up over thousands of steps; the scaling is therefore done in long
/// double and rounded once.
inline void global_rotation(StateVector &s, Axis a, int sign) {
    if (a != Axis::x && a != Axis::y) {
        throw ValidationError("global rotation axis must be x or y");
    }
    using Wide = std::complex<long double>;
    const long double r = 1.0L / std::sqrt(2.0L);
    const double sg = sign >= 0 ? 1.0 : -1.0;
    const Complex c = a == Axis::x ? Complex{0.0, sg} : Complex{sg, 0.0};
    // x: (a0 + c a1, c a0 + a1); y: (a0 + c a1, -c a0 + a1)
    const Complex c1 = a == Axis::x ? c : -c;
    auto amps = s.amplitudes();
    const std::size_t dim = amps.size();
    const auto scale = [r](Wide v) {
        return Complex{static_cast<double>(v.real() * r),
                       static_cast<double>(v.imag() * r)};
    };
    for (std::size_t j = 1; j <= s.num_qubits(); ++j) {
        const std::size_t bit = std::size_t{1} << (j - 1);
        for (std::size_t hi = 0; hi < dim; hi += 2 * bit) {
            for (std::size_t n0 = hi; n0 < hi + bit; ++n0) {
                const Wide a0(amps[n0]);
                const Wide a1(amps[n0 + bit]);
                amps[n0] = scale(a0 + Wide(c) * a1);
                amps[n0 + bit] = scale(Wide(c1) * a0 + a1);
            }
        }
    }
}

/// Per-axis data of an MI laid out for repeated exponentiation.
class CompiledInstruction {
  public:
    CompiledInstruction(const MicroInstruction &mi, std::size_t num_qubits)
        : num_qubits_(num_qubits), dim_(std::size_t{1} << num_qubits) {
        for (auto a : kAxes) {
            auto &ax = axes_[static_cast<std::size_t>(a)];
            ax.pair.assign(dim_, 0.0);
            ax.fields.assign(num_qubits, FieldParams{});
            for (const auto &[key, v] : mi.J) {
                const auto [j, k, axis] = key;
                if (axis != a || v == 0.0) {
                    continue;
                }
                if (j < 1 || k > num_qubits || j >= k) {
                    throw ValidationError(mi.name + ": invalid coupling index");
                }
                ax.active = true;
                for (std::size_t n = 0; n < dim_; ++n) {
                    ax.pair[n] += v * spin_z(n, j) * spin_z(n, k);
                }
            }
            for (const auto &[key, p] : mi.fields) {
                if (key.second != a || p.is_zero()) {
                    continue;
                }
                if (key.first < 1 || key.first > num_qubits) {
                    throw ValidationError(mi.name + ": invalid field qubit");
                }
                ax.active = true;
                ax.fields[key.first - 1] = p;
            }
        }
        g_.resize(num_qubits);
    }

    [[nodiscard]] bool active(Axis a) const {
        return axes_[static_cast<std::size_t>(a)].active;
    }

    /// Applies exp(-i theta H_a(t)) in place.
    void apply(StateVector &s, Axis a, double t, double theta) {
        const auto &ax = axes_[static_cast<std::size_t>(a)];
        if (!ax.active) {
            return;
        }
        if (a == Axis::y) {
            global_rotation(s, Axis::x, -1);
        } else if (a == Axis::x) {
            global_rotation(s, Axis::y, +1);
        }
        // H_a is minus the sum, so the phase carries a plus sign.
        for (std::size_t j = 0; j < num_qubits_; ++j) {
            g_[j] = 0.5 * ax.fields[j].at(t);
        }
        auto amps = s.amplitudes();
        for (std::size_t n = 0; n < dim_; ++n) {
            double e = ax.pair[n];
            for (std::size_t j = 0; j < num_qubits_; ++j) {
                e += ((n >> j) & 1U) ? -g_[j] : g_[j];
            }
            // Extended precision keeps |phase| = 1 free of a per-step bias.
            const long double ph = static_cast<long double>(theta) * e;
            const std::complex<long double> z(amps[n]);
            const auto w = z * std::complex<long double>(std::cos(ph), std::sin(ph));
            amps[n] = {static_cast<double>(w.real()), static_cast<double>(w.imag())};
        }
        if (a == Axis::y) {
            global_rotation(s, Axis::x, +1);
        } else if (a == Axis::x) {
            global_rotation(s, Axis::y, -1);
        }
    }

  private:
    struct AxisData {
        bool active = false;
        std::vector<double> pair;
        std::vector<FieldParams> fields;
    };
    std::size_t num_qubits_;
    std::size_t dim_;
    std::array<AxisData, 3> axes_{};
    std::vector<double> g_;
};

/// exp(-i theta_step H_a(t_mid)) applied to `s`.
inline void apply_axis_exponential(StateVector &s, const MicroInstruction &mi,
                                   Axis a, double t_mid, double theta_step) {
    CompiledInstruction c(mi, s.num_qubits());
    c.apply(s, a, t_mid, theta_step);
}

namespace detail {

inline void check_evolvable(const MicroInstruction &mi) {
    if (mi.kind != InstructionKind::normal) {
        throw ValidationError(mi.name + ": only normal MIs can be evolved");
    }
    if (!std::isfinite(mi.tau) || mi.tau < 0.0) {
        throw ValidationError(mi.name + ": duration must be finite and >= 0");
    }
    for (const auto &[key, v] : mi.J) {
        if (!std::isfinite(v)) {
            throw ValidationError(mi.name + ": non-finite coupling");
        }
    }
    for (const auto &[key, p] : mi.fields) {
        if (!p.finite()) {
            throw ValidationError(mi.name + ": non-finite field parameter");
        }
    }
}

} // namespace detail

/// Evolves `s` in place across `mi`, starting at clock t0, and returns the
/// clock after the instruction (t0 + tau).
inline double evolve(StateVector &s, const MicroInstruction &mi, double t0,
                     const EvolutionConfig &cfg = {}) {
    detail::check_evolvable(mi);
    if (mi.tau == 0.0) {
        return t0;
    }
    CompiledInstruction c(mi, s.num_qubits());
    const double t_start =
        cfg.clock == ClockConvention::global ? t0 : 0.0;

    if (cfg.exact_diagonal_shortcut && mi.is_diagonal() &&
        mi.is_time_independent()) {
        c.apply(s, Axis::z, t_start, mi.tau);
        return t0 + mi.tau;
    }

    const std::size_t m = step_count(mi.tau, step_size(mi, cfg));
    const double d = mi.tau / static_cast<double>(m);
    for (std::size_t n = 0; n < m; ++n) {
        const double tm = t_start + (static_cast<double>(n) + 0.5) * d;
        c.apply(s, Axis::z, tm, 0.5 * d);
        c.apply(s, Axis::y, tm, 0.5 * d);
        c.apply(s, Axis::x, tm, d);
        c.apply(s, Axis::y, tm, 0.5 * d);
        c.apply(s, Axis::z, tm, 0.5 * d);
    }
    return t0 + mi.tau;
}

/// min over phi of || a - e^{i phi} b ||.
inline double phase_distance(const StateVector &a, const StateVector &b) {
    const Complex ov = inner(b, a);
    const Complex ph = std::abs(ov) > 0.0 ? ov / std::abs(ov) : Complex{1.0};
    double sum = 0.0;
    for (std::size_t n = 0; n < a.dim(); ++n) {
        sum += std::norm(a[n] - ph * b[n]);
    }
    return std::sqrt(sum);
}

struct ProbeRow {
    double delta;
    std::size_t steps;
    double distance; // to the finest-step result
};

/// Runs `mi` with each time step in `deltas` (descending, at least three) and
/// reports the distance of each result to the finest one.
inline std::vector<ProbeRow>
convergence_probe(const MicroInstruction &mi, double t0,
                  const StateVector &state, std::span<const double> deltas,
                  EvolutionConfig cfg = {}) {
    if (deltas.size() < 3) {
        throw ValidationError("convergence probe needs at least three steps");
    }
    for (std::size_t i = 1; i < deltas.size(); ++i) {
        if (!(deltas[i] < deltas[i - 1])) {
            throw ValidationError("time steps must be strictly descending");
        }
    }
    std::vector<StateVector> results;
    std::vector<ProbeRow> rows;
    for (double d : deltas) {
        cfg.delta = d;
        StateVector s = state;
        evolve(s, mi, t0, cfg);
        rows.push_back({d, step_count(mi.tau, std::min(d, mi.tau)), 0.0});
        results.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].distance = phase_distance(results[i], results.back());
    }
    return rows;
}

} // namespace qce
