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
 * State vector of L spin-1/2 qubits and the kernels acting on it.
 *
 * Basis index n = sum_j x_j 2^(j-1), qubit 1 is the least significant bit.
 * x_j = 0 is spin up (S^z = +1/2), x_j = 1 is spin down. Qubit labels in the
 * public API are 1-based.
 */
#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qce/error.hpp"

namespace qce {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix acting on (|0>, |1>) = (|up>, |down>).
using Matrix2 = std::array<Complex, 4>;

enum class Axis : std::uint8_t { x = 0, y = 1, z = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::x, Axis::y, Axis::z};

inline constexpr std::string_view axis_name(Axis a) {
    switch (a) {
    case Axis::x:
        return "x";
    case Axis::y:
        return "y";
    default:
        return "z";
    }
}

inline Axis parse_axis(std::string_view s) {
    if (s == "x") {
        return Axis::x;
    }
    if (s == "y") {
        return Axis::y;
    }
    if (s == "z") {
        return Axis::z;
    }
    throw ValidationError("unknown axis: " + std::string(s));
}

/// Spin-1/2 operator S^alpha with hbar = 1.
inline Matrix2 spin_matrix(Axis a) {
    const Complex i{0.0, 1.0};
    switch (a) {
    case Axis::x:
        return {0.0, 0.5, 0.5, 0.0};
    case Axis::y:
        return {0.0, -0.5 * i, 0.5 * i, 0.0};
    default:
        return {0.5, 0.0, 0.0, -0.5};
    }
}

inline bool is_unitary(const Matrix2 &u, double tol = 1e-10) {
    // u^dagger u == 1
    const Complex a = std::conj(u[0]) * u[0] + std::conj(u[2]) * u[2];
    const Complex b = std::conj(u[0]) * u[1] + std::conj(u[2]) * u[3];
    const Complex d = std::conj(u[1]) * u[1] + std::conj(u[3]) * u[3];
    return std::abs(a - 1.0) <= tol && std::abs(b) <= tol &&
           std::abs(d - 1.0) <= tol;
}

class StateVector {
  public:
    StateVector() = default;

    /// |00...0>, all spins up.
    static StateVector ground(std::size_t num_qubits) {
        check_size(num_qubits);
        StateVector s;
        s.num_qubits_ = num_qubits;
        s.amps_.assign(std::size_t{1} << num_qubits, Complex{});
        s.amps_[0] = 1.0;
        return s;
    }

    static StateVector basis(std::size_t num_qubits, std::size_t index) {
        StateVector s = ground(num_qubits);
        if (index >= s.amps_.size()) {
            throw ConfigError("basis index out of range");
        }
        s.amps_[0] = 0.0;
        s.amps_[index] = 1.0;
        return s;
    }

    /// Takes the amplitudes as given; no renormalization.
    static StateVector from_amplitudes(std::vector<Complex> amps) {
        const auto n = amps.size();
        if (n < 2 || (n & (n - 1)) != 0) {
            throw ValidationError("amplitude count must be a power of two >= 2");
        }
        StateVector s;
        s.num_qubits_ = static_cast<std::size_t>(std::countr_zero(n));
        check_size(s.num_qubits_);
        s.amps_ = std::move(amps);
        return s;
    }

    [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
    [[nodiscard]] std::size_t dim() const { return amps_.size(); }

    [[nodiscard]] std::span<const Complex> amplitudes() const { return amps_; }
    [[nodiscard]] std::span<Complex> amplitudes() { return amps_; }

    Complex operator[](std::size_t n) const { return amps_[n]; }
    Complex &operator[](std::size_t n) { return amps_[n]; }

    [[nodiscard]] double norm_squared() const {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    void check_qubit(std::size_t j) const {
        if (j < 1 || j > num_qubits_) {
            throw ConfigError("qubit index " + std::to_string(j) +
                              " out of range 1.." +
                              std::to_string(num_qubits_));
        }
    }

  private:
    static void check_size(std::size_t num_qubits) {
        const auto cap = max_qubits();
        if (num_qubits < 1 || num_qubits > cap) {
            throw ConfigError("number of qubits " + std::to_string(num_qubits) +
                              " outside 1.." + std::to_string(cap));
        }
    }

    std::size_t num_qubits_ = 0;
    std::vector<Complex> amps_;
};

inline StateVector new_ground(std::size_t num_qubits) {
    return StateVector::ground(num_qubits);
}

/// Spin of qubit j (1-based) in basis state n: +1/2 or -1/2.
inline double spin_z(std::size_t n, std::size_t j) {
    return ((n >> (j - 1)) & 1U) ? -0.5 : 0.5;
}

/// <S_j^alpha> in the given state.
inline double expectation(const StateVector &s, std::size_t j, Axis a) {
    s.check_qubit(j);
    const std::size_t bit = std::size_t{1} << (j - 1);
    const auto amps = s.amplitudes();
    double acc = 0.0;
    if (a == Axis::z) {
        for (std::size_t n = 0; n < amps.size(); ++n) {
            acc += std::norm(amps[n]) * ((n & bit) ? -0.5 : 0.5);
        }
        return acc;
    }
    // Off-diagonal: sum over pairs (n0 with bit clear, n1 = n0 | bit).
    Complex c{};
    for (std::size_t n0 = 0; n0 < amps.size(); ++n0) {
        if (n0 & bit) {
            continue;
        }
        c += std::conj(amps[n0]) * amps[n0 | bit];
    }
    // <S^x> = Re(c), <S^y> = Im(c) for c = sum conj(a_up) a_down.
    return a == Axis::x ? c.real() : c.imag();
}

/// Q_j^alpha = 1/2 - <S_j^alpha>; 0 displays green, 1 red.
inline double readout(const StateVector &s, std::size_t j, Axis a) {
    return 0.5 - expectation(s, j, a);
}

/// Per-qubit readouts, indexed [j-1][axis].
inline std::vector<std::array<double, 3>> readouts(const StateVector &s) {
    std::vector<std::array<double, 3>> out(s.num_qubits());
    for (std::size_t j = 1; j <= s.num_qubits(); ++j) {
        for (auto a : kAxes) {
            out[j - 1][static_cast<std::size_t>(a)] = readout(s, j, a);
        }
    }
    return out;
}

/// Applies I x ... x U_j x ... x I in place; the caller guarantees U is unitary.
inline void apply_single_qubit_unchecked(StateVector &s, std::size_t j,
                                         const Matrix2 &u) {
    const std::size_t bit = std::size_t{1} << (j - 1);
    auto amps = s.amplitudes();
    const std::size_t dim = amps.size();
    for (std::size_t hi = 0; hi < dim; hi += 2 * bit) {
        for (std::size_t n0 = hi; n0 < hi + bit; ++n0) {
            const Complex a0 = amps[n0];
            const Complex a1 = amps[n0 + bit];
            amps[n0] = u[0] * a0 + u[1] * a1;
            amps[n0 + bit] = u[2] * a0 + u[3] * a1;
        }
    }
}

inline void apply_single_qubit(StateVector &s, std::size_t j,
                               const Matrix2 &u) {
    s.check_qubit(j);
    if (!is_unitary(u)) {
        throw ValidationError("single-qubit matrix is not unitary");
    }
    apply_single_qubit_unchecked(s, j, u);
}

/// a_n <- exp(i theta_n) a_n.
inline void apply_diagonal_phase(StateVector &s,
                                 std::span<const double> theta) {
    if (theta.size() != s.dim()) {
        throw ValidationError("phase array length " +
                              std::to_string(theta.size()) +
                              " does not match dimension " +
                              std::to_string(s.dim()));
    }
    auto amps = s.amplitudes();
    for (std::size_t n = 0; n < amps.size(); ++n) {
        if (!std::isfinite(theta[n])) {
            throw ValidationError("non-finite phase");
        }
        amps[n] *= std::polar(1.0, theta[n]);
    }
}

/// exp(i t sum_j h_j S_j^z)|state>: maps a rotating-frame state to the
/// laboratory frame at time t (pass -t for the reverse map). zfields[j-1]
/// is the static z field of qubit j; missing entries count as zero.
inline StateVector rotating_frame_view(const StateVector &s, double t,
                                       std::span<const double> zfields) {
    StateVector out = s;
    std::vector<double> theta(s.dim(), 0.0);
    for (std::size_t n = 0; n < theta.size(); ++n) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= s.num_qubits() && j <= zfields.size();
             ++j) {
            acc += zfields[j - 1] * spin_z(n, j);
        }
        theta[n] = t * acc;
    }
    apply_diagonal_phase(out, theta);
    return out;
}

/// <a|b>
inline Complex inner(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw ValidationError("state dimensions differ");
    }
    Complex acc{};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t n = 0; n < x.size(); ++n) {
        acc += std::conj(x[n]) * y[n];
    }
    return acc;
}

/// |<a|b>|^2, insensitive to global phase.
inline double fidelity(const StateVector &a, const StateVector &b) {
    return std::norm(inner(a, b));
}

/// Ket label |x_1 x_2 ... x_L> of basis index n.
inline std::string basis_label(std::size_t n, std::size_t num_qubits) {
    std::string s = "|";
    for (std::size_t j = 1; j <= num_qubits; ++j) {
        s += ((n >> (j - 1)) & 1U) ? '1' : '0';
    }
    s += '>';
    return s;
}

} // namespace qce
