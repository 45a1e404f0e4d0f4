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
 * Brute-force reference: dense Hamiltonians, exact exponentials by
 * eigendecomposition, closed-form ideal gates and the gate-sequence algebra
 * used to check the propagator and the built-in programs. Desk scale only
 * (L <= 4); nothing here is on the production path.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qce/error.hpp"
#include "qce/model.hpp"
#include "qce/state.hpp"

namespace qce::oracle {

/// Heap-free up to the 16 x 16 matrices of four qubits.
using DenseMatrix =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, 0, 16, 16>;

inline constexpr std::size_t kMaxOracleQubits = 4;

inline void check_dim(std::size_t num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxOracleQubits) {
        throw ConfigError("oracle supports 1.." +
                          std::to_string(kMaxOracleQubits) + " qubits");
    }
}

/// 2x2 spin matrix of A.2 as an Eigen matrix.
inline Eigen::Matrix2cd spin2(Axis a) {
    const std::complex<double> i{0.0, 1.0};
    Eigen::Matrix2cd m;
    switch (a) {
    case Axis::x:
        m << 0.0, 0.5, 0.5, 0.0;
        break;
    case Axis::y:
        m << 0.0, -0.5 * i, 0.5 * i, 0.0;
        break;
    default:
        m << 0.5, 0.0, 0.0, -0.5;
    }
    return m;
}

/// Embeds a one-qubit operator on qubit j (1-based, least significant bit).
inline DenseMatrix embed(const Eigen::Matrix2cd &op, std::size_t j,
                         std::size_t num_qubits) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    const std::size_t bit = std::size_t{1} << (j - 1);
    DenseMatrix m = DenseMatrix::Zero(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if ((r & ~bit) != (c & ~bit)) {
                continue;
            }
            m(r, c) = op((r & bit) ? 1 : 0, (c & bit) ? 1 : 0);
        }
    }
    return m;
}

inline DenseMatrix spin_op(std::size_t j, Axis a, std::size_t num_qubits) {
    return embed(spin2(a), j, num_qubits);
}

/// Full H(t) of an MI as a dense matrix.
inline DenseMatrix hamiltonian(const MicroInstruction &mi, double t,
                               std::size_t num_qubits) {
    check_dim(num_qubits);
    const std::size_t dim = std::size_t{1} << num_qubits;
    DenseMatrix h = DenseMatrix::Zero(dim, dim);
    for (const auto &[key, v] : mi.J) {
        const auto [j, k, a] = key;
        h -= v * spin_op(j, a, num_qubits) * spin_op(k, a, num_qubits);
    }
    for (const auto &[key, p] : mi.fields) {
        const double g = p.h0 + p.h1 * std::sin(p.f * t + p.phi);
        h -= g * spin_op(key.first, key.second, num_qubits);
    }
    return h;
}

/// exp(-i theta H) for Hermitian H, by diagonalization.
inline DenseMatrix expm_hermitian(const DenseMatrix &h, double theta) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
    const auto &v = es.eigenvectors();
    Eigen::VectorXcd phases(h.rows());
    for (Eigen::Index n = 0; n < h.rows(); ++n) {
        phases(n) = std::polar(1.0, -theta * es.eigenvalues()(n));
    }
    return v * phases.asDiagonal() * v.adjoint();
}

/// exp(-i theta H), summing the Taylor series to machine precision when
/// |theta| ||H|| is small and diagonalizing otherwise.
inline DenseMatrix expm_step(const DenseMatrix &h, double theta) {
    const double norm = std::abs(theta) * h.cwiseAbs().colwise().sum().maxCoeff();
    if (norm > 0.1) {
        return expm_hermitian(h, theta);
    }
    const DenseMatrix a = std::complex<double>{0.0, -theta} * h;
    DenseMatrix term = DenseMatrix::Identity(h.rows(), h.cols());
    DenseMatrix sum = term;
    for (int k = 1; k < 30; ++k) {
        term = a * term / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-20) {
            break;
        }
    }
    return sum;
}

/// H(t) split into a static part and sinusoidally driven terms, so repeated
/// evaluation needs no re-embedding.
class DenseHamiltonian {
  public:
    DenseHamiltonian(const MicroInstruction &mi, std::size_t num_qubits) {
        check_dim(num_qubits);
        const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
        static_ = DenseMatrix::Zero(dim, dim);
        for (const auto &[key, v] : mi.J) {
            const auto [j, k, a] = key;
            static_ -= v * spin_op(j, a, num_qubits) * spin_op(k, a, num_qubits);
        }
        for (const auto &[key, p] : mi.fields) {
            DenseMatrix op = spin_op(key.first, key.second, num_qubits);
            static_ -= p.h0 * op;
            if (p.h1 != 0.0) {
                driven_.push_back({p, -op});
            }
        }
    }

    [[nodiscard]] DenseMatrix at(double t) const {
        DenseMatrix h = static_;
        for (const auto &d : driven_) {
            h += d.params.h1 * std::sin(d.params.f * t + d.params.phi) * d.op;
        }
        return h;
    }

  private:
    struct Driven {
        FieldParams params;
        DenseMatrix op;
    };
    DenseMatrix static_;
    std::vector<Driven> driven_;
};

/// Time-ordered propagator over [t0, t0 + tau] as a product of exact
/// exponentials of H at the midpoints of steps no longer than delta_ref.
inline DenseMatrix dense_propagator(const MicroInstruction &mi, double t0,
                                    double tau, double delta_ref,
                                    std::size_t num_qubits) {
    check_dim(num_qubits);
    const std::size_t dim = std::size_t{1} << num_qubits;
    DenseMatrix u = DenseMatrix::Identity(dim, dim);
    if (tau <= 0.0) {
        return u;
    }
    const DenseHamiltonian h(mi, num_qubits);
    const auto m = static_cast<std::size_t>(
        std::max(1.0, std::ceil(tau / delta_ref * (1.0 - 1e-12))));
    const double d = tau / static_cast<double>(m);
    for (std::size_t n = 0; n < m; ++n) {
        const double tm = t0 + (static_cast<double>(n) + 0.5) * d;
        u = expm_step(h.at(tm), d) * u;
    }
    return u;
}

inline StateVector apply(const DenseMatrix &u, const StateVector &s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t n = 0; n < s.dim(); ++n) {
        v(static_cast<Eigen::Index>(n)) = s[n];
    }
    const Eigen::VectorXcd w = u * v;
    std::vector<Complex> out(w.data(), w.data() + w.size());
    return StateVector::from_amplitudes(std::move(out));
}

/// Largest entry of |a - e^{i phi} b| with phi chosen from tr(b^dagger a).
inline double phase_aligned_error(const DenseMatrix &a, const DenseMatrix &b) {
    const std::complex<double> tr = (b.adjoint() * a).trace();
    const std::complex<double> ph =
        std::abs(tr) > 0.0 ? tr / std::abs(tr) : std::complex<double>{1.0};
    return (a - ph * b).cwiseAbs().maxCoeff();
}

inline double unitarity_error(const DenseMatrix &u) {
    return (u.adjoint() * u - DenseMatrix::Identity(u.rows(), u.cols()))
        .cwiseAbs()
        .maxCoeff();
}

// ---------------------------------------------------------------------------
// Closed-form gates

enum class GateKind { X, Xbar, Y, Ybar, W, I };

struct Gate {
    GateKind kind;
    std::size_t qubit = 1; // unused by I
    double angle = 0.0;    // only for I(a)
};

/// The pi/2 rotations and the Walsh-Hadamard transform written out.
inline Eigen::Matrix2cd gate2(GateKind k) {
    const std::complex<double> i{0.0, 1.0};
    const double r = 1.0 / std::numbers::sqrt2;
    Eigen::Matrix2cd m;
    switch (k) {
    case GateKind::X:
        m << r, i * r, i * r, r;
        break;
    case GateKind::Xbar:
        m << r, -i * r, -i * r, r;
        break;
    case GateKind::Y:
        m << r, r, -r, r;
        break;
    case GateKind::Ybar:
        m << r, -r, r, r;
        break;
    case GateKind::W:
        m << i * r, i * r, i * r, -i * r;
        break;
    default:
        throw ValidationError("not a single-qubit gate");
    }
    return m;
}

/// Matrix of a gate on L qubits. I(a) = exp(-i a S_1^z S_2^z).
inline DenseMatrix ideal_gate(const Gate &g, std::size_t num_qubits) {
    check_dim(num_qubits);
    if (g.kind == GateKind::I) {
        if (num_qubits < 2) {
            throw ConfigError("I(a) needs two qubits");
        }
        const std::size_t dim = std::size_t{1} << num_qubits;
        DenseMatrix m = DenseMatrix::Zero(dim, dim);
        for (std::size_t n = 0; n < dim; ++n) {
            m(n, n) = std::polar(1.0, -g.angle * spin_z(n, 1) * spin_z(n, 2));
        }
        return m;
    }
    if (g.qubit < 1 || g.qubit > num_qubits) {
        throw ConfigError("gate qubit out of range");
    }
    return embed(gate2(g.kind), g.qubit, num_qubits);
}

/// Parses "X1", "X1bar", "Y2", "Y2bar", "W1", "I(pi)", "I(pi/2)", "I(pi/4)".
inline Gate parse_gate(std::string_view s) {
    if (s.starts_with("I(")) {
        if (s == "I(pi)") {
            return {GateKind::I, 0, std::numbers::pi};
        }
        if (s == "I(pi/2)") {
            return {GateKind::I, 0, std::numbers::pi / 2};
        }
        if (s == "I(pi/4)") {
            return {GateKind::I, 0, std::numbers::pi / 4};
        }
        throw ValidationError("unknown gate: " + std::string(s));
    }
    if (s.size() < 2 || s[1] < '1' || s[1] > '9') {
        throw ValidationError("unknown gate: " + std::string(s));
    }
    const std::size_t q = static_cast<std::size_t>(s[1] - '0');
    const std::string_view rest = s.substr(2);
    const bool bar = rest == "bar";
    if (!rest.empty() && !bar) {
        throw ValidationError("unknown gate: " + std::string(s));
    }
    switch (s[0]) {
    case 'X':
        return {bar ? GateKind::Xbar : GateKind::X, q};
    case 'Y':
        return {bar ? GateKind::Ybar : GateKind::Y, q};
    case 'W':
        if (bar) {
            break;
        }
        return {GateKind::W, q};
    default:
        break;
    }
    throw ValidationError("unknown gate: " + std::string(s));
}

/// Product of a gate sequence written the usual way: the rightmost symbol
/// acts first, so the matrix is seq[0] * seq[1] * ... * seq[n-1].
inline DenseMatrix sequence_matrix(const std::vector<std::string> &seq,
                                   std::size_t num_qubits) {
    check_dim(num_qubits);
    const std::size_t dim = std::size_t{1} << num_qubits;
    DenseMatrix m = DenseMatrix::Identity(dim, dim);
    for (const auto &g : seq) {
        m = m * ideal_gate(parse_gate(g), num_qubits);
    }
    return m;
}

/// Reverses a written sequence into execution order.
inline std::vector<std::string>
execution_order(std::vector<std::string> written) {
    return {written.rbegin(), written.rend()};
}

// ---------------------------------------------------------------------------
// Inversion about the mean, two qubits

struct InversionReport {
    double d_vs_explicit = 0.0; // W1 W2 P W1 W2 vs the explicit D, phase aligned
    double d_times_psi = 0.0;   // |D psi - |01>|
    double d2_times_psi = 0.0;  // |D^2 psi - uniform|
    double d3_plus_psi = 0.0;   // |D^3 psi + psi|
    [[nodiscard]] bool ok(double tol) const {
        return d_vs_explicit <= tol && d_times_psi <= tol &&
               d2_times_psi <= tol && d3_plus_psi <= tol;
    }
};

/// Explicit inversion-about-the-mean matrix: 2 * mean - amplitude.
inline DenseMatrix inversion_about_mean() {
    DenseMatrix d = DenseMatrix::Constant(4, 4, 0.5);
    for (int n = 0; n < 4; ++n) {
        d(n, n) = -0.5;
    }
    return d;
}

/// Builds D from rotations and checks the D, D^2, D^3 chain on the state
/// with item 2 marked. The compiled D differs from the explicit one by a
/// global phase, which is removed before the chain so the final minus sign
/// is meaningful.
inline InversionReport inversion_about_mean_check() {
    InversionReport r;
    const DenseMatrix p = sequence_matrix(
        {"Y1", "X1bar", "Y1bar", "Y2", "X2bar", "Y2bar", "I(pi)"}, 2);
    const DenseMatrix w = sequence_matrix({"W1", "W2"}, 2);
    const DenseMatrix built = w * p * w;
    const DenseMatrix explicit_d = inversion_about_mean();
    r.d_vs_explicit = phase_aligned_error(built, explicit_d);

    const std::complex<double> tr = (explicit_d.adjoint() * built).trace();
    const DenseMatrix d = built * (std::abs(tr) / tr);

    // (|00> + |10> - |01> + |11>) / 2 in index order 0, 1, 2, 3.
    Eigen::VectorXcd psi(4);
    psi << 0.5, 0.5, -0.5, 0.5;
    Eigen::VectorXcd target = Eigen::VectorXcd::Zero(4);
    target(2) = 1.0;
    const Eigen::VectorXcd uniform = Eigen::VectorXcd::Constant(4, 0.5);

    const Eigen::VectorXcd d1 = d * psi;
    const Eigen::VectorXcd d2 = d * d1;
    const Eigen::VectorXcd d3 = d * d2;
    r.d_times_psi = (d1 - target).cwiseAbs().maxCoeff();
    r.d2_times_psi = (d2 - uniform).cwiseAbs().maxCoeff();
    r.d3_plus_psi = (d3 + psi).cwiseAbs().maxCoeff();
    return r;
}

// ---------------------------------------------------------------------------
// Rotating-wave prediction for one driven spin

struct RwaPrediction {
    Complex up;
    Complex down;
    double sx = 0.0;
    double sy = 0.0;
    double sz = 0.0;
};

/// exp(i tau H0 S^z) exp(i tau H1 S^y / 2) |up> and its spin expectations.
inline RwaPrediction rwa_pulse(double h0, double h1, double tau) {
    Eigen::Vector2cd up(1.0, 0.0);
    const auto rot = [](Axis a, double angle) {
        // exp(i angle S^a) = cos(angle/2) + 2i sin(angle/2) S^a
        return Eigen::Matrix2cd(std::cos(angle / 2) *
                                    Eigen::Matrix2cd::Identity() +
                                std::complex<double>(0.0, 2.0) *
                                    std::sin(angle / 2) * spin2(a));
    };
    const Eigen::Vector2cd v =
        rot(Axis::z, tau * h0) * (rot(Axis::y, tau * h1 / 2) * up);
    RwaPrediction p;
    p.up = v(0);
    p.down = v(1);
    p.sx = (v.adjoint() * spin2(Axis::x) * v)(0).real();
    p.sy = (v.adjoint() * spin2(Axis::y) * v)(0).real();
    p.sz = (v.adjoint() * spin2(Axis::z) * v)(0).real();
    return p;
}

/// The single-spin NMR instruction H = -(H0 S^z + H1 S^x sin(H0 t)).
inline MicroInstruction single_spin_pulse(double h0, double h1, double tau) {
    MicroInstruction mi;
    mi.name = "rf";
    mi.tau = tau;
    mi.set_field(1, Axis::z, {h0, 0.0, 0.0, 0.0});
    mi.set_field(1, Axis::x, {0.0, h1, h0, 0.0});
    return mi;
}

} // namespace qce::oracle
