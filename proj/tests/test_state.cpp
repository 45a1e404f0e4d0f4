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


#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "qce/oracle.hpp"
#include "qce/state.hpp"
#include "support.hpp"

namespace {

using qce::Axis;
using qce::Complex;
using qce::StateVector;
using qce::testing::Rng;

const double kS = 1.0 / std::numbers::sqrt2;
const Complex kI{0.0, 1.0};

// exp(i pi S^x / 2) and exp(i pi S^y / 2), written out.
const qce::Matrix2 kX{kS, kI * kS, kI * kS, kS};
const qce::Matrix2 kYbar{kS, -kS, kS, kS};

StateVector one_qubit(Complex a0, Complex a1) {
    return StateVector::from_amplitudes({a0, a1});
}

TEST(StateVector, GroundStates) {
    const auto s1 = qce::new_ground(1);
    EXPECT_EQ(s1.dim(), 2u);
    EXPECT_EQ(s1[0], Complex(1.0));
    EXPECT_EQ(s1[1], Complex(0.0));

    const auto s2 = qce::new_ground(2);
    ASSERT_EQ(s2.dim(), 4u);
    EXPECT_EQ(s2[0], Complex(1.0));
    for (std::size_t n = 1; n < 4; ++n) {
        EXPECT_EQ(s2[n], Complex(0.0));
    }

    const auto s3 = qce::new_ground(3);
    EXPECT_EQ(s3.dim(), 8u);
    EXPECT_DOUBLE_EQ(s3.norm_squared(), 1.0);
}

TEST(StateVector, RejectsBadSizes) {
    EXPECT_THROW(qce::new_ground(0), qce::ConfigError);
    EXPECT_THROW(qce::new_ground(qce::max_qubits() + 1), qce::ConfigError);
    EXPECT_THROW(StateVector::from_amplitudes({1.0, 0.0, 0.0}), qce::ValidationError);
    EXPECT_THROW(StateVector::basis(2, 4), qce::ConfigError);
}

TEST(Readout, SpinUpAndEqualSuperposition) {
    EXPECT_DOUBLE_EQ(qce::readout(qce::new_ground(1), 1, Axis::z), 0.0);
    const auto plus = one_qubit(kS, kS);
    EXPECT_NEAR(qce::readout(plus, 1, Axis::z), 0.5, 1e-15);
    EXPECT_NEAR(qce::readout(plus, 1, Axis::x), 0.0, 1e-15);
    EXPECT_NEAR(qce::readout(plus, 1, Axis::y), 0.5, 1e-15);
}

TEST(Readout, QubitOutOfRange) {
    const auto s = qce::new_ground(2);
    EXPECT_THROW(qce::readout(s, 0, Axis::z), qce::ConfigError);
    EXPECT_THROW(qce::readout(s, 3, Axis::z), qce::ConfigError);
}

TEST(Readout, BasisConventionRoundTrip) {
    for (std::size_t L = 1; L <= 4; ++L) {
        for (std::size_t n = 0; n < (std::size_t{1} << L); ++n) {
            const auto s = StateVector::basis(L, n);
            for (std::size_t j = 1; j <= L; ++j) {
                EXPECT_EQ(qce::readout(s, j, Axis::z), static_cast<double>((n >> (j - 1)) & 1));
            }
        }
    }
    EXPECT_EQ(qce::basis_label(1, 2), "|10>");
    EXPECT_EQ(qce::basis_label(2, 2), "|01>");
}

TEST(Readout, BoundsOnRandomStates) {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t L = 1 + trial % 4;
        const auto s = qce::testing::random_state(rng, L);
        for (const auto &q : qce::readouts(s)) {
            for (double v : q) {
                EXPECT_GE(v, -1e-15);
                EXPECT_LE(v, 1.0 + 1e-15);
            }
        }
    }
}

TEST(Readout, MatchesDenseSpinOperators) {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = qce::testing::random_state(rng, 3);
        Eigen::VectorXcd v(8);
        for (std::size_t n = 0; n < 8; ++n) {
            v(static_cast<Eigen::Index>(n)) = s[n];
        }
        for (std::size_t j = 1; j <= 3; ++j) {
            for (Axis a : qce::kAxes) {
                const double ref = (v.adjoint() * qce::oracle::spin_op(j, a, 3) * v)(0).real();
                EXPECT_NEAR(qce::expectation(s, j, a), ref, 1e-14);
            }
        }
    }
}

TEST(SingleQubit, IdentityLeavesStateUnchanged) {
    Rng rng(13);
    const auto s = qce::testing::random_state(rng, 3);
    auto t = s;
    qce::apply_single_qubit(t, 2, {1.0, 0.0, 0.0, 1.0});
    EXPECT_EQ(qce::testing::max_abs_diff(s, t), 0.0);
}

TEST(SingleQubit, XOnSpinUp) {
    auto s = qce::new_ground(1);
    qce::apply_single_qubit(s, 1, kX);
    EXPECT_NEAR(std::abs(s[0] - kS), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[1] - kI * kS), 0.0, 1e-15);
}

TEST(SingleQubit, WalshOnSpinUp) {
    // W = X X Ybar, applied right to left.
    auto s = qce::new_ground(1);
    qce::apply_single_qubit(s, 1, kYbar);
    qce::apply_single_qubit(s, 1, kX);
    qce::apply_single_qubit(s, 1, kX);
    EXPECT_NEAR(std::abs(s[0] - kI * kS), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[1] - kI * kS), 0.0, 1e-15);
}

TEST(SingleQubit, RejectsNonUnitary) {
    auto s = qce::new_ground(1);
    EXPECT_THROW(qce::apply_single_qubit(s, 1, {1.0, 1.0, 0.0, 1.0}), qce::ValidationError);
    EXPECT_THROW(qce::apply_single_qubit(s, 2, kX), qce::ConfigError);
}

TEST(SingleQubit, MatchesDenseEmbedding) {
    Rng rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        const auto s = qce::testing::random_state(rng, 3);
        const auto u = qce::testing::random_unitary(rng);
        const std::size_t j = 1 + static_cast<std::size_t>(trial % 3);
        auto t = s;
        qce::apply_single_qubit(t, j, u);
        Eigen::Matrix2cd m;
        m << u[0], u[1], u[2], u[3];
        const auto ref = qce::oracle::apply(qce::oracle::embed(m, j, 3), s);
        EXPECT_LT(qce::testing::max_abs_diff(t, ref), 1e-14);
        EXPECT_NEAR(t.norm_squared(), 1.0, 1e-10);
    }
}

TEST(DiagonalPhase, ZeroAndGlobalPhase) {
    Rng rng(15);
    const auto s = qce::testing::random_state(rng, 2);
    auto t = s;
    qce::apply_diagonal_phase(t, std::vector<double>(4, 0.0));
    EXPECT_EQ(qce::testing::max_abs_diff(s, t), 0.0);

    qce::apply_diagonal_phase(t, std::vector<double>(4, std::numbers::pi));
    for (std::size_t n = 0; n < 4; ++n) {
        EXPECT_NEAR(std::abs(t[n] + s[n]), 0.0, 1e-15);
    }
    const auto a = qce::readouts(s), b = qce::readouts(t);
    for (std::size_t j = 0; j < 2; ++j) {
        for (int k = 0; k < 3; ++k) {
            EXPECT_NEAR(a[j][k], b[j][k], 1e-15);
        }
    }
}

TEST(DiagonalPhase, IsingPhasesOnUniformState) {
    // exp(-i pi S1z S2z) on the uniform state.
    auto s = StateVector::from_amplitudes({0.5, 0.5, 0.5, 0.5});
    std::vector<double> theta(4);
    for (std::size_t n = 0; n < 4; ++n) {
        theta[n] = -std::numbers::pi * qce::spin_z(n, 1) * qce::spin_z(n, 2);
    }
    qce::apply_diagonal_phase(s, theta);
    const Complex m = std::polar(0.5, -std::numbers::pi / 4);
    const Complex p = std::polar(0.5, std::numbers::pi / 4);
    EXPECT_LT(std::abs(s[0] - m), 1e-15);
    EXPECT_LT(std::abs(s[1] - p), 1e-15);
    EXPECT_LT(std::abs(s[2] - p), 1e-15);
    EXPECT_LT(std::abs(s[3] - m), 1e-15);
}

TEST(DiagonalPhase, RejectsBadInput) {
    auto s = qce::new_ground(2);
    EXPECT_THROW(qce::apply_diagonal_phase(s, std::vector<double>(3, 0.0)), qce::ValidationError);
    EXPECT_THROW(qce::apply_diagonal_phase(s, std::vector<double>{0, 0, NAN, 0}),
                 qce::ValidationError);
}

TEST(RotatingFrame, IdentityAtZero) {
    Rng rng(16);
    const auto s = qce::testing::random_state(rng, 2);
    const auto v = qce::rotating_frame_view(s, 0.0, std::vector<double>{1.0, 0.25});
    EXPECT_LT(qce::testing::max_abs_diff(s, v), 1e-15);
}

TEST(RotatingFrame, ZReadoutsInvariant) {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t L = 1 + trial % 4;
        const auto s = qce::testing::random_state(rng, L);
        std::vector<double> h(L);
        for (auto &x : h) {
            x = qce::testing::uniform(rng, -2, 2);
        }
        const double t = qce::testing::uniform(rng, -100, 100);
        const auto v = qce::rotating_frame_view(s, t, h);
        for (std::size_t j = 1; j <= L; ++j) {
            EXPECT_NEAR(qce::readout(s, j, Axis::z), qce::readout(v, j, Axis::z), 1e-12);
        }
        EXPECT_NEAR(v.norm_squared(), s.norm_squared(), 1e-10);
    }
}

TEST(RotatingFrame, MatchesStaticFieldPropagator) {
    // The view at time t undoes free precession under H = -h S^z: the
    // dense propagator for the same field must agree with it.
    const double h = 0.7;
    qce::MicroInstruction mi;
    mi.name = "free";
    mi.set_field(1, Axis::z, {h, 0.0, 0.0, 0.0});
    const std::vector<double> hz{h};
    const auto s = one_qubit(kS, kI * kS);
    for (double t : {0.3, 1.7, 5.0, 11.0}) {
        const auto u = qce::oracle::dense_propagator(mi, 0.0, t, t / 50, 1);
        const auto ref = qce::oracle::apply(u, s);
        const auto v = qce::rotating_frame_view(s, t, hz);
        EXPECT_GT(qce::fidelity(v, ref), 1.0 - 1e-12) << "t=" << t;
    }
}

TEST(RotatingFrame, XReadoutPeriod) {
    const double h = 0.7;
    const double period = 2 * std::numbers::pi / h;
    const std::vector<double> hz{h};
    const auto s = one_qubit(kS, kI * kS);
    for (double t = 0.0; t < period; t += period / 7) {
        const double a = qce::readout(qce::rotating_frame_view(s, t, hz), 1, Axis::x);
        const double b = qce::readout(qce::rotating_frame_view(s, t + period, hz), 1, Axis::x);
        EXPECT_NEAR(a, b, 1e-12);
    }
    const double half =
        qce::readout(qce::rotating_frame_view(s, period / 2, hz), 1, Axis::x);
    EXPECT_NEAR(half + qce::readout(s, 1, Axis::x), 1.0, 1e-12);
}

TEST(Fidelity, Basics) {
    Rng rng(18);
    const auto a = qce::testing::random_state(rng, 2);
    EXPECT_NEAR(qce::fidelity(a, a), 1.0, 1e-14);
    auto b = a;
    qce::apply_diagonal_phase(b, std::vector<double>(4, 1.234));
    EXPECT_NEAR(qce::fidelity(a, b), 1.0, 1e-14);
    EXPECT_EQ(qce::fidelity(StateVector::basis(2, 0), StateVector::basis(2, 2)), 0.0);
    EXPECT_THROW(qce::fidelity(a, qce::new_ground(3)), qce::ValidationError);
}

TEST(Axis, ParseAndName) {
    for (Axis a : qce::kAxes) {
        EXPECT_EQ(qce::parse_axis(qce::axis_name(a)), a);
    }
    EXPECT_THROW(qce::parse_axis("w"), qce::ValidationError);
}

} // namespace
