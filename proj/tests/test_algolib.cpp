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
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qce/algolib.hpp"
#include "qce/oracle.hpp"
#include "qce/program.hpp"
#include "support.hpp"

namespace {

using qce::Axis;
using qce::FunctionClass;
using qce::GroverVariant;
using Steps = std::vector<std::string>;

struct Final {
    qce::StateVector state;
    double q1;
    double q2;
};

Final run(const qce::QuantumProgram &p, const std::string &set,
          qce::ClockConvention clock = qce::ClockConvention::global) {
    qce::EvolutionConfig cfg;
    cfg.clock = clock;
    qce::Session s(qce::builtin_set(set), qce::builtin_library(), p, cfg);
    s.run();
    EXPECT_EQ(s.status(), qce::SessionStatus::finished) << s.error_message();
    return {s.state(), qce::readout(s.state(), 1, Axis::z),
            qce::readout(s.state(), 2, Axis::z)};
}

TEST(Classify, OneAndThreeBitTables) {
    EXPECT_EQ(qce::classify_function(qce::one_bit_function(1)), FunctionClass::constant);
    EXPECT_EQ(qce::classify_function(qce::one_bit_function(2)), FunctionClass::constant);
    EXPECT_EQ(qce::classify_function(qce::one_bit_function(3)), FunctionClass::balanced);
    EXPECT_EQ(qce::classify_function(qce::one_bit_function(4)), FunctionClass::balanced);
    EXPECT_EQ(qce::classify_function(qce::three_bit_function(1)), FunctionClass::constant);
    EXPECT_EQ(qce::classify_function(qce::three_bit_function(2)), FunctionClass::constant);
    EXPECT_EQ(qce::classify_function(qce::three_bit_function(5)), FunctionClass::balanced);
    EXPECT_EQ(qce::three_bit_function(5).outputs, (std::vector<int>{0, 1, 1, 0, 1, 0, 0, 1}));
    EXPECT_EQ(qce::classify_function({2, {0, 0, 0, 1}}), FunctionClass::other);
    EXPECT_THROW(qce::classify_function({2, {0, 1}}), qce::ValidationError);
    EXPECT_THROW(qce::one_bit_function(5), qce::ValidationError);
}

TEST(Classify, RandomTablesAgreeWithCounting) {
    qce::testing::Rng rng(51);
    for (int trial = 0; trial < 500; ++trial) {
        const int arity = 1 + static_cast<int>(rng() % 4);
        qce::FunctionTable t{static_cast<std::size_t>(arity), {}};
        const int mode = static_cast<int>(rng() % 3);
        std::size_t ones = 0;
        for (int n = 0; n < (1 << arity); ++n) {
            const int v = mode == 0 ? 0 : mode == 1 ? 1 : static_cast<int>(rng() % 2);
            t.outputs.push_back(v);
            ones += static_cast<std::size_t>(v);
        }
        const auto c = qce::classify_function(t);
        if (ones == 0 || ones == t.outputs.size()) {
            EXPECT_EQ(c, FunctionClass::constant);
        } else if (2 * ones == t.outputs.size()) {
            EXPECT_EQ(c, FunctionClass::balanced);
        } else {
            EXPECT_EQ(c, FunctionClass::other);
        }
    }
}

TEST(DeutschJozsa, ProgramLayout) {
    const auto p = qce::dj_program(1);
    EXPECT_EQ(p.name, "d-j1");
    EXPECT_EQ(p.steps, (Steps{"Initialize", "Y1", "Y2bar", "I(pi/2)", "X2", "X2", "I(pi/2)",
                              "X2", "X2", "Y1bar", "Y2"}));
    const auto p3 = qce::dj_program(3);
    EXPECT_EQ(p3.steps, (Steps{"Initialize", "Y1", "Y2bar", "Y2", "I(pi)", "Y2bar", "X2",
                               "Y1bar", "X1bar", "Y1", "Y1bar", "Y2"}));
    EXPECT_THROW(qce::dj_program(0), qce::ValidationError);
    EXPECT_THROW(qce::dj_program(5), qce::ValidationError);
}

TEST(DeutschJozsa, FunctionSequenceOnGround) {
    const auto m = qce::oracle::sequence_matrix(qce::dj_function_sequence(1), 2);
    EXPECT_LT(std::abs(m(0, 0) + 1.0), 1e-12);
}

TEST(DeutschJozsa, ProgramMatrixMatchesSimulation) {
    for (int k = 1; k <= 4; ++k) {
        const auto p = qce::dj_program(k);
        Steps gates(p.steps.begin() + 1, p.steps.end());
        const auto m = qce::oracle::sequence_matrix(qce::oracle::execution_order(gates), 2);
        const auto expected = qce::oracle::apply(m, qce::new_ground(2));
        EXPECT_GT(qce::fidelity(run(p, "Ideal").state, expected), 1.0 - 1e-10) << k;
    }
}

TEST(DeutschJozsa, IdealReadouts) {
    const double q1[4] = {0, 0, 1, 1};
    for (int k = 1; k <= 4; ++k) {
        const auto f = run(qce::dj_program(k), "Ideal");
        EXPECT_NEAR(f.q1, q1[k - 1], 1e-9) << k;
        EXPECT_NEAR(f.q2, 0.0, 1e-9) << k;
    }
}

TEST(DeutschJozsa, ClassificationOnEverySetAndClock) {
    for (const auto &set : qce::builtin_set_ids()) {
        for (auto clock : {qce::ClockConvention::global, qce::ClockConvention::per_instruction}) {
            for (int k = 1; k <= 4; ++k) {
                const auto f = run(qce::dj_program(k), set, clock);
                const auto expected = k <= 2 ? FunctionClass::constant : FunctionClass::balanced;
                EXPECT_EQ(qce::decide_dj(f.q1), expected)
                    << set << " " << qce::clock_name(clock) << " f" << k;
                if (k <= 2) {
                    EXPECT_LT(f.q1, 0.3);
                } else {
                    EXPECT_GT(f.q1, 0.7);
                }
            }
        }
    }
}

TEST(Ckh, ProgramsAndIdealReadouts) {
    EXPECT_EQ(qce::ckh_program(1).steps,
              (Steps{"Initialize", "Y1", "Y1bar", "X1", "X1", "Y1bar", "X1", "X1", "Y1bar"}));
    EXPECT_LE(run(qce::ckh_program(1), "Ideal").q1, 0.01);
    EXPECT_LE(run(qce::ckh_program(2), "Ideal").q1, 0.01);
    EXPECT_GE(run(qce::ckh_program(3), "Ideal").q1, 0.99);
    EXPECT_GE(run(qce::ckh_program(4), "Ideal").q1, 0.99);
}

TEST(Ckh, PhaseOracle) {
    // U_f |x> = (-1)^f(x) |x> up to a global phase for the diagonal sequences;
    // all four give the signed superposition from (|0> + |1>)/sqrt2.
    const double r = 1.0 / std::sqrt(2.0);
    for (int k = 1; k <= 4; ++k) {
        const auto m = qce::oracle::sequence_matrix(qce::ckh_function_sequence(k), 1);
        const auto f = qce::one_bit_function(k).outputs;
        Eigen::VectorXcd plus(2);
        plus << r, r;
        Eigen::VectorXcd want(2);
        want << (f[0] ? -r : r), (f[1] ? -r : r);
        EXPECT_NEAR(std::abs(want.dot(m * plus)), 1.0, 1e-12) << k;
        if (k != 2) {
            const double sign = f[0] == f[1] ? 1.0 : -1.0;
            EXPECT_LT(std::abs(m(0, 1)) + std::abs(m(1, 0)), 1e-12) << k;
            EXPECT_LT(std::abs(m(1, 1) / m(0, 0) - sign), 1e-12) << k;
        }
    }
}

TEST(Grover, ShortenedEqualsFullAsMatrices) {
    for (int j = 0; j <= 3; ++j) {
        Steps full = qce::detail::expand_walsh(qce::grover_full(j));
        const auto a = qce::oracle::sequence_matrix(qce::grover_shortened(j), 2);
        const auto b = qce::oracle::sequence_matrix(full, 2);
        EXPECT_LT(qce::oracle::phase_aligned_error(a, b), 1e-12) << j;
    }
}

TEST(Grover, IdealRunsFindTheItem) {
    for (int j = 0; j <= 3; ++j) {
        const auto s = run(qce::grover_program(j, GroverVariant::shortened), "Ideal");
        const auto f = run(qce::grover_program(j, GroverVariant::full), "Ideal");
        EXPECT_NEAR(s.q1, j & 1, 1e-9);
        EXPECT_NEAR(s.q2, (j >> 1) & 1, 1e-9);
        EXPECT_EQ(qce::decide_grover(s.q1, s.q2), j);
        EXPECT_GE(qce::fidelity(s.state, f.state), 1.0 - 1e-10) << j;
    }
}

TEST(Grover, ProgramNamesAndComposites) {
    const auto lib = qce::builtin_library();
    const auto ideal = qce::builtin_set("Ideal");
    EXPECT_EQ(qce::grover_program(2, GroverVariant::shortened).name, "grov2");
    EXPECT_EQ(qce::grover_program(2, GroverVariant::full).name, "grov2-full");
    for (int j = 0; j <= 3; ++j) {
        const std::string n = std::to_string(j);
        EXPECT_EQ(qce::flatten(lib.at("g" + n), lib, ideal),
                  qce::flatten(lib.at("grov" + n), lib, ideal));
    }
    for (const char *name : {"d-j1", "d-j4", "ckh1", "ckh4", "grov0", "grov3", "g0", "g3",
                             "grover-prepare", "grover-U1", "WH1", "WH2"}) {
        EXPECT_TRUE(lib.contains(name)) << name;
    }
    EXPECT_THROW(qce::grover_program(4, GroverVariant::shortened), qce::ValidationError);
}

TEST(Grover, NmrFindsEveryItem) {
    for (auto clock : {qce::ClockConvention::global, qce::ClockConvention::per_instruction}) {
        for (int j = 0; j <= 3; ++j) {
            const auto f = run(qce::grover_program(j, GroverVariant::shortened), "NMR", clock);
            EXPECT_EQ(qce::decide_grover(f.q1, f.q2), j) << qce::clock_name(clock);
        }
    }
}

TEST(Grover, NmrItemZeroPattern) {
    const auto f = run(qce::grover_program(0, GroverVariant::shortened), "NMR",
                       qce::ClockConvention::per_instruction);
    EXPECT_NEAR(f.q1, 0.028, 0.02);
    EXPECT_NEAR(f.q2, 0.163, 0.02);
}

TEST(Decide, Examples) {
    EXPECT_EQ(qce::decide_dj(0.169), FunctionClass::constant);
    EXPECT_EQ(qce::decide_dj(0.867), FunctionClass::balanced);
    EXPECT_EQ(qce::decide_grover(0.966, 0.171), 1);
    EXPECT_EQ(qce::decide_grover(0.037, 0.836), 2);
    EXPECT_EQ(qce::class_name(FunctionClass::other), "other");
}

} // namespace
