// Copyright 2026 The gapstab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "error.hpp"
#include "games.hpp"
#include "suites.hpp"

using namespace gapstab;

namespace {

LinearCode repetition() { return code_new(2, {{1, 1, 1}}); }

LinearCode hamming() {
    return code_new(2, {{1, 0, 0, 0, 0, 1, 1}, {0, 1, 0, 0, 1, 0, 1}, {0, 0, 1, 0, 1, 1, 0}, {0, 0, 0, 1, 1, 1, 1}});
}

Matrix pauli_x() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = m(1, 0) = 1;
    return m;
}

Matrix pauli_z() {
    Matrix m = Matrix::Identity(2, 2);
    m(1, 1) = -1;
    return m;
}

}  // namespace

TEST(Games, CommutationGameShape) {
    Game g = commutation_game();
    EXPECT_EQ(g.num_questions(), 3);
    EXPECT_EQ(g.questions[2].answers, 4);
    EXPECT_EQ(g.total_weight(), Rational(1));
    EXPECT_NO_THROW(g.validate());
    EXPECT_EQ(commutation_game(2, 3).questions[2].answers, 6);
    EXPECT_THROW(commutation_game(0, 2), Error);
}

TEST(Games, RuleEvaluation) {
    Rule r{RuleKind::Commutation, {}, 1, 3};
    EXPECT_TRUE(r.accepts(2, 1 * 3 + 2));
    EXPECT_FALSE(r.accepts(1, 1 * 3 + 2));
    EXPECT_TRUE(r.transpose().accepts(1 * 3 + 2, 2));
    EXPECT_EQ(r.transpose().transpose(), r);
    for (int alpha : {1, -1})
        for (int k = 0; k < 4; ++k) {
            const int p = line_pattern(alpha, k);
            EXPECT_EQ(std::popcount(static_cast<unsigned>(p)) % 2 == 1, alpha == -1);
        }
}

TEST(Games, HonestValues) {
    for (const Game &g : {commutation_game(), commutation_game(2, 3), magic_square_game()}) {
        SynchronousStrategy s = honest_strategy(g);
        EXPECT_NEAR(value(g, s), 1.0, 1e-9);
        EXPECT_NEAR(value_direct(g, s), 1.0, 1e-9);
    }
    for (auto make : {repetition, hamming}) {
        LinearCode c = make();
        Game g = game_from_code(c, c);
        SynchronousStrategy s = honest_strategy(g);
        EXPECT_NEAR(value(g, s), 1.0, 1e-9);
        EXPECT_NEAR(value_direct(g, s), 1.0, 1e-9);
    }
}

TEST(Games, DeterministicMagicSquare) {
    const Game g = magic_square_game();
    EXPECT_EQ(best_deterministic_value(g), Rational(17, 18));
    const Game c = commutation_game();
    EXPECT_EQ(best_deterministic_value(c), Rational(1));
    std::vector<int> answers(15, 0);
    EXPECT_NEAR(value(g, deterministic_strategy(g, answers)), to_double(deterministic_value(g, answers)), 1e-15);
}

TEST(Games, MagicGrid) {
    std::array<Matrix, 9> grid = magic_square_grid(pauli_x(), pauli_z());
    GridCheck c = check_grid(grid);
    EXPECT_LT(c.involution, 1e-10);
    EXPECT_LT(c.commutation, 1e-10);
    EXPECT_LT(c.line_product, 1e-10);

    Rng rng(3);
    for (Eigen::Index n : {1, 2, 3}) {
        Matrix w = random_unitary(2 * n, rng);
        Matrix p = w * kron(pauli_x(), Matrix::Identity(n, n)) * w.adjoint();
        Matrix q = w * kron(pauli_z(), Matrix::Identity(n, n)) * w.adjoint();
        GridCheck r = check_grid(magic_square_grid(p, q));
        EXPECT_LT(std::max({r.involution, r.commutation, r.line_product}), 1e-10);
    }
}

TEST(Games, ValueShortcutMatchesDoubleSum) {
    Rng rng(4);
    for (auto make : {repetition, hamming}) {
        LinearCode c = make();
        Game g = game_from_code(c, c);
        SynchronousStrategy s = perturb_strategy(honest_strategy(g), 0.1, rng);
        EXPECT_NEAR(value(g, s), value_direct(g, s), 1e-10);
        EXPECT_LT(value(g, s), 1.0);
    }
}

TEST(Games, PerturbationModel) {
    Rng rng(5);
    const Game g = magic_square_game();
    SynchronousStrategy h = honest_strategy(g);
    SynchronousStrategy same = perturb_strategy(h, 0.0, rng);
    EXPECT_NEAR(value(g, same), 1.0, 1e-12);
    double prev = 1.0;
    for (double sigma : {0.01, 0.1}) {
        Rng r(6);
        double v = value(g, perturb_strategy(h, sigma, r));
        EXPECT_LT(v, prev + 1e-12);
        EXPECT_GT(v, 1 - 50 * sigma * sigma);
        prev = v;
    }
    double big = value(g, perturb_strategy(h, 3.0, rng));
    EXPECT_GE(big, 0);
    EXPECT_LE(big, 1);
}

TEST(Games, CommutationPerturbationBound) {
    Rng rng(7);
    const Game g = commutation_game();
    SynchronousStrategy h = honest_strategy(g);
    CommutationBound perfect = commutation_bound_check(g, h);
    EXPECT_NEAR(perfect.eps, 0, 1e-12);
    EXPECT_NEAR(perfect.lhs_projections, 0, 1e-12);
    for (int t = 0; t < 50; ++t) {
        SynchronousStrategy s = perturb_strategy(tensor_identity(h, 1 + t % 4), 0.02 * (1 + t % 10), rng);
        CommutationBound b = commutation_bound_check(g, s);
        EXPECT_LE(b.lhs_projections, 16 * b.eps + 1e-12);
        ASSERT_TRUE(b.lhs_unitary.has_value());
        EXPECT_LE(*b.lhs_unitary, 64 * b.eps + 1e-12);
    }
}

TEST(Games, CodeGamePerturbationBound) {
    Rng rng(8);
    const Game g = magic_square_game();
    SynchronousStrategy h = honest_strategy(g);
    AnticommutationBound perfect = anticommutation_bound_check(g, h);
    EXPECT_NEAR(perfect.eps, 0, 1e-12);
    EXPECT_NEAR(perfect.lhs, 0, 1e-12);
    for (int t = 0; t < 30; ++t) {
        SynchronousStrategy s = perturb_strategy(h, 0.01 * (1 + t % 8), rng);
        AnticommutationBound b = anticommutation_bound_check(g, s);
        EXPECT_LE(b.lhs, 432 * b.eps);
        EXPECT_NEAR(b.eta_squared_sum, 72 * b.eps, 1e-6 * b.eps);
    }
    for (int mask : {0, 1, 0x1ff, 0x155}) {
        std::vector<int> answers(15, 0);
        for (int c = 0; c < 9; ++c) answers[c] = mask >> c & 1;
        SynchronousStrategy d = deterministic_strategy(g, answers);
        AnticommutationBound b = anticommutation_bound_check(g, d);
        EXPECT_LE(b.lhs, 432 * b.eps + 1e-12);
    }
}

TEST(Games, PauliPvms) {
    for (int n : {1, 2, 3}) {
        PauliPvms p = pauli_pvms(n);
        EXPECT_EQ(p.x.size(), static_cast<size_t>(1 << n));
        EXPECT_LT(p.x.residual(), 1e-12);
        EXPECT_LT(p.z.residual(), 1e-12);
    }
    try {
        pauli_pvms(8, 64);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Resource);
    }
}

TEST(Games, CombinedGameFromCodes) {
    LinearCode rep = repetition();
    Game g = game_from_code(rep, rep);
    ASSERT_TRUE(g.pauli.has_value());
    EXPECT_EQ(g.pauli->group.order(), 2);
    EXPECT_EQ(g.num_questions(), 17);
    EXPECT_EQ(*g.pauli->c * *g.pauli->c_prime, Rational(1, 4));

    LinearCode h = hamming();
    Game hg = game_from_code(h, h);
    EXPECT_EQ(hg.pauli->group.order(), 16);
    EXPECT_EQ(*hg.pauli->c * *hg.pauli->c_prime, Rational(49, 36));
    EXPECT_EQ(hg.total_weight(), Rational(1));

    LinearCode q3 = code_new(3, {{1, 1}});
    EXPECT_THROW(game_from_code(q3, q3), Error);
    EXPECT_THROW(combined_game(make_group({2}), {Rational(1, 2), Rational(1, 3)}, {0, 1}, {0, 0}), Error);
    EXPECT_THROW(combined_game(make_group({2, 2}), {Rational(1, 2), Rational(1, 2)}, {1, 2}, {1, 2}), Error);
}

TEST(Games, GnGame) {
    Rng rng(9);
    LinearCode c = gn_code(2, rng);
    EXPECT_EQ(c.length(), 8);
    EXPECT_EQ(distance(c), 5);
    Game g = gn_game(c);
    EXPECT_GT(g.pauli->question_constant, 0);
    EXPECT_NEAR(value(g, honest_strategy(g)), 1.0, 1e-9);
}

TEST(Games, StagesSumToFailure) {
    Rng rng(10);
    LinearCode h = hamming();
    Game g = game_from_code(h, h);
    SynchronousStrategy s = perturb_strategy(honest_strategy(g), 0.05, rng);
    auto st = stage_failures(g, s);
    EXPECT_NEAR((st[1] + st[2] + st[3]) / 3, 1 - value(g, s), 1e-12);
}

TEST(Games, SymmetrizeKeepsValue) {
    Rng rng(11);
    const Game g = magic_square_game();
    const Game sym = symmetrize(g);
    EXPECT_NO_THROW(sym.validate());
    SynchronousStrategy s = perturb_strategy(honest_strategy(g), 0.1, rng);
    EXPECT_NEAR(value(sym, s), value(g, s), 1e-12);
    for (int x = 0; x < g.num_questions(); ++x) EXPECT_EQ(sym.marginal(x), sym.first_marginal(x));
}

TEST(Games, ClosenessDegenerateWitness) {
    Rng rng(12);
    const Game g = commutation_game();
    SynchronousStrategy s = honest_strategy(g);
    UnitaryRep triv = UnitaryRep::trivial(share(FiniteGroup::cyclic(2)), s.algebra);
    RoundingCertificate cert = gowers_hatami_round(triv, rng);
    ClosenessCertificate same = closeness(g, s, s, cert);
    EXPECT_LT(same.strategy_distance, 1e-12);
    EXPECT_LT(same.isometry_trace_defect, 1e-12);
}

TEST(Games, RigidityHonest) {
    Rng rng(13);
    for (auto make : {repetition, hamming}) {
        LinearCode c = make();
        Game g = game_from_code(c, c);
        SynchronousStrategy s = honest_strategy(g);
        RigidityReport r = pauli_rigidity_report(g, s, rng);
        EXPECT_NEAR(r.value, 1.0, 1e-9);
        EXPECT_LT(r.eps, 1e-9);
        EXPECT_LT(r.closeness.epsilon(), 1e-9);
    }
}

TEST(Games, RigidityConjugatedHonest) {
    Rng rng(14);
    LinearCode c = repetition();
    Game g = game_from_code(c, c);
    SynchronousStrategy s = honest_strategy(g);
    SynchronousStrategy t = conjugate_strategy(s, random_unitary(s.algebra->total_dim(), rng));
    RigidityReport r = pauli_rigidity_report(g, t, rng);
    EXPECT_NEAR(r.value, 1.0, 1e-9);
    EXPECT_LT(r.closeness.epsilon(), 1e-8);
}

TEST(Games, RigidityPerturbed) {
    Rng rng(15);
    LinearCode c = repetition();
    Game g = game_from_code(c, c);
    SynchronousStrategy s = perturb_strategy(honest_strategy(g), 0.03, rng);
    RigidityReport r = pauli_rigidity_report(g, s, rng);
    EXPECT_NEAR(r.stage_sum, 3 * r.eps, 1e-12);
    EXPECT_LE(r.rigidity_weighted, r.rigidity_bound);
    EXPECT_GT(r.measured_constant, 0);
}
