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

#include "abelian.hpp"
#include "error.hpp"
#include "spectral.hpp"

using namespace gapstab;

namespace {

int find_of_order(const FiniteGroup &g, int order) {
    for (int a = 0; a < g.order(); ++a) {
        int x = a, k = 1;
        while (x != g.identity()) x = g.mul(x, a), ++k;
        if (k == order) return a;
    }
    return -1;
}

}  // namespace

TEST(Spectral, UniformMeasureHasKappaOne) {
    for (const auto &orders : std::vector<std::vector<int>>{{2}, {3}, {2, 2}, {4, 3}}) {
        const AbelianGroup g = make_group(orders);
        GapReport r = kappa_abelian(g, ProbMeasure::uniform(g.order()));
        EXPECT_NEAR(r.kappa, 1.0, 1e-12);
        if (g.exponent_two()) {
            ASSERT_TRUE(r.exact_kappa.has_value());
            EXPECT_EQ(*r.exact_kappa, Rational(1));
        }
    }
    for (const FiniteGroup &g : {FiniteGroup::symmetric(3), FiniteGroup::quaternion(), FiniteGroup::alternating(4)})
        EXPECT_NEAR(kappa_general(g, ProbMeasure::uniform(g.order())).kappa, 1.0, 1e-10);
}

TEST(Spectral, HandComputedValues) {
    const AbelianGroup z2 = make_group({2});
    EXPECT_EQ(*kappa_abelian(z2, ProbMeasure::point(2, 1)).exact_kappa, Rational(1, 2));

    const AbelianGroup v4 = make_group({2, 2});
    const std::vector<int> e12 = {v4.index({1, 0}), v4.index({0, 1})};
    EXPECT_EQ(*kappa_abelian(v4, ProbMeasure::uniform_on(4, e12)).exact_kappa, Rational(1));

    const AbelianGroup c3 = make_group({2, 2, 2});
    const std::vector<int> basis = {c3.index({1, 0, 0}), c3.index({0, 1, 0}), c3.index({0, 0, 1})};
    EXPECT_EQ(*kappa_abelian(c3, ProbMeasure::uniform_on(8, basis)).exact_kappa, Rational(3, 2));
}

TEST(Spectral, RoutesAgreeOnAbelianGroups) {
    Rng rng(17);
    for (const auto &orders : std::vector<std::vector<int>>{{2}, {5}, {2, 2, 2}, {3, 4}, {2, 6}}) {
        const AbelianGroup g = make_group(orders);
        const FiniteGroup fg = g.to_finite_group();
        for (int t = 0; t < 4; ++t) {
            std::vector<int> ms;
            std::uniform_int_distribution<int> pick(0, g.order() - 1);
            for (int i = 0; i < 2 * g.rank() + 2; ++i) ms.push_back(pick(rng));
            ms.push_back(g.order() - 1);
            for (int j = 0; j < g.rank(); ++j) {
                Residues e(g.rank(), 0);
                e[j] = 1;
                ms.push_back(g.index(e));
            }
            const ProbMeasure mu = ProbMeasure::uniform_on(g.order(), ms);
            EXPECT_NEAR(kappa_abelian(g, mu).kappa, kappa_general(fg, mu).kappa, 1e-9);
        }
    }
}

TEST(Spectral, TrivialGroup) {
    const AbelianGroup g = make_group({});
    GapReport r = kappa_abelian(g, ProbMeasure::uniform(1));
    EXPECT_EQ(r.kappa, 0);
}

TEST(Spectral, NonGeneratingSupport) {
    const AbelianGroup g = make_group({2, 2});
    try {
        kappa_abelian(g, ProbMeasure::point(4, 1));
        FAIL() << "expected non-generating error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonGenerating);
    }
}

TEST(Spectral, SymmetricGroupPoincare) {
    const FiniteGroup s3 = FiniteGroup::symmetric(3);
    const std::vector<int> gens = {find_of_order(s3, 2), find_of_order(s3, 3)};
    const ProbMeasure mu = ProbMeasure::uniform_on(6, gens);
    const GapReport r = kappa_general(s3, mu);
    EXPECT_GT(r.kappa, 1.0);
    Rng rng(2);
    UnitaryRep reg = UnitaryRep::left_regular(share(s3));
    for (int t = 0; t < 50; ++t) {
        Vector xi = random_ginibre(6, 1, rng).col(0);
        PoincareResidual p = poincare_residual(reg, mu, xi);
        EXPECT_LE(p.lhs, p.rhs * (1 + 1e-9) + 1e-12);
    }
}

TEST(Spectral, PoincareTightOnRegularZ2) {
    const FiniteGroup z2 = FiniteGroup::cyclic(2);
    UnitaryRep reg = UnitaryRep::left_regular(share(z2));
    Vector xi(2);
    xi << 1, -1;
    PoincareResidual p = poincare_residual(reg, ProbMeasure::point(2, 1), xi);
    EXPECT_NEAR(p.lhs, 2.0, 1e-12);
    EXPECT_NEAR(p.rhs, 2.0, 1e-12);

    Vector inv(2);
    inv << 1, 1;
    PoincareResidual q = poincare_residual(reg, ProbMeasure::point(2, 1), inv);
    EXPECT_NEAR(q.lhs, 0, 1e-12);
    EXPECT_NEAR(q.rhs, 0, 1e-12);
}

TEST(Spectral, AlonRoichman) {
    Rng rng(23);
    const AbelianGroup g = make_group({2, 2, 2, 2});
    SampledMeasure s = alon_roichman_sample(g, 2.0, rng);
    EXPECT_LE(s.gap.kappa, 2.0);
    EXPECT_EQ(s.measure, ProbMeasure::uniform_on(16, s.multiset));

    SampledMeasure t = alon_roichman_sample(FiniteGroup::symmetric(3), 2.0, rng);
    EXPECT_LE(t.gap.kappa, 2.0);

    try {
        alon_roichman_sample(g, 0.9, rng, 3);
        FAIL() << "kappa below 15/16 is unreachable on (Z/2)^4";
    } catch (const SamplingError &e) {
        EXPECT_GE(e.best(), 0.9);
    }
}
