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

#include <cmath>

#include "algebra.hpp"
#include "error.hpp"
#include "stability.hpp"

using namespace gapstab;

namespace {

Matrix swap2() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = m(1, 0) = 1;
    return m;
}

UnitaryRep regular_z2() { return UnitaryRep::left_regular(share(FiniteGroup::cyclic(2))); }

Element random_element(const AlgebraPtr &alg, Rng &rng) {
    std::vector<Matrix> blocks;
    for (const auto &b : alg->blocks()) blocks.push_back(random_ginibre(b.dim, b.dim, rng));
    return Element(alg, std::move(blocks));
}

}  // namespace

TEST(Algebra, TraceConventions) {
    auto m2 = share(TracialAlgebra::matrix(2));
    EXPECT_NEAR(Element::identity(m2).trace().real(), 1.0, 1e-15);
    auto ds = share(TracialAlgebra::direct_sum({1, 3}, {0.25, 0.75}));
    EXPECT_TRUE(ds->is_normalized());
    EXPECT_EQ(ds->total_dim(), 4);
    EXPECT_NEAR(Element::identity(ds).norm2_squared(), 1.0, 1e-15);
    EXPECT_THROW(TracialAlgebra::direct_sum({1, 2}, {0.5, 0.25}), Error);
}

TEST(Algebra, ElementArithmetic) {
    Rng rng(1);
    auto alg = share(TracialAlgebra::direct_sum({2, 3}, {0.5, 0.5}));
    Element a = random_element(alg, rng), b = random_element(alg, rng);
    EXPECT_NEAR(std::abs(inner(a, b) - (a.adjoint() * b).trace()), 0, 1e-12);
    Element c = a * b - b * a;
    EXPECT_NEAR(commutator_norm2_squared(a, b), c.norm2_squared(), 1e-10);
    EXPECT_NEAR((a + b - b).norm2(), a.norm2(), 1e-12);
    EXPECT_LE(a.norm2(), a.norm_inf() + 1e-12);
    EXPECT_LE(std::abs(a.trace()), a.norm1() + 1e-12);
}

TEST(Algebra, PvmValidation) {
    auto alg = share(TracialAlgebra::matrix(2));
    Matrix p = Matrix::Zero(2, 2);
    p(0, 0) = 1;
    Pvm ok({Element::single(alg, p), Element::single(alg, Matrix::Identity(2, 2) - p)});
    EXPECT_LT(ok.residual(), 1e-14);
    Element obs = ok.observable({1, -1});
    EXPECT_NEAR(obs.block(0)(1, 1).real(), -1, 1e-15);
    try {
        Pvm bad({Element::single(alg, p), Element::single(alg, p)});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidPvm);
    }
}

TEST(Algebra, RepresentationValidation) {
    auto g = share(FiniteGroup::cyclic(2));
    auto alg = share(TracialAlgebra::matrix(2));
    Matrix rot(2, 2);
    rot << std::cos(0.3), -std::sin(0.3), std::sin(0.3), std::cos(0.3);
    try {
        UnitaryRep bad(g, {Element::identity(alg), Element::single(alg, rot)});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidRepresentation);
    }
    EXPECT_THROW(AlmostHom(g, {Element::identity(alg), Element::single(alg, 2 * rot)}), Error);
}

TEST(Algebra, DefectOfRotation) {
    auto g = share(FiniteGroup::cyclic(2));
    auto alg = share(TracialAlgebra::matrix(2));
    for (double theta : {0.0, 0.1, 0.7, 1.5}) {
        Matrix rot(2, 2);
        rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
        AlmostHom phi(g, {Element::identity(alg), Element::single(alg, rot)});
        EXPECT_NEAR(defect(phi), 0.5 * (1 - std::cos(2 * theta)), 1e-12);
    }
    UnitaryRep reg = UnitaryRep::left_regular(share(FiniteGroup::symmetric(3)));
    EXPECT_LT(defect(reg), 1e-20);
    UnitaryRep triv = UnitaryRep::trivial(share(FiniteGroup::quaternion()), alg);
    EXPECT_EQ(defect(triv), 0);
}

TEST(Algebra, ConditionalExpectation) {
    UnitaryRep u = regular_z2();
    auto alg = u.algebra();
    Matrix e12 = Matrix::Zero(2, 2);
    e12(0, 1) = 1;
    Element x = conditional_expectation(u, Element::single(alg, e12));
    Matrix expect = Matrix::Zero(2, 2);
    expect(0, 1) = expect(1, 0) = 0.5;
    EXPECT_LT((x.block(0) - expect).norm(), 1e-15);

    Element in_n = Element::single(alg, swap2() * Complex(0.3, 0.1) + Matrix::Identity(2, 2));
    EXPECT_LT(distance_inf(conditional_expectation(u, in_n), in_n), 1e-15);

    UnitaryRep triv = UnitaryRep::trivial(share(FiniteGroup::cyclic(3)), alg);
    EXPECT_LT(distance_inf(conditional_expectation(triv, Element::single(alg, e12)), Element::single(alg, e12)), 1e-15);
}

TEST(Algebra, CommutatorGap) {
    Rng rng(4);
    UnitaryRep u = regular_z2();
    Element central = Element::single(u.algebra(), Matrix::Identity(2, 2) * Complex(0.5, 0.5) + swap2());
    CommutatorGap z = commutator_gap_check(u, ProbMeasure::uniform(2), central);
    EXPECT_NEAR(z.lhs, 0, 1e-20);
    EXPECT_NEAR(z.average, 0, 1e-20);

    for (auto orders : std::vector<std::vector<int>>{{2, 2, 2}, {3, 2}}) {
        const AbelianGroup ag = make_group(orders);
        auto g = share(ag.to_finite_group());
        UnitaryRep reg = UnitaryRep::left_regular(g);
        const Matrix h = random_unitary(reg.algebra()->total_dim(), rng);
        std::vector<Element> vals;
        for (const auto &v : reg.values()) vals.push_back(Element::single(reg.algebra(), h * v.block(0) * h.adjoint()));
        UnitaryRep conj(g, vals);
        Element v = Element::single(reg.algebra(), random_ginibre(ag.order(), ag.order(), rng));
        CommutatorGap uni = commutator_gap_check(conj, ProbMeasure::uniform(ag.order()), v);
        EXPECT_NEAR(uni.kappa, 1.0, 1e-10);
        EXPECT_NEAR(uni.average, 2 * uni.lhs, 1e-9 * uni.average);
        EXPECT_NEAR(uni.rhs_poincare, uni.lhs, 1e-9 * uni.average);

        std::vector<int> basis;
        for (int j = 0; j < ag.rank(); ++j) {
            Residues e(ag.rank(), 0);
            e[j] = 1;
            basis.push_back(ag.index(e));
        }
        CommutatorGap b = commutator_gap_check(conj, ProbMeasure::uniform_on(ag.order(), basis), v);
        EXPECT_LE(b.lhs, b.rhs_poincare * (1 + 1e-9));
        EXPECT_LE(b.average, b.rhs_average * (1 + 1e-9));
    }
}

TEST(Algebra, PolarDecomposition) {
    auto alg = share(TracialAlgebra::matrix(2));
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 2;
    PolarElement p = polar(Element::single(alg, d));
    Matrix w = Matrix::Zero(2, 2);
    w(0, 0) = 1;
    EXPECT_LT((p.w.block(0) - w).norm(), 1e-12);
    EXPECT_LT((p.abs.block(0) - d).norm(), 1e-12);

    PolarElement z = polar(Element::zero(alg));
    EXPECT_LT(z.w.norm_inf(), 1e-15);

    Rng rng(8);
    Matrix u = random_unitary(3, rng);
    auto m3 = share(TracialAlgebra::matrix(3));
    PolarElement pu = polar(Element::single(m3, u));
    EXPECT_LT((pu.w.block(0) - u).norm(), 1e-10);
    EXPECT_LT((pu.abs.block(0) - Matrix::Identity(3, 3)).norm(), 1e-10);

    Matrix x = random_ginibre(4, 4, rng);
    PolarParts pp = polar_decomposition(x);
    EXPECT_LT((pp.w * pp.abs - x).norm(), 1e-10);
}

TEST(Algebra, CommutantBlocks) {
    Rng rng(9);
    auto alg = share(TracialAlgebra::matrix(3));
    CommutantBlocks t = commutant_blocks(UnitaryRep::trivial(share(FiniteGroup::cyclic(2)), alg), rng);
    ASSERT_EQ(t.per_block[0].parts.size(), 1u);
    EXPECT_EQ(t.per_block[0].parts[0].m, 3);

    CommutantBlocks r = commutant_blocks(regular_z2(), rng);
    ASSERT_EQ(r.per_block[0].parts.size(), 2u);
    EXPECT_EQ(r.per_block[0].parts[0].m, 1);
    EXPECT_EQ(r.per_block[0].parts[1].m, 1);

    // two copies of the two-dimensional irreducible of S3
    const FiniteGroup s3 = FiniteGroup::symmetric(3);
    RegularDecomposition reg = regular_decomposition(s3, rng);
    int two = -1;
    for (size_t j = 0; j < reg.irreps.size(); ++j)
        if (reg.irreps[j][0].rows() == 2) two = static_cast<int>(j);
    ASSERT_GE(two, 0);
    auto m4 = share(TracialAlgebra::matrix(4));
    std::vector<Element> vals;
    for (int g = 0; g < 6; ++g) vals.push_back(Element::single(m4, kron(reg.irreps[two][g], Matrix::Identity(2, 2))));
    UnitaryRep doubled(share(s3), vals);
    CommutantBlocks c = commutant_blocks(doubled, rng);
    ASSERT_EQ(c.per_block[0].parts.size(), 1u);
    EXPECT_EQ(c.per_block[0].parts[0].m, 2);
    EXPECT_EQ(c.per_block[0].parts[0].copies, 2);
}

TEST(Algebra, NearestUnitaryTightAtZeroExpectation) {
    Rng rng(10);
    UnitaryRep u = regular_z2();
    Matrix z = Matrix::Zero(2, 2);
    z(0, 0) = 1;
    z(1, 1) = -1;
    Element v = Element::single(u.algebra(), z);
    EXPECT_LT(conditional_expectation(u, v).norm_inf(), 1e-15);
    Element vt = nearest_unitary_in_commutant(u, v, rng);
    EXPECT_TRUE(is_unitary(vt));
    EXPECT_NEAR((v - vt).norm2(), std::sqrt(2.0), 1e-9);
}

TEST(Algebra, NearestUnitaryBound) {
    Rng rng(12);
    const FiniteGroup g = FiniteGroup::dihedral(3);
    UnitaryRep reg = UnitaryRep::left_regular(share(g));
    for (int t = 0; t < 20; ++t) {
        Element v = Element::single(reg.algebra(), random_unitary(6, rng));
        Element vt = nearest_unitary_in_commutant(reg, v, rng);
        const double gap = (v - conditional_expectation(reg, v)).norm2();
        EXPECT_LE((v - vt).norm2(), std::sqrt(2.0) * gap + 1e-9);
        EXPECT_TRUE(is_unitary(vt));
        for (int h = 0; h < g.order(); ++h) EXPECT_LT(commutator_norm2_squared(reg(h), vt), 1e-18);
    }
    Element inside = Element::single(reg.algebra(), left_regular_matrix(g, 0));
    EXPECT_LT((nearest_unitary_in_commutant(reg, inside, rng) - inside).norm2(), 1e-10);
}

TEST(Algebra, DualityAttained) {
    Rng rng(13);
    UnitaryRep reg = UnitaryRep::left_regular(share(FiniteGroup::cyclic(4)));
    for (int t = 0; t < 10; ++t) {
        Element xi = Element::single(reg.algebra(), random_ginibre(4, 4, rng));
        DualityCheck d = norm_conditional_duality_check(reg, xi);
        EXPECT_NEAR(d.lhs, d.sup_value, 1e-9);
        EXPECT_LT(d.orthogonality, 1e-9);
    }
    Element inv = Element::identity(reg.algebra());
    DualityCheck z = norm_conditional_duality_check(reg, inv);
    EXPECT_NEAR(z.lhs, 0, 1e-12);
}

TEST(Algebra, Amplification) {
    TracialAlgebra m2 = TracialAlgebra::matrix(2);
    EXPECT_EQ(amplify(m2, 1), m2);
    auto amp = share(amplify(m2, 3));
    EXPECT_EQ(amp->dim(0), 6);
    EXPECT_NEAR(Element::identity(amp).trace().real(), 3.0, 1e-15);
    Element one = embed_amplified(amp, Element::identity(share(m2)), 3);
    EXPECT_NEAR(one.trace().real(), 1.0, 1e-15);
    try {
        amplify(m2, 3000);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Resource);
    }
}
