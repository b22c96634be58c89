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

#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace gapstab {

const char *gap_method_name(GapMethod m) { return m == GapMethod::AbelianFourier ? "abelian-fourier" : "regular-rep"; }

Complex fourier_coefficient(const AbelianGroup &group, const ProbMeasure &mu, int chi) {
    Complex s = 0;
    for (int a : mu.support()) s += mu.weight_double(a) * group.pairing(chi, a);
    return s;
}

namespace {

GapReport trivial_report(GapMethod method) {
    GapReport r;
    r.kappa = 0;
    r.second_eigenvalue = -std::numeric_limits<double>::infinity();
    r.exact_kappa = Rational(0);
    r.method = method;
    return r;
}

}  // namespace

GapReport kappa_abelian(const AbelianGroup &group, const ProbMeasure &mu) {
    require(mu.group_order() == group.order(), ErrorKind::InvalidArgument, "measure and group disagree on order");
    const auto supp = mu.support();
    require(static_cast<int>(group.closure(supp).size()) == group.order(), ErrorKind::NonGenerating,
            "support of the measure does not generate the group");
    if (group.order() == 1) return trivial_report(GapMethod::AbelianFourier);

    bool exact = true;
    for (int a : supp) exact = exact && group.add(a, a) == 0;

    GapReport r;
    r.method = GapMethod::AbelianFourier;
    if (exact) {
        Rational best(-2);
        for (int chi = 1; chi < group.order(); ++chi) {
            Rational s(0);
            for (int a : supp) s += group.phase(chi, a) == 0 ? mu.weight(a) : -mu.weight(a);
            best = std::max(best, s);
        }
        r.exact_second_eigenvalue = best;
        r.exact_kappa = Rational(1) / (Rational(1) - best);
        r.second_eigenvalue = to_double(best);
        r.kappa = to_double(*r.exact_kappa);
        return r;
    }
    double best = -2;
    for (int chi = 1; chi < group.order(); ++chi) best = std::max(best, fourier_coefficient(group, mu, chi).real());
    r.second_eigenvalue = best;
    r.kappa = 1.0 / (1.0 - best);
    return r;
}

GapReport kappa_general(const FiniteGroup &group, const ProbMeasure &mu, int cap) {
    const int n = group.order();
    require(mu.group_order() == n, ErrorKind::InvalidArgument, "measure and group disagree on order");
    require(n <= cap, ErrorKind::Resource,
            "group order " + std::to_string(n) + " exceeds the regular-representation cap " + std::to_string(cap));
    require(mu.generates(group), ErrorKind::NonGenerating, "support of the measure does not generate the group");
    if (n == 1) return trivial_report(GapMethod::RegularRep);

    ProbMeasure nu = mu.symmetrized(group);
    RealMatrix t = RealMatrix::Zero(n, n);
    for (int g : nu.support()) {
        const double w = nu.weight_double(g);
        for (int h = 0; h < n; ++h) t(group.mul(g, h), h) += w;
    }
    // Householder reflection sending e_0 to the normalized constant vector; its
    // remaining columns span the complement of the constants.
    RealVector v = RealVector::Constant(n, -1.0 / std::sqrt(static_cast<double>(n)));
    v(0) += 1.0;
    v.normalize();
    RealVector tv = t * v;
    RealVector vt = t.transpose() * v;
    const double vtv = v.dot(tv);
    RealMatrix htH = t - 2.0 * v * vt.transpose() - 2.0 * tv * v.transpose() + 4.0 * vtv * v * v.transpose();
    RealMatrix restricted = htH.bottomRightCorner(n - 1, n - 1);
    restricted = (restricted + restricted.transpose()) * 0.5;
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(restricted, Eigen::EigenvaluesOnly);

    GapReport r;
    r.method = GapMethod::RegularRep;
    r.second_eigenvalue = es.eigenvalues()(n - 2);
    r.kappa = 1.0 / (1.0 - r.second_eigenvalue);
    return r;
}

PoincareResidual poincare_residual(const UnitaryRep &rep, const ProbMeasure &mu, const Vector &xi) {
    const auto &alg = *rep.algebra();
    require(xi.size() == alg.total_dim(), ErrorKind::InvalidArgument, "vector and representation dimensions differ");
    GapReport gap = kappa_general(rep.g(), mu);
    auto apply = [&](const Element &u) {
        Vector out(xi.size());
        Eigen::Index off = 0;
        for (size_t i = 0; i < alg.num_blocks(); ++i) {
            out.segment(off, alg.dim(i)) = u.block(i) * xi.segment(off, alg.dim(i));
            off += alg.dim(i);
        }
        return out;
    };
    Vector avg = Vector::Zero(xi.size());
    for (const auto &u : rep.values()) avg += apply(u);
    avg /= static_cast<double>(rep.values().size());

    PoincareResidual out{};
    out.kappa = gap.kappa;
    out.lhs = (xi - avg).squaredNorm();
    double s = 0;
    for (int g : mu.support()) s += mu.weight_double(g) * (apply(rep(g)) - xi).squaredNorm();
    out.rhs = gap.kappa / 2.0 * s;
    return out;
}

namespace {

template <typename Kappa>
SampledMeasure sample_loop(int order, double target, Rng &rng, int max_tries, double c, Kappa &&kappa_of) {
    require(target > 0, ErrorKind::InvalidArgument, "target kappa must be positive");
    require(max_tries >= 1, ErrorKind::InvalidArgument, "max_tries must be >= 1");
    std::uniform_int_distribution<int> pick(0, order - 1);
    double best = std::numeric_limits<double>::infinity();
    for (int attempt = 1; attempt <= max_tries; ++attempt, c *= 2) {
        double raw = std::ceil(c * std::log(static_cast<double>(order)));
        const int size = static_cast<int>(std::clamp(raw, 1.0, 16.0 * order + 16.0));
        std::vector<int> multiset(size);
        for (int &e : multiset) e = pick(rng);
        ProbMeasure mu = ProbMeasure::uniform_on(order, multiset);
        try {
            GapReport gap = kappa_of(mu);
            best = std::min(best, gap.kappa);
            if (gap.kappa <= target + 1e-12) return {std::move(mu), std::move(multiset), gap, attempt};
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::NonGenerating) throw;
        }
    }
    throw SamplingError("no sampled multiset reached kappa <= " + std::to_string(target) + "; best " +
                            std::to_string(best),
                        best);
}

}  // namespace

SampledMeasure alon_roichman_sample(const FiniteGroup &group, double target_kappa, Rng &rng, int max_tries, double c,
                                    int cap) {
    require(group.order() <= cap, ErrorKind::Resource, "group exceeds the regular-representation cap");
    return sample_loop(group.order(), target_kappa, rng, max_tries, c,
                       [&](const ProbMeasure &mu) { return kappa_general(group, mu, cap); });
}

SampledMeasure alon_roichman_sample(const AbelianGroup &group, double target_kappa, Rng &rng, int max_tries,
                                    double c) {
    return sample_loop(group.order(), target_kappa, rng, max_tries, c,
                       [&](const ProbMeasure &mu) { return kappa_abelian(group, mu); });
}

}  // namespace gapstab
