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

#include "suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "error.hpp"
#include "spectral.hpp"
#include "stability.hpp"

namespace gapstab {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_short(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

int uniform_int(Rng &rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform_real(Rng &rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double log_uniform(Rng &rng, double lo, double hi) { return std::exp(uniform_real(rng, std::log(lo), std::log(hi))); }

Matrix block_diag(const std::vector<Matrix> &parts) {
    Eigen::Index n = 0;
    for (const auto &p : parts) n += p.rows();
    Matrix out = Matrix::Zero(n, n);
    Eigen::Index off = 0;
    for (const auto &p : parts) {
        out.block(off, off, p.rows(), p.cols()) = p;
        off += p.rows();
    }
    return out;
}

Element random_element(const AlgebraPtr &alg, Rng &rng) {
    std::vector<Matrix> blocks;
    for (const auto &b : alg->blocks()) blocks.push_back(random_ginibre(b.dim, b.dim, rng));
    return Element(alg, std::move(blocks));
}

Vector random_vector(Eigen::Index n, Rng &rng) { return random_ginibre(n, 1, rng).col(0); }

/// Single block or, with probability 1/4, two blocks with random weights.
AlgebraPtr random_algebra(Eigen::Index max_dim, Rng &rng) {
    if (max_dim >= 2 && uniform_int(rng, 0, 3) == 0) {
        const auto d1 = uniform_int(rng, 1, static_cast<int>(max_dim) - 1);
        const auto d2 = uniform_int(rng, 1, static_cast<int>(max_dim) - d1);
        const double w = uniform_real(rng, 0.2, 0.8);
        return share(TracialAlgebra::direct_sum({d1, d2}, {w, 1 - w}));
    }
    return share(TracialAlgebra::matrix(uniform_int(rng, 1, static_cast<int>(max_dim))));
}

struct SmallGroup {
    GroupPtr group;
    std::shared_ptr<const RegularDecomposition> reg;
};

std::vector<SmallGroup> small_groups(std::uint64_t seed, int max_order) {
    std::vector<FiniteGroup> gs = {FiniteGroup::cyclic(2),  FiniteGroup::cyclic(3),   FiniteGroup::cyclic(5),
                                   FiniteGroup::cyclic(8),  FiniteGroup::cyclic(12),  FiniteGroup::dihedral(3),
                                   FiniteGroup::dihedral(4), FiniteGroup::dihedral(5), FiniteGroup::dihedral(6),
                                   FiniteGroup::quaternion(), FiniteGroup::alternating(4), FiniteGroup::symmetric(4),
                                   FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)),
                                   FiniteGroup::product(FiniteGroup::cyclic(3), FiniteGroup::dihedral(3)),
                                   FiniteGroup::dihedral(12)};
    std::vector<SmallGroup> out;
    Rng rng(derive_seed(seed, ~std::uint64_t{0}));
    for (auto &g : gs) {
        if (g.order() > max_order) continue;
        auto reg = std::make_shared<const RegularDecomposition>(regular_decomposition(g, rng));
        out.push_back({share(std::move(g)), std::move(reg)});
    }
    return out;
}

/// Random direct sum of irreducibles (dimension exactly dim when possible), conjugated by a Haar unitary.
Matrix random_rep_block(const SmallGroup &g, Eigen::Index dim, Rng &rng, std::vector<Matrix> &values) {
    const auto &irr = g.reg->irreps;
    std::vector<size_t> chosen;
    Eigen::Index used = 0;
    while (used < dim) {
        std::vector<size_t> fit;
        for (size_t j = 0; j < irr.size(); ++j)
            if (used + irr[j][0].rows() <= dim) fit.push_back(j);
        const size_t j = fit[uniform_int(rng, 0, static_cast<int>(fit.size()) - 1)];
        chosen.push_back(j);
        used += irr[j][0].rows();
    }
    const Matrix w = random_unitary(dim, rng);
    values.clear();
    for (int x = 0; x < g.group->order(); ++x) {
        std::vector<Matrix> parts;
        for (size_t j : chosen) parts.push_back(irr[j][x]);
        values.push_back(w * block_diag(parts) * w.adjoint());
    }
    return w;
}

/// Every group has a one-dimensional irrep, so any block dimension is reachable.
UnitaryRep random_rep(const SmallGroup &g, const AlgebraPtr &alg, Rng &rng) {
    const int n = g.group->order();
    std::vector<std::vector<Matrix>> per_block;
    for (const auto &b : alg->blocks()) {
        std::vector<Matrix> vals;
        random_rep_block(g, b.dim, rng, vals);
        per_block.push_back(std::move(vals));
    }
    std::vector<Element> values;
    for (int x = 0; x < n; ++x) {
        std::vector<Matrix> bl;
        for (auto &pb : per_block) bl.push_back(pb[x]);
        values.emplace_back(alg, std::move(bl));
    }
    return UnitaryRep(g.group, std::move(values), 1e-8);
}

UnitaryRep random_abelian_rep(const AbelianGroup &a, const GroupPtr &fg, const AlgebraPtr &alg, Rng &rng) {
    std::vector<std::vector<Matrix>> per_block;
    for (const auto &b : alg->blocks()) {
        std::vector<int> chars;
        for (Eigen::Index i = 0; i < b.dim; ++i) chars.push_back(uniform_int(rng, 0, a.order() - 1));
        const Matrix w = random_unitary(b.dim, rng);
        std::vector<Matrix> vals;
        for (int x = 0; x < a.order(); ++x) {
            Matrix d = Matrix::Zero(b.dim, b.dim);
            for (Eigen::Index i = 0; i < b.dim; ++i) d(i, i) = a.pairing(chars[i], x);
            vals.push_back(w * d * w.adjoint());
        }
        per_block.push_back(std::move(vals));
    }
    std::vector<Element> values;
    for (int x = 0; x < a.order(); ++x) {
        std::vector<Matrix> bl;
        for (auto &pb : per_block) bl.push_back(pb[x]);
        values.emplace_back(alg, std::move(bl));
    }
    return UnitaryRep(fg, std::move(values), 1e-8);
}

/// Random positive integer weights on a random generating subset.
ProbMeasure random_generating_measure(const FiniteGroup &g, Rng &rng) {
    const int n = g.order();
    std::vector<int> support;
    for (int x = 0; x < n; ++x)
        if (uniform_int(rng, 0, 2) == 0) support.push_back(x);
    while (!g.generates(support)) support.push_back(uniform_int(rng, 0, n - 1));
    std::vector<Rational> w(n, Rational(0));
    std::int64_t total = 0;
    std::vector<int> raw(n, 0);
    for (int x : support) {
        const int r = uniform_int(rng, 1, 5);
        raw[x] += r;
        total += r;
    }
    for (int x = 0; x < n; ++x) w[x] = Rational(raw[x], total);
    return ProbMeasure(n, std::move(w));
}

struct Check {
    std::string label;
    double lhs;
    double bound;
    bool strict = false;  // no tolerance
};

struct TrialOut {
    std::vector<double> row;
    std::vector<Check> checks;
};

using TrialFn = std::function<void(int, Rng &, TrialOut &)>;

bool violates(const Check &c, double tol) {
    const double slack = c.strict ? 0.0 : tol * std::max(1.0, std::abs(c.bound));
    return !(c.lhs <= c.bound + slack);
}

SuiteResult run_trials(const std::string &name, const std::string &constant, std::vector<std::string> columns,
                       int n, const SuiteOptions &opt, const TrialFn &fn) {
    std::vector<TrialOut> outs(n);
    parallel_for(n, opt.threads, [&](int i) {
        Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(i)));
        fn(i, rng, outs[i]);
    });
    SuiteResult r;
    r.name = name;
    r.constant = constant;
    r.trials = n;
    r.columns = std::move(columns);
    std::map<std::string, double> worst;
    for (int i = 0; i < n; ++i) {
        r.rows.push_back(std::move(outs[i].row));
        for (const auto &c : outs[i].checks) {
            if (c.bound > 1e-12 && std::isfinite(c.bound)) {
                const double ratio = c.lhs / c.bound;
                r.worst_ratio = std::max(r.worst_ratio, ratio);
                worst[c.label] = std::max(worst[c.label], ratio);
            }
            if (violates(c, opt.tol)) {
                ++r.violations;
                r.failures.push_back("trial " + std::to_string(i) + ": " + c.label + " " + fmt_short(c.lhs) + " > " +
                                     fmt_short(c.bound));
            }
        }
    }
    for (auto &[label, w] : worst) r.stats.emplace_back("worst_ratio[" + label + "]", w);
    return r;
}

int trials_or(const SuiteOptions &opt, int def) { return opt.trials > 0 ? opt.trials : def; }

// ---------------------------------------------------------------------------

SuiteResult suite_lemma17(const SuiteOptions &opt) {
    const Game g22 = commutation_game(2, 2), g23 = commutation_game(2, 3);
    const SynchronousStrategy h22 = honest_strategy(g22), h23 = honest_strategy(g23);
    return run_trials(
        "lemma17", "16 eps (projections), 64 eps (unitaries)",
        {"trial", "dim", "sigma", "eps", "lhs_projections", "bound_projections", "lhs_unitary", "bound_unitary"},
        trials_or(opt, 500), opt, [&](int i, Rng &rng, TrialOut &out) {
            const bool binary = i % 4 != 3;
            const Game &g = binary ? g22 : g23;
            const SynchronousStrategy &h = binary ? h22 : h23;
            const Eigen::Index base = h.algebra->dim(0);
            const Eigen::Index k = uniform_int(rng, 1, static_cast<int>(16 / base));
            SynchronousStrategy s = conjugate_strategy(tensor_identity(h, k), random_unitary(base * k, rng));
            const double sigma = i % 50 == 0 ? 0.0 : log_uniform(rng, 1e-3, 0.8);
            s = perturb_strategy(s, sigma, rng);
            const CommutationBound b = commutation_bound_check(g, s);
            out.row = {double(i), double(base * k), sigma, b.eps, b.lhs_projections, b.bound_projections,
                       b.lhs_unitary.value_or(NAN), b.lhs_unitary ? b.bound_unitary : NAN};
            out.checks.push_back({"projections", b.lhs_projections, b.bound_projections});
            if (b.lhs_unitary) out.checks.push_back({"unitary", *b.lhs_unitary, b.bound_unitary});
        });
}

SuiteResult suite_lemma19(const SuiteOptions &opt) {
    const Game g = magic_square_game();
    const SynchronousStrategy h = honest_strategy(g);
    SuiteResult r = run_trials(
        "lemma19", "432 eps",
        {"trial", "dim", "sigma", "eps", "lhs", "bound", "eta_squared_sum", "eta_over_eps"}, trials_or(opt, 500), opt,
        [&](int i, Rng &rng, TrialOut &out) {
            const Eigen::Index k = uniform_int(rng, 1, 8);
            SynchronousStrategy s = conjugate_strategy(tensor_identity(h, k), random_unitary(4 * k, rng));
            const double sigma = i % 50 == 0 ? 0.0 : log_uniform(rng, 1e-3, 0.8);
            s = perturb_strategy(s, sigma, rng);
            const AnticommutationBound b = anticommutation_bound_check(g, s);
            out.row = {double(i), double(4 * k), sigma, b.eps, b.lhs, b.bound, b.eta_squared_sum,
                       b.eps > 0 ? b.eta_squared_sum / b.eps : NAN};
            out.checks.push_back({"anticommutation", b.lhs, b.bound});
        });
    double lo = INFINITY, hi = -INFINITY;
    for (const auto &row : r.rows)
        if (row[3] > 1e-12) {
            lo = std::min(lo, row[7]);
            hi = std::max(hi, row[7]);
        }
    r.stats.emplace_back("eta_over_eps_min", lo);
    r.stats.emplace_back("eta_over_eps_max", hi);
    return r;
}

/// Random binary code measure on (Z/2)^n, or the uniform measure when `uniform`.
struct AbelianMeasure {
    AbelianGroup group;
    ProbMeasure measure;
    double kappa;
};

AbelianMeasure random_code_measure(int n, bool uniform, Rng &rng) {
    AbelianGroup a(std::vector<int>(n, 2));
    if (uniform) return {a, ProbMeasure::uniform(a.order()), 1.0};
    const int k = uniform_int(rng, n, 8);
    LinearCode code = random_code(2, k, n, 1, rng);
    CodeMeasure cm = measure_from_code(code);
    const GapReport gap = kappa_abelian(cm.group, cm.measure);
    const double kappa = gap.exact_kappa ? to_double(*gap.exact_kappa) : gap.kappa;
    return {cm.group, cm.measure, kappa};
}

SuiteResult suite_thm12(const SuiteOptions &opt) {
    return run_trials(
        "thm12", "kappa(mu) kappa(nu) int ||[U(a), V(b)]||_2^2",
        {"trial", "n_a", "n_b", "dim", "uniform", "kappa_mu", "kappa_nu", "lhs", "weighted", "rhs"},
        trials_or(opt, 500), opt, [&](int i, Rng &rng, TrialOut &out) {
            const bool uniform = i % 5 == 0;
            const int na = uniform_int(rng, 1, 4), nb = uniform_int(rng, 1, 4);
            AbelianMeasure mu = random_code_measure(na, uniform, rng), nu = random_code_measure(nb, uniform, rng);
            AlgebraPtr alg = random_algebra(8, rng);
            const UnitaryRep u = random_abelian_rep(mu.group, share(mu.group.to_finite_group()), alg, rng);
            UnitaryRep v0 = random_abelian_rep(nu.group, share(nu.group.to_finite_group()), alg, rng);
            const AmplificationCheck c = commutator_amplification_check(u, v0, mu.measure, nu.measure, mu.kappa, nu.kappa);
            out.row = {double(i), double(na), double(nb), double(alg->total_dim()), double(uniform), c.kappa_mu,
                       c.kappa_nu, c.lhs, c.weighted, c.rhs};
            out.checks.push_back({"amplification", c.lhs, c.rhs});
            if (uniform) out.checks.push_back({"uniform_equality", std::abs(c.lhs - c.rhs), 1e-10, true});
        });
}

SuiteResult suite_cor14(const SuiteOptions &opt) {
    return run_trials(
        "cor14", "kappa(mu) kappa(nu) int ||[U(a) x lambda(a), V(chi) x M(chi)]||_2^2",
        {"trial", "n", "dim", "uniform", "kappa_mu", "kappa_nu", "lhs", "direct_lhs", "weighted", "rhs"},
        trials_or(opt, 500), opt, [&](int i, Rng &rng, TrialOut &out) {
            const bool uniform = i % 5 == 0;
            const int n = uniform_int(rng, 1, 4);
            AbelianMeasure mu = random_code_measure(n, uniform, rng), nu = random_code_measure(n, uniform, rng);
            const AbelianGroup &a = mu.group;
            auto fg = share(a.to_finite_group());
            AlgebraPtr alg = random_algebra(8, rng);
            const UnitaryRep u = random_abelian_rep(a, fg, alg, rng);
            const UnitaryRep v = random_abelian_rep(a, fg, alg, rng);
            const AmplificationCheck c = twisted_amplification_check(a, u, v, mu.measure, nu.measure);
            out.row = {double(i), double(n), double(alg->total_dim()), double(uniform), c.kappa_mu, c.kappa_nu, c.lhs,
                       c.direct_lhs, c.weighted, c.rhs};
            out.checks.push_back({"amplification", c.lhs, c.rhs});
            out.checks.push_back({"tensor_reduction", std::abs(c.lhs - c.direct_lhs), 1e-9 * std::max(1.0, c.lhs), true});
            if (uniform) out.checks.push_back({"uniform_equality", std::abs(c.lhs - c.rhs), 1e-10, true});
        });
}

SuiteResult suite_gh(const SuiteOptions &opt) {
    const auto groups = small_groups(opt.seed, 24);
    return run_trials(
        "gh", "169 eps (distance), 16 eps (trace excess)",
        {"trial", "group_order", "dim", "sigma", "eps", "distance", "distance_bound", "trace_excess", "trace_bound",
         "isometry_defect"},
        trials_or(opt, 200), opt, [&](int i, Rng &rng, TrialOut &out) {
            const SmallGroup &g = groups[i % groups.size()];
            AlgebraPtr alg = random_algebra(8, rng);
            const UnitaryRep rho = random_rep(g, alg, rng);
            const bool exact = i % 10 == 0;
            // a few trials replace one value by a Haar unitary instead of spreading the noise
            const bool corrupt = i % 10 == 5;
            const int bad = corrupt ? uniform_int(rng, 0, g.group->order() - 1) : -1;
            const double sigma = exact || corrupt ? 0.0 : log_uniform(rng, 6e-4, 0.45);
            std::vector<Element> values;
            for (int x = 0; x < g.group->order(); ++x) {
                Element e = rho(x);
                if (x == bad)
                    for (size_t b = 0; b < alg->num_blocks(); ++b) e.block(b) = random_unitary(alg->dim(b), rng);
                if (!exact && !corrupt)
                    for (size_t b = 0; b < alg->num_blocks(); ++b)
                        e.block(b) = exp_i_hermitian(random_hermitian(alg->dim(b), rng), sigma) * e.block(b);
                values.push_back(std::move(e));
            }
            const AlmostHom phi(g.group, std::move(values), 1e-8);
            RoundingOptions ro;
            ro.dim_cap = opt.dim_cap;
            const RoundingCertificate cert = gowers_hatami_round(phi, *g.reg, ro);
            const double eps = cert.input_defect;
            out.row = {double(i),     double(g.group->order()), double(alg->total_dim()), sigma, eps, cert.distance,
                       169 * eps, cert.trace_excess,        16 * eps,                  cert.isometry_defect};
            if (exact) {
                out.checks.push_back({"exact_distance", cert.distance, 1e-10, true});
            } else {
                out.checks.push_back({"distance", cert.distance, 169 * eps});
                out.checks.push_back({"trace_excess", cert.trace_excess, 16 * eps});
            }
        });
}

SuiteResult suite_lemma9(const SuiteOptions &opt) {
    // (A, B) with |A||B| <= 24
    const auto groups = small_groups(opt.seed, 8);
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t a = 0; a < groups.size(); ++a)
        for (size_t b = 0; b < groups.size(); ++b)
            if (groups[a].group->order() * groups[b].group->order() <= 24) pairs.emplace_back(a, b);
    return run_trials(
        "lemma9", "38^2 eps (squared form)",
        {"trial", "order_a", "order_b", "dim", "sigma", "eps", "lhs_a_squared", "lhs_b_squared", "bound",
         "residual_a", "residual_b"},
        trials_or(opt, 100), opt, [&](int i, Rng &rng, TrialOut &out) {
            const auto [ia, ib] = pairs[i % pairs.size()];
            const SmallGroup &ga = groups[ia], &gb = groups[ib];
            const Eigen::Index da = uniform_int(rng, 1, 2), db = uniform_int(rng, 1, 8 / static_cast<int>(da));
            const Eigen::Index d = da * db;
            auto alg = share(TracialAlgebra::matrix(d));
            std::vector<Matrix> ua, vb;
            random_rep_block(ga, da, rng, ua);
            random_rep_block(gb, db, rng, vb);
            const double sigma = i % 10 == 0 ? 0.0 : log_uniform(rng, 1e-3, 0.4);
            const Matrix w = exp_i_hermitian(random_hermitian(d, rng), sigma);
            const int na = ga.group->order(), nb = gb.group->order();
            std::vector<Element> values;
            for (int x = 0; x < na * nb; ++x) {
                const Matrix u = kron(ua[x / nb], Matrix::Identity(db, db));
                const Matrix v = w * kron(Matrix::Identity(da, da), vb[x % nb]) * w.adjoint();
                values.push_back(Element::single(alg, u * v));
            }
            auto prod = share(FiniteGroup::product(*ga.group, *gb.group));
            const AlmostHom phi(prod, std::move(values), 1e-8);
            RoundingOptions ro;
            ro.dim_cap = opt.dim_cap;
            const RoundingCertificate cert = gowers_hatami_round(phi, rng, ro);
            std::vector<int> sub_a, sub_b;
            for (int a = 0; a < na; ++a) sub_a.push_back(a * nb + gb.group->identity());
            for (int b = 0; b < nb; ++b) sub_b.push_back(ga.group->identity() * nb + b);
            const SubgroupCloseness ca = subgroup_closeness_check(phi, sub_a, cert, Side::Left, true, 1e-8);
            const SubgroupCloseness cb = subgroup_closeness_check(phi, sub_b, cert, Side::Right, true, 1e-8);
            const double eps = cert.input_defect, bound = 38.0 * 38.0 * eps;
            out.row = {double(i),     double(na),     double(nb), double(d), sigma, eps, ca.lhs * ca.lhs,
                       cb.lhs * cb.lhs, bound, ca.equivariance_residual, cb.equivariance_residual};
            out.checks.push_back({"subgroup_a", ca.lhs * ca.lhs, bound});
            out.checks.push_back({"subgroup_b", cb.lhs * cb.lhs, bound});
        });
}

SuiteResult suite_sqrt2(const SuiteOptions &opt) {
    const auto groups = small_groups(opt.seed, 24);
    SuiteResult r = run_trials(
        "sqrt2", "sqrt2 ||V - E_N(V)||_2",
        {"trial", "group_order", "dim", "sigma", "distance", "bound", "commutation_residual"}, trials_or(opt, 1000), opt,
        [&](int i, Rng &rng, TrialOut &out) {
            const SmallGroup &g = groups[i % groups.size()];
            AlgebraPtr alg = random_algebra(16, rng);
            const UnitaryRep u = random_rep(g, alg, rng);
            const CommutantBlocks cb = commutant_blocks(u, rng);
            // half the trials start near the commutant, half from a Haar unitary
            Element v;
            double sigma = NAN;
            if (i % 2 == 0) {
                std::vector<Matrix> bl;
                for (const auto &b : alg->blocks()) bl.push_back(random_unitary(b.dim, rng));
                v = Element(alg, std::move(bl));
            } else {
                std::vector<Matrix> bl;
                for (const auto &b : alg->blocks()) bl.push_back(random_unitary(b.dim, rng));
                const Element c = nearest_unitary_in_commutant(u, Element(alg, std::move(bl)), cb);
                sigma = log_uniform(rng, 1e-3, 1.0);
                std::vector<Matrix> pert;
                for (size_t b = 0; b < alg->num_blocks(); ++b)
                    pert.push_back(exp_i_hermitian(random_hermitian(alg->dim(b), rng), sigma) * c.block(b));
                v = Element(alg, std::move(pert));
            }
            const Element vt = nearest_unitary_in_commutant(u, v, cb);
            const double dist = (v - vt).norm2();
            const double bound = std::sqrt(2.0) * (v - conditional_expectation(u, v)).norm2();
            double comm = 0;
            for (int x = 0; x < g.group->order(); ++x) comm = std::max(comm, distance_inf(u(x) * vt, vt * u(x)));
            out.row = {double(i), double(g.group->order()), double(alg->total_dim()), sigma, dist, bound, comm};
            out.checks.push_back({"sqrt2", dist, bound});
            out.checks.push_back({"commutation", comm, 1e-8, true});
            out.checks.push_back({"unitary", is_unitary(vt, 1e-8) ? 0.0 : 1.0, 0.0, true});
        });
    // tightness: regular representation of Z/n with V diagonal, so that E_N(V) = 0
    double worst_gap = 0;
    for (int n : {2, 3, 4, 5}) {
        auto g = share(FiniteGroup::cyclic(n));
        const UnitaryRep u = UnitaryRep::left_regular(g);
        Matrix d = Matrix::Zero(n, n);
        for (int k = 0; k < n; ++k) d(k, k) = std::polar(1.0, 2 * M_PI * k / n);
        const Element v = Element::single(u.algebra(), d);
        Rng rng(derive_seed(opt.seed, 1u << 20 | n));
        const Element vt = nearest_unitary_in_commutant(u, v, rng);
        const double expect = (v - conditional_expectation(u, v)).norm2();
        const double gap = std::abs((v - vt).norm2() - std::sqrt(2.0) * expect);
        worst_gap = std::max(worst_gap, gap);
        if (conditional_expectation(u, v).norm2() > 1e-12 || gap > 1e-9) {
            ++r.violations;
            r.failures.push_back("tightness Z/" + std::to_string(n) + ": gap " + fmt_short(gap));
        }
    }
    r.stats.emplace_back("tightness_gap", worst_gap);
    return r;
}

SuiteResult suite_poincare(const SuiteOptions &opt) {
    const auto groups = small_groups(opt.seed, 24);
    return run_trials(
        "poincare", "(kappa / 2) int ||[U(g), V]||_2^2 and kappa int ||[U(g), V]||_2^2",
        {"trial", "group_order", "dim", "kappa", "lhs", "rhs_poincare", "average", "rhs_average", "vector_lhs",
         "vector_rhs"},
        trials_or(opt, 1000), opt, [&](int i, Rng &rng, TrialOut &out) {
            const SmallGroup &g = groups[i % groups.size()];
            AlgebraPtr alg = random_algebra(16, rng);
            const UnitaryRep u = random_rep(g, alg, rng);
            const ProbMeasure mu = random_generating_measure(*g.group, rng);
            const CommutatorGap c = commutator_gap_check(u, mu, random_element(alg, rng));
            const PoincareResidual p = poincare_residual(u, mu, random_vector(alg->total_dim(), rng));
            out.row = {double(i), double(g.group->order()), double(alg->total_dim()), c.kappa, c.lhs, c.rhs_poincare,
                       c.average, c.rhs_average, p.lhs, p.rhs};
            out.checks.push_back({"commutator_poincare", c.lhs, c.rhs_poincare});
            out.checks.push_back({"commutator_average", c.average, c.rhs_average});
            out.checks.push_back({"vector_poincare", p.lhs, p.rhs});
        });
}

LinearCode repetition_code() { return code_new(2, {{1, 1, 1}}); }

LinearCode hamming_code() {
    return code_new(2, {{1, 0, 0, 0, 0, 1, 1}, {0, 1, 0, 0, 1, 0, 1}, {0, 0, 1, 0, 1, 1, 0}, {0, 0, 0, 1, 1, 1, 1}});
}

SuiteResult suite_prop24(const SuiteOptions &opt) {
    SweepOptions so;
    so.points = trials_or(opt, 200);
    so.threads = opt.threads;
    so.dim_cap = opt.dim_cap;
    so.tol = opt.tol;
    SuiteResult out;
    out.name = "prop24";
    out.constant = "1320 c c' eps";
    int index = 0;
    for (auto make : {repetition_code, hamming_code}) {
        LinearCode code = make();
        const Game g = game_from_code(code, code);
        so.seed = derive_seed(opt.seed, static_cast<std::uint64_t>(index));
        SuiteResult s = run_sweep(g, so);
        const std::string tag = index == 0 ? "repetition" : "hamming";
        if (out.columns.empty()) {
            out.columns = {"game_rank"};
            out.columns.insert(out.columns.end(), s.columns.begin(), s.columns.end());
        }
        for (auto &row : s.rows) {
            row.insert(row.begin(), double(g.pauli->group.rank()));
            out.rows.push_back(std::move(row));
        }
        out.trials += s.trials;
        out.violations += s.violations;
        out.worst_ratio = std::max(out.worst_ratio, s.worst_ratio);
        for (auto &[k, v] : s.stats) out.stats.emplace_back(tag + "." + k, v);
        for (auto &f : s.failures) out.failures.push_back(tag + " " + f);
        ++index;
    }
    return out;
}

SuiteResult suite_codes(const SuiteOptions &opt) {
    SuiteResult r = run_trials(
        "codes", "((q - 1) / q) (K / d)",
        {"trial", "q", "K", "N", "d", "predicted", "kappa", "exact"}, trials_or(opt, 200), opt,
        [&](int i, Rng &rng, TrialOut &out) {
            static constexpr int qs[] = {2, 3, 4, 5};
            const int q = qs[i % 4];
            const int n = uniform_int(rng, 1, q == 5 ? 5 : 6);
            const int k = uniform_int(rng, n, 12);
            LinearCode code = random_code(q, k, n, 1, rng);
            const CodeCheck c = code_check(code);
            out.row = {double(i), double(q), double(k), double(n), double(c.distance), to_double(c.predicted), c.kappa,
                       c.exact ? 1.0 : 0.0};
            out.checks.push_back({"identity", c.match ? 0.0 : 1.0, 0.0, true});
        });
    int count = 0, mismatches = 0;
    for (LinearCode &code : systematic_binary_codes(4, 8)) {
        const CodeCheck c = code_check(code);
        ++count;
        if (!c.match || !c.exact) {
            ++mismatches;
            if (r.failures.size() < 20) r.failures.push_back("systematic code mismatch:\n" + format_code(code));
        }
    }
    r.violations += mismatches;
    r.stats.emplace_back("exhaustive_codes", count);
    r.stats.emplace_back("exhaustive_mismatches", mismatches);
    return r;
}

}  // namespace

std::string SuiteResult::csv() const {
    std::string out;
    for (size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += "\n";
    for (const auto &row : rows) {
        for (size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + fmt(row[i]);
        out += "\n";
    }
    return out;
}

std::string SuiteResult::summary() const {
    std::ostringstream ss;
    ss << name << ": " << (passed() ? "PASS" : "FAIL") << "\n"
       << "  bound: " << constant << "\n"
       << "  trials: " << trials << "\n"
       << "  violations: " << violations << "\n"
       << "  worst ratio: " << fmt_short(worst_ratio) << "\n";
    for (const auto &[k, v] : stats) ss << "  " << k << ": " << fmt_short(v) << "\n";
    for (size_t i = 0; i < failures.size() && i < 10; ++i) ss << "  ! " << failures[i] << "\n";
    return ss.str();
}

const std::vector<std::string> &suite_names() {
    static const std::vector<std::string> names = {"lemma17", "lemma19", "thm12",    "cor14",  "gh",
                                                   "lemma9",  "sqrt2",   "poincare", "prop24", "codes"};
    return names;
}

SuiteResult run_suite(const std::string &name, const SuiteOptions &opt) {
    if (name == "lemma17") return suite_lemma17(opt);
    if (name == "lemma19") return suite_lemma19(opt);
    if (name == "thm12") return suite_thm12(opt);
    if (name == "cor14") return suite_cor14(opt);
    if (name == "gh") return suite_gh(opt);
    if (name == "lemma9") return suite_lemma9(opt);
    if (name == "sqrt2") return suite_sqrt2(opt);
    if (name == "poincare") return suite_poincare(opt);
    if (name == "prop24") return suite_prop24(opt);
    if (name == "codes") return suite_codes(opt);
    fail(ErrorKind::InvalidArgument, "unknown suite '" + name + "'");
}

SuiteResult run_sweep(const Game &game, const SweepOptions &opt) {
    require(game.kind == GameKind::Combined && game.pauli, ErrorKind::InvalidArgument, "sweep needs a combined game");
    require(opt.points >= 1, ErrorKind::InvalidArgument, "sweep needs at least one point");
    require(opt.sigma_min > 0 && opt.sigma_max >= opt.sigma_min, ErrorKind::InvalidArgument,
            "sweep needs 0 < sigma_min <= sigma_max");
    const SynchronousStrategy honest = honest_strategy(game);
    const Eigen::Index dim = honest.algebra->dim(0);
    Rng setup(derive_seed(opt.seed, ~std::uint64_t{0}));
    RoundingOptions ro;
    ro.dim_cap = opt.dim_cap;
    ro.regular = std::make_shared<const RegularDecomposition>(
        regular_decomposition(weyl_heisenberg(game.pauli->group), setup));

    SuiteOptions so;
    so.seed = opt.seed;
    so.threads = opt.threads;
    so.tol = opt.tol;
    const double lmin = std::log(opt.sigma_min), lmax = std::log(opt.sigma_max);
    SuiteResult r = run_trials(
        "sweep", "1320 c c' eps",
        {"point", "sigma", "eps", "stage_sum", "rigidity_lhs", "rigidity_bound", "rigidity_weighted", "closeness_eps",
         "isometry_trace_defect", "projection_trace_defect", "strategy_distance", "bridge_distance",
         "measured_constant"},
        opt.points, so, [&](int i, Rng &rng, TrialOut &out) {
            const double t = opt.points == 1 ? 0.0 : double(i) / (opt.points - 1);
            const double sigma = std::exp(lmin + t * (lmax - lmin));
            SynchronousStrategy s = conjugate_strategy(honest, random_unitary(dim, rng));
            s = perturb_strategy(s, sigma, rng);
            const RigidityReport rep = pauli_rigidity_report(game, s, rng, ro);
            out.row = {double(i),
                       sigma,
                       rep.eps,
                       rep.stage_sum,
                       rep.rigidity_lhs,
                       rep.rigidity_bound,
                       rep.rigidity_weighted,
                       rep.closeness.epsilon(),
                       rep.closeness.isometry_trace_defect,
                       rep.closeness.projection_trace_defect,
                       rep.closeness.strategy_distance,
                       rep.bridge_distance,
                       rep.measured_constant};
            out.checks.push_back({"prop24", rep.rigidity_lhs, rep.rigidity_bound});
            out.checks.push_back({"stage_identity", std::abs(rep.stage_sum - 3 * rep.eps), 1e-9, true});
        });
    std::vector<double> eps, close;
    double worst_constant = 0;
    for (const auto &row : r.rows) {
        eps.push_back(row[2]);
        close.push_back(row[7]);
        worst_constant = std::max(worst_constant, row[12]);
    }
    const double slope = loglog_slope(eps, close);
    r.stats.emplace_back("loglog_slope", slope);
    r.stats.emplace_back("max_measured_constant", worst_constant);
    if (game.pauli->c && game.pauli->c_prime) {
        r.stats.emplace_back("c", to_double(*game.pauli->c));
        r.stats.emplace_back("c_prime", to_double(*game.pauli->c_prime));
    }
    if (opt.points >= 3 && !(std::abs(slope - 1.0) <= 0.2)) {
        ++r.violations;
        r.failures.push_back("log-log slope " + fmt_short(slope) + " outside 1 +- 0.2");
    }
    return r;
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (!(x[i] > 0 && y[i] > 0)) continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    const double den = n * sxx - sx * sx;
    return n >= 2 && den > 0 ? (n * sxy - sx * sy) / den : NAN;
}

CodeCheck code_check(LinearCode &code, double tol) {
    CodeMeasure cm = measure_from_code(code);
    const GapReport gap = kappa_abelian(cm.group, cm.measure);
    CodeCheck c{code.q(), code.length(), code.dimension(), cm.distance, cm.predicted_kappa, gap.exact_kappa,
                gap.kappa, false};
    if (c.exact)
        c.match = *c.exact == c.predicted;
    else
        c.match = std::abs(c.kappa - to_double(c.predicted)) <= tol * std::max(1.0, c.kappa);
    return c;
}

std::vector<LinearCode> systematic_binary_codes(int max_n, int max_k) {
    std::vector<LinearCode> out;
    for (int n = 1; n <= max_n; ++n)
        for (int k = n; k <= max_k; ++k) {
            const int r = k - n;
            const std::uint64_t count = std::uint64_t{1} << (n * r);
            for (std::uint64_t bits = 0; bits < count; ++bits) {
                SymbolMatrix g(n, std::vector<int>(k, 0));
                for (int i = 0; i < n; ++i) {
                    g[i][i] = 1;
                    for (int j = 0; j < r; ++j) g[i][n + j] = static_cast<int>((bits >> (i * r + j)) & 1);
                }
                out.push_back(code_new(2, std::move(g)));
            }
        }
    return out;
}

void parallel_for(int n, unsigned threads, const std::function<void(int)> &f) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(n, 1)));
    std::vector<std::exception_ptr> errors(n);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto &t : pool) t.join();
    }
    for (auto &e : errors)
        if (e) std::rethrow_exception(e);
}

SynchronousStrategy tensor_identity(const SynchronousStrategy &s, Eigen::Index k) {
    require(s.algebra->num_blocks() == 1, ErrorKind::InvalidArgument, "tensor_identity needs a single-block algebra");
    require(k >= 1, ErrorKind::InvalidArgument, "k must be positive");
    SynchronousStrategy out;
    out.algebra = share(TracialAlgebra::matrix(s.algebra->dim(0) * k));
    const Matrix id = Matrix::Identity(k, k);
    for (const auto &p : s.pvms) {
        std::vector<Element> proj;
        for (const auto &e : p.projections()) proj.push_back(Element::single(out.algebra, kron(e.block(0), id)));
        out.pvms.emplace_back(std::move(proj), Pvm::Unchecked{});
    }
    return out;
}

SynchronousStrategy conjugate_strategy(const SynchronousStrategy &s, const Matrix &u) {
    require(s.algebra->num_blocks() == 1 && u.rows() == s.algebra->dim(0), ErrorKind::InvalidArgument,
            "conjugation needs a single-block algebra of matching size");
    SynchronousStrategy out;
    out.algebra = s.algebra;
    for (const auto &p : s.pvms) {
        std::vector<Element> proj;
        for (const auto &e : p.projections()) proj.push_back(Element::single(s.algebra, u * e.block(0) * u.adjoint()));
        out.pvms.emplace_back(std::move(proj), Pvm::Unchecked{});
    }
    return out;
}

}  // namespace gapstab
