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

#include "stability.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace gapstab {

namespace {

double blockwise_norm2_squared(const TracialAlgebra &alg, const std::vector<Matrix> &blocks) {
    double t = 0;
    for (size_t i = 0; i < blocks.size(); ++i) t += alg.coeff(i) * blocks[i].squaredNorm();
    return t;
}

// Fills distance, trace_excess, projection_gap and isometry_defect from pi and w.
void finish_certificate(RoundingCertificate &cert, const AlmostHom &phi) {
    const auto &g = phi.g();
    double dist = 0;
    for (int x = 0; x < g.order(); ++x) dist += (phi(x) - cert.compress(cert.pi(x))).norm2_squared();
    cert.distance = dist / g.order();
    cert.trace_excess = cert.corner->unit_trace() - cert.base->unit_trace();

    std::vector<Matrix> gap, iso(cert.base->num_blocks());
    for (size_t i = 0; i < iso.size(); ++i) iso[i] = Matrix::Identity(cert.base->dim(i), cert.base->dim(i));
    for (size_t c = 0; c < cert.w.size(); ++c) {
        const Matrix &w = cert.w[c];
        gap.push_back(Matrix::Identity(w.rows(), w.rows()) - w * w.adjoint());
        iso[cert.owner[c]] -= w.adjoint() * w;
    }
    cert.projection_gap = blockwise_norm2_squared(*cert.corner, gap);
    cert.isometry_defect = blockwise_norm2_squared(*cert.base, iso);
}

}  // namespace

RegularDecomposition regular_decomposition(const FiniteGroup &group, Rng &rng) {
    const int n = group.order();
    std::normal_distribution<double> normal;
    auto sample = [&]() {
        Vector c(n);
        for (int g = 0; g < n; ++g) c(g) = Complex(normal(rng), normal(rng));
        Matrix y(n, n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) y(u, v) = c(group.mul(u, group.inv(v)));
        return y;
    };
    RegularDecomposition out;
    out.dec = decompose_algebra(n, sample, rng);
    for (const auto &p : out.dec.parts) {
        Matrix w0(n, p.m);
        for (Eigen::Index s = 0; s < p.m; ++s) w0.col(s) = out.dec.basis.col(p.offset + s * p.copies);
        std::vector<Matrix> rep;
        Matrix wg(n, p.m);
        for (int g = 0; g < n; ++g) {
            for (int h = 0; h < n; ++h) wg.row(h) = w0.row(group.mul(g, h));
            rep.push_back(wg.adjoint() * w0);
        }
        out.irreps.push_back(std::move(rep));
    }
    return out;
}

Element RoundingCertificate::compress(const Element &y) const {
    std::vector<Matrix> out;
    for (size_t i = 0; i < base->num_blocks(); ++i) out.push_back(Matrix::Zero(base->dim(i), base->dim(i)));
    for (size_t c = 0; c < w.size(); ++c) out[owner[c]] += w[c].adjoint() * y.block(c) * w[c];
    return Element(base, std::move(out));
}

Element RoundingCertificate::dilate_unitary(const Element &x) const {
    std::vector<Matrix> out;
    for (size_t c = 0; c < w.size(); ++c) {
        const Matrix &wc = w[c];
        out.push_back(wc * x.block(owner[c]) * wc.adjoint() + Matrix::Identity(wc.rows(), wc.rows()) -
                      wc * wc.adjoint());
    }
    return Element(corner, std::move(out));
}

RoundingCertificate gowers_hatami_round(const AlmostHom &phi, Rng &rng, const RoundingOptions &opt) {
    const auto &g = phi.g();
    require(g.order() <= opt.dim_cap, ErrorKind::Resource,
            "|G| = " + std::to_string(g.order()) + " exceeds the cap " + std::to_string(opt.dim_cap));
    if (opt.regular && opt.regular->dec.basis.rows() == g.order()) return gowers_hatami_round(phi, *opt.regular, opt);
    return gowers_hatami_round(phi, regular_decomposition(g, rng), opt);
}

FiniteGroup weyl_heisenberg(const AbelianGroup &group) {
    require(group.exponent_two(), ErrorKind::InvalidArgument, "Weyl-Heisenberg group needs exponent 2");
    const FiniteGroup h = group.to_finite_group();
    return FiniteGroup::central_extension(h, h, [&group](int a, int chi) { return group.pairing(chi, a).real() > 0 ? 1 : -1; });
}

RoundingCertificate gowers_hatami_round(const AlmostHom &phi, const RegularDecomposition &reg,
                                        const RoundingOptions &opt) {
    const auto &group = phi.g();
    const int order = group.order();
    const auto &base = phi.algebra();
    require(reg.dec.basis.rows() == order, ErrorKind::InvalidArgument, "regular decomposition belongs to another group");
    const Eigen::Index k = order + 1;
    Eigen::Index widest = order;
    for (const auto &p : reg.dec.parts)
        for (const auto &b : base->blocks()) widest = std::max(widest, p.copies * b.dim);
    require(widest <= opt.dim_cap, ErrorKind::Resource,
            "rounding needs a " + std::to_string(widest) + "-dimensional matrix, above the cap " +
                std::to_string(opt.dim_cap));
    if (opt.materialize)
        for (const auto &b : base->blocks())
            require(k * b.dim <= opt.dim_cap, ErrorKind::Resource,
                    "materialized embedding needs (|G| + 1) * dim = " + std::to_string(k * b.dim) +
                        " above the cap " + std::to_string(opt.dim_cap));

    const Matrix wconj = reg.dec.basis.conjugate();
    const double scale = 1.0 / std::sqrt(static_cast<double>(order));
    const auto &parts = reg.dec.parts;

    RoundingCertificate cert;
    cert.base = base;
    cert.amplification = k;
    cert.input_defect = opt.known_defect ? *opt.known_defect : defect(phi);

    std::vector<Block> corner_blocks, x_blocks;
    std::vector<std::vector<Eigen::Index>> ranks(base->num_blocks());
    std::vector<Eigen::Index> extra(base->num_blocks());
    std::vector<Matrix> xs;

    for (size_t i = 0; i < base->num_blocks(); ++i) {
        const Eigen::Index n = base->dim(i);
        Matrix f(n * n, order);
        for (int h = 0; h < order; ++h) {
            const Matrix &m = phi(group.inv(h)).block(i);
            f.col(h) = Eigen::Map<const Vector>(m.data(), n * n);
        }
        // column c holds vec of the W-coordinate c of V
        const Matrix coef = f * wconj * scale;
        auto ymat = [&](Eigen::Index c) { return Eigen::Map<const Matrix>(coef.col(c).data(), n, n); };

        std::vector<Matrix> rows;
        Eigen::Index d_total = 0;
        for (const auto &p : parts) {
            const Eigen::Index m = p.m, d = p.copies;
            std::vector<Matrix> ys;
            Matrix a = Matrix::Zero(d * n, d * n);
            for (Eigen::Index s = 0; s < m; ++s) {
                Matrix y(d * n, n);
                for (Eigen::Index t = 0; t < d; ++t) y.middleRows(t * n, n) = ymat(p.offset + s * d + t);
                a += y * y.adjoint();
                ys.push_back(std::move(y));
            }
            a /= static_cast<double>(m);
            Eigen::SelfAdjointEigenSolver<Matrix> es(a);
            const RealVector &ev = es.eigenvalues();
            std::vector<Eigen::Index> keep;
            for (Eigen::Index e = 0; e < ev.size(); ++e) {
                if (std::abs(ev(e) - 0.5) <= opt.tie_tol) ++cert.threshold_ties;
                if (ev(e) >= 0.5 - opt.tie_tol) keep.push_back(e);
            }
            const auto r = static_cast<Eigen::Index>(keep.size());
            Matrix e(d * n, r);
            for (Eigen::Index c = 0; c < r; ++c) e.col(c) = es.eigenvectors().col(keep[c]);
            for (Eigen::Index s = 0; s < m; ++s) rows.push_back(e.adjoint() * ys[s]);
            ranks[i].push_back(r);
            d_total += m * r;

            if (opt.materialize) {
                if (cert.embedding.size() <= i) cert.embedding.push_back(Matrix::Zero(k * n, 0));
                Matrix &b = cert.embedding[i];
                const Eigen::Index first = b.cols();
                b.conservativeResize(Eigen::NoChange, first + m * r);
                b.rightCols(m * r).setZero();
                for (Eigen::Index s = 0; s < m; ++s)
                    for (Eigen::Index c = 0; c < r; ++c) {
                        auto col = b.col(first + s * r + c);
                        for (Eigen::Index t = 0; t < d; ++t)
                            for (int x = 0; x < order; ++x)
                                col.segment((1 + x) * n, n) +=
                                    reg.dec.basis(x, p.offset + s * d + t) * e.col(c).segment(t * n, n);
                    }
            }
        }

        Matrix x(d_total, n);
        Eigen::Index row = 0;
        for (const auto &r : rows) {
            x.middleRows(row, r.rows()) = r;
            row += r.rows();
        }

        Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeFullV);
        const auto &sv = svd.singularValues();
        Eigen::Index rank = 0;
        while (rank < sv.size() && sv(rank) >= 1e-12) ++rank;
        const Eigen::Index r0 = n - rank;
        Matrix w(d_total + r0, n);
        w.topRows(d_total) = svd.matrixU().leftCols(rank) * svd.matrixV().leftCols(rank).adjoint();
        w.bottomRows(r0) = svd.matrixV().rightCols(r0).adjoint();
        extra[i] = r0;

        if (opt.materialize) {
            Matrix &b = cert.embedding[i];
            b.conservativeResize(Eigen::NoChange, d_total + r0);
            b.rightCols(r0).setZero();
            for (Eigen::Index e = 0; e < r0; ++e) b(e, d_total + e) = 1;
        }

        require(d_total + r0 <= opt.dim_cap, ErrorKind::Resource,
                "corner dimension " + std::to_string(d_total + r0) + " exceeds the cap " + std::to_string(opt.dim_cap));
        corner_blocks.push_back({d_total + r0, base->coeff(i)});
        x_blocks.push_back({std::max<Eigen::Index>(d_total, 1), base->coeff(i)});
        cert.owner.push_back(i);
        cert.w.push_back(std::move(w));
        xs.push_back(std::move(x));
    }

    cert.corner = share(TracialAlgebra(corner_blocks));
    std::vector<Element> values;
    for (int g = 0; g < order; ++g) {
        std::vector<Matrix> blocks;
        for (size_t i = 0; i < base->num_blocks(); ++i) {
            Matrix p = Matrix::Zero(corner_blocks[i].dim, corner_blocks[i].dim);
            Eigen::Index off = 0;
            for (size_t j = 0; j < parts.size(); ++j) {
                const Eigen::Index r = ranks[i][j], m = parts[j].m;
                if (r > 0) p.block(off, off, m * r, m * r) = kron(reg.irreps[j][g], Matrix::Identity(r, r));
                off += m * r;
            }
            p.bottomRightCorner(extra[i], extra[i]).setIdentity();
            blocks.push_back(std::move(p));
        }
        values.emplace_back(cert.corner, std::move(blocks));
    }
    cert.pi = UnitaryRep(phi.group(), std::move(values), UnitaryRep::Unchecked{});
    finish_certificate(cert, phi);

    // contraction stage
    double dist_x = 0;
    for (int g = 0; g < order; ++g) {
        std::vector<Matrix> diff;
        for (size_t i = 0; i < xs.size(); ++i) {
            const Eigen::Index dd = xs[i].rows();
            diff.push_back(phi(g).block(i) - xs[i].adjoint() * cert.pi(g).block(i).topLeftCorner(dd, dd) * xs[i]);
        }
        dist_x += blockwise_norm2_squared(*base, diff);
    }
    cert.distance_x = dist_x / order;
    std::vector<Matrix> iso, proj;
    for (const auto &x : xs) {
        iso.push_back(Matrix::Identity(x.cols(), x.cols()) - x.adjoint() * x);
        proj.push_back(Matrix::Identity(x.rows(), x.rows()) - x * x.adjoint());
    }
    cert.x_isometry_defect = std::sqrt(blockwise_norm2_squared(*base, iso));
    cert.x_projection_defect = std::sqrt(blockwise_norm2_squared(TracialAlgebra(x_blocks), proj));
    return cert;
}

double closeness_on(const AlmostHom &phi, const RoundingCertificate &cert, const std::vector<int> &elements) {
    require(!elements.empty(), ErrorKind::InvalidArgument, "closeness needs at least one element");
    double total = 0;
    for (int g : elements) total += (phi(g) - cert.compress(cert.pi(g))).norm2_squared();
    return total / static_cast<double>(elements.size());
}

SubgroupCloseness subgroup_closeness_check(const AlmostHom &phi, const std::vector<int> &subgroup,
                                           const RoundingCertificate &cert, Side side, bool strict, double tol) {
    const auto &g = phi.g();
    require(!subgroup.empty() && g.is_subgroup(subgroup), ErrorKind::InvalidArgument, "H is not a subgroup");
    SubgroupCloseness out{};
    for (int h : subgroup)
        for (int x = 0; x < g.order(); ++x) {
            const double r = side == Side::Left ? (phi(g.mul(h, x)) - phi(h) * phi(x)).norm2()
                                                : (phi(g.mul(x, h)) - phi(x) * phi(h)).norm2();
            out.equivariance_residual = std::max(out.equivariance_residual, r);
        }
    if (strict && out.equivariance_residual > tol)
        fail(ErrorKind::PreconditionViolation,
             "equivariance residual " + std::to_string(out.equivariance_residual) + " exceeds tolerance");
    out.lhs = std::sqrt(closeness_on(phi, cert, subgroup));
    out.bound = 38.0 * std::sqrt(cert.input_defect);
    return out;
}

namespace {

void require_same_algebra(const AlmostHom &u, const AlmostHom &v) {
    require(*u.algebra() == *v.algebra(), ErrorKind::InvalidArgument, "U and V must act on the same algebra");
}

void fill_pair_distances(PairRounding &out, const UnitaryRep &u, const UnitaryRep &v) {
    double du = 0, dv = 0;
    for (int a = 0; a < u.g().order(); ++a) du += (u(a) - out.cert.compress(out.u_tilde[a])).norm2_squared();
    for (int b = 0; b < v.g().order(); ++b) dv += (v(b) - out.cert.compress(out.v_tilde[b])).norm2_squared();
    out.distance_u = du / u.g().order();
    out.distance_v = dv / v.g().order();
    out.trace_excess = out.cert.trace_excess;
    out.isometry_defect = out.cert.isometry_defect;
}

}  // namespace

PairRounding round_commuting_pair(const UnitaryRep &u, const UnitaryRep &v, Rng &rng, const RoundingOptions &opt) {
    require_same_algebra(u, v);
    const auto &ga = u.g(), &gb = v.g();
    const int na = ga.order(), nb = gb.order();
    auto prod = share(FiniteGroup::product(ga, gb));
    std::vector<Element> values;
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) values.push_back(u(a) * v(b));
    AlmostHom phi(prod, std::move(values), AlmostHom::Unchecked{});

    PairRounding out;
    double eps = 0;
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) eps += commutator_norm2_squared(u(a), v(b));
    out.eps = eps / (static_cast<double>(na) * nb);
    RoundingOptions o = opt;
    o.known_defect = out.eps;
    out.cert = gowers_hatami_round(phi, rng, o);
    out.constant = 1444;
    for (int a = 0; a < na; ++a) out.u_tilde.push_back(out.cert.pi(a * nb + gb.identity()));
    for (int b = 0; b < nb; ++b) out.v_tilde.push_back(out.cert.pi(ga.identity() * nb + b));
    for (const auto &x : out.u_tilde)
        for (const auto &y : out.v_tilde) out.relation_residual = std::max(out.relation_residual, distance_inf(x * y, y * x));
    fill_pair_distances(out, u, v);
    return out;
}

bool is_bicharacter(const FiniteGroup &a, const FiniteGroup &b, const Bicharacter &gamma) {
    const int na = a.order(), nb = b.order();
    std::vector<std::vector<int>> t(na, std::vector<int>(nb));
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < nb; ++y) {
            t[x][y] = gamma(x, y);
            if (t[x][y] != 1 && t[x][y] != -1) return false;
        }
    for (int x1 = 0; x1 < na; ++x1)
        for (int x2 = 0; x2 < na; ++x2)
            for (int y = 0; y < nb; ++y)
                if (t[a.mul(x1, x2)][y] != t[x1][y] * t[x2][y]) return false;
    for (int x = 0; x < na; ++x)
        for (int y1 = 0; y1 < nb; ++y1)
            for (int y2 = 0; y2 < nb; ++y2)
                if (t[x][b.mul(y1, y2)] != t[x][y1] * t[x][y2]) return false;
    return true;
}

PairRounding round_twisted_pair(const UnitaryRep &u, const UnitaryRep &v, const Bicharacter &gamma, Rng &rng,
                                const RoundingOptions &opt) {
    require_same_algebra(u, v);
    const auto &ga = u.g(), &gb = v.g();
    require(is_bicharacter(ga, gb, gamma), ErrorKind::InvalidArgument, "gamma is not a +-1 valued bicharacter");
    const int na = ga.order(), nb = gb.order();
    auto ext = share(FiniteGroup::central_extension(ga, gb, gamma));
    std::vector<Element> values;
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) {
            Element x = u(a) * v(b);
            values.push_back(x);
            values.push_back(x * Complex(-1));
        }
    AlmostHom phi(ext, std::move(values), AlmostHom::Unchecked{});
    double eps = 0;
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b)
            eps += (u(a) * v(b) - v(b) * u(a) * Complex(gamma(a, b))).norm2_squared();
    RoundingOptions o = opt;
    o.known_defect = eps / (static_cast<double>(na) * nb);
    RoundingCertificate full = gowers_hatami_round(phi, rng, o);

    const int central = (ga.identity() * nb + gb.identity()) * 2 + 1;
    std::vector<Matrix> ranges;
    std::vector<Block> blocks;
    for (size_t c = 0; c < full.w.size(); ++c) {
        const Matrix &z = full.pi(central).block(c);
        Matrix q = (Matrix::Identity(z.rows(), z.cols()) - z) * 0.5;
        Matrix r = projection_range(Matrix((q + q.adjoint()) * 0.5));
        require(r.cols() > 0, ErrorKind::Degenerate, "central element acts trivially on a corner block");
        blocks.push_back({r.cols(), full.corner->coeff(c)});
        ranges.push_back(std::move(r));
    }

    PairRounding out;
    RoundingCertificate &cert = out.cert;
    cert = full;
    cert.corner = share(TracialAlgebra(blocks));
    std::vector<Element> pv;
    for (int g = 0; g < ext->order(); ++g) {
        std::vector<Matrix> bl;
        for (size_t c = 0; c < ranges.size(); ++c) bl.push_back(ranges[c].adjoint() * full.pi(g).block(c) * ranges[c]);
        pv.emplace_back(cert.corner, std::move(bl));
    }
    cert.pi = UnitaryRep(ext, std::move(pv), UnitaryRep::Unchecked{});
    for (size_t c = 0; c < ranges.size(); ++c) {
        cert.w[c] = polar_decomposition(ranges[c].adjoint() * full.w[c]).w;
        if (!cert.embedding.empty()) cert.embedding[c] = full.embedding[c] * ranges[c];
    }
    finish_certificate(cert, phi);

    out.constant = 30000;
    out.eps = *o.known_defect;
    for (int a = 0; a < na; ++a) out.u_tilde.push_back(cert.pi((a * nb + gb.identity()) * 2));
    for (int b = 0; b < nb; ++b) out.v_tilde.push_back(cert.pi((ga.identity() * nb + b) * 2));
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b)
            out.relation_residual =
                std::max(out.relation_residual, distance_inf(out.u_tilde[a] * out.v_tilde[b],
                                                             out.v_tilde[b] * out.u_tilde[a] * Complex(gamma(a, b))));
    fill_pair_distances(out, u, v);
    return out;
}

AmplificationCheck commutator_amplification_check(const UnitaryRep &u, const UnitaryRep &v, const ProbMeasure &mu,
                                                  const ProbMeasure &nu) {
    require(mu.generates(u.g()) && nu.generates(v.g()), ErrorKind::NonGenerating,
            "measure supports must generate their groups");
    return commutator_amplification_check(u, v, mu, nu, kappa_general(u.g(), mu).kappa,
                                          kappa_general(v.g(), nu).kappa);
}

AmplificationCheck commutator_amplification_check(const UnitaryRep &u, const UnitaryRep &v, const ProbMeasure &mu,
                                                  const ProbMeasure &nu, double kappa_mu, double kappa_nu) {
    require_same_algebra(u, v);
    require(mu.group_order() == u.g().order() && nu.group_order() == v.g().order(), ErrorKind::InvalidArgument,
            "measures and groups disagree on order");
    require(mu.generates(u.g()) && nu.generates(v.g()), ErrorKind::NonGenerating,
            "measure supports must generate their groups");
    const int na = u.g().order(), nb = v.g().order();
    AmplificationCheck out{};
    out.kappa_mu = kappa_mu;
    out.kappa_nu = kappa_nu;
    double total = 0;
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) total += commutator_norm2_squared(u(a), v(b));
    out.lhs = total / (static_cast<double>(na) * nb);
    const auto sa = mu.support(), sb = nu.support();
    for (int a : sa)
        for (int b : sb) out.weighted += mu.weight_double(a) * nu.weight_double(b) * commutator_norm2_squared(u(a), v(b));
    out.rhs = kappa_mu * kappa_nu * out.weighted;
    return out;
}

namespace {

// ||a x b - c x d||_2^2 in M tensor M_n with the normalized trace on M_n.
double kron_difference_norm2_squared(const Element &a, const Matrix &b, const Element &c, const Matrix &d) {
    const double n = static_cast<double>(b.rows());
    const double bb = b.squaredNorm() / n, dd = d.squaredNorm() / n;
    const Complex bd = hs_inner(b, d) / n;
    return a.norm2_squared() * bb + c.norm2_squared() * dd - 2.0 * (inner(a, c) * bd).real();
}

}  // namespace

AmplificationCheck twisted_amplification_check(const AbelianGroup &group, const UnitaryRep &u, const UnitaryRep &v,
                                               const ProbMeasure &mu, const ProbMeasure &nu) {
    const int n = group.order();
    require(u.g().order() == n && v.g().order() == n, ErrorKind::InvalidArgument,
            "U and V must be indexed by the group and its dual");
    require_same_algebra(u, v);
    require(mu.group_order() == n && nu.group_order() == n, ErrorKind::InvalidArgument,
            "measures and groups disagree on order");
    const FiniteGroup fg = group.to_finite_group();
    require(mu.generates(fg) && nu.generates(fg), ErrorKind::NonGenerating, "measure supports must generate the group");

    std::vector<Matrix> lam, mod;
    for (int a = 0; a < n; ++a) lam.push_back(left_regular_matrix(fg, a));
    for (int chi = 0; chi < n; ++chi) {
        Matrix m = Matrix::Zero(n, n);
        for (int b = 0; b < n; ++b) m(b, b) = group.pairing(chi, b);
        mod.push_back(std::move(m));
    }
    // [U(a) x lambda(a), V(chi) x M(chi)] without forming the tensor products
    auto tensor_commutator = [&](int a, int chi) {
        return kron_difference_norm2_squared(u(a) * v(chi), lam[a] * mod[chi], v(chi) * u(a), mod[chi] * lam[a]);
    };

    AmplificationCheck out{};
    out.kappa_mu = kappa_abelian(group, mu).kappa;
    out.kappa_nu = kappa_abelian(group, nu).kappa;
    double total = 0, direct = 0;
    for (int a = 0; a < n; ++a)
        for (int chi = 0; chi < n; ++chi) {
            total += tensor_commutator(a, chi);
            direct += (u(a) * v(chi) - v(chi) * u(a) * group.pairing(chi, a)).norm2_squared();
        }
    out.lhs = total / (static_cast<double>(n) * n);
    out.direct_lhs = direct / (static_cast<double>(n) * n);
    for (int a : mu.support())
        for (int chi : nu.support()) out.weighted += mu.weight_double(a) * nu.weight_double(chi) * tensor_commutator(a, chi);
    out.rhs = out.kappa_mu * out.kappa_nu * out.weighted;
    return out;
}

PauliRounding round_pauli_pair(const AbelianGroup &group, const UnitaryRep &u, const UnitaryRep &v,
                               const ProbMeasure &mu, const ProbMeasure &nu, Rng &rng, const RoundingOptions &opt) {
    require(group.exponent_two(), ErrorKind::InvalidArgument, "Pauli rounding needs a group of exponent 2");
    PauliRounding out;
    out.amplification = twisted_amplification_check(group, u, v, mu, nu);
    auto gamma = [&group](int a, int chi) { return group.pairing(chi, a).real() > 0 ? 1 : -1; };
    out.pair = round_twisted_pair(u, v, gamma, rng, opt);
    out.composed_constant = 30000.0 * out.amplification.kappa_mu * out.amplification.kappa_nu;
    return out;
}

ProbMeasure product_measure(const FiniteGroup &g1, const ProbMeasure &mu1, const FiniteGroup &g2,
                            const ProbMeasure &mu2) {
    const int n1 = g1.order(), n2 = g2.order();
    require(mu1.group_order() == n1 && mu2.group_order() == n2, ErrorKind::InvalidArgument,
            "measures and groups disagree on order");
    std::vector<Rational> w(static_cast<size_t>(n1) * n2, Rational(0));
    const Rational half(1, 2);
    for (int x = 0; x < n1; ++x) w[x * n2 + g2.identity()] += half * mu1.weight(x);
    for (int y = 0; y < n2; ++y) w[g1.identity() * n2 + y] += half * mu2.weight(y);
    return ProbMeasure(n1 * n2, std::move(w));
}

namespace {

double cross_defect(const AlmostHom &phi, const std::vector<std::pair<int, double>> &left,
                    const std::vector<std::pair<int, double>> &right) {
    const auto &g = phi.g();
    double t = 0;
    for (auto [x, wx] : left)
        for (auto [y, wy] : right) t += wx * wy * (phi(g.mul(x, y)) - phi(x) * phi(y)).norm2_squared();
    return t;
}

}  // namespace

ProductStabilization stabilize_product(const AlmostHom &phi, const FiniteGroup &g1, const ProbMeasure &mu1,
                                       const FiniteGroup &g2, const ProbMeasure &mu2, Rng &rng,
                                       const RoundingOptions &options) {
    RoundingOptions opt = options;
    opt.regular.reset();
    opt.known_defect.reset();
    const int n1 = g1.order(), n2 = g2.order();
    require(phi.g().order() == n1 * n2, ErrorKind::InvalidArgument, "phi must be defined on G1 x G2");
    const int e1 = g1.identity(), e2 = g2.identity();
    auto embed1 = [&](int x) { return x * n2 + e2; };
    auto embed2 = [&](int y) { return e1 * n2 + y; };

    ProductStabilization out;
    const ProbMeasure mu = product_measure(g1, mu1, g2, mu2);
    out.eps = defect(phi, mu);
    std::vector<std::pair<int, double>> s1, s2;
    for (int x : mu1.support()) s1.emplace_back(embed1(x), mu1.weight_double(x));
    for (int y : mu2.support()) s2.emplace_back(embed2(y), mu2.weight_double(y));
    out.eps11 = cross_defect(phi, s1, s1);
    out.eps22 = cross_defect(phi, s2, s2);
    out.eps12 = cross_defect(phi, s1, s2);
    out.eps21 = cross_defect(phi, s2, s1);
    out.kappa_mu1 = kappa_general(g1, mu1).kappa;

    // (i) round the restriction to G1
    auto gp1 = share(g1);
    auto gp2 = share(g2);
    std::vector<Element> first;
    for (int x = 0; x < n1; ++x) first.push_back(phi(embed1(x)));
    AlmostHom phi1(gp1, std::move(first), AlmostHom::Unchecked{});
    RoundingCertificate c1 = gowers_hatami_round(phi1, rng, opt);
    out.first_defect = c1.input_defect;
    out.first_distance = c1.distance;
    out.eta_comparison = 12.0 * out.kappa_mu1 * std::min(4.0, 169.0 * out.first_defect);

    // (ii) commutant of the rounded G1 action, (iii) nearest unitaries there
    const CommutantBlocks nb = commutant_blocks(c1.pi, rng);
    auto nalg = share(nb.as_algebra(*c1.corner));
    std::vector<Element> second;
    for (int y = 0; y < n2; ++y) {
        const Element psi = c1.dilate_unitary(phi(embed2(y)));
        const double wy = mu2.weight_double(y);
        if (wy > 0) out.eta_l2_squared += wy * (psi - conditional_expectation(c1.pi, psi)).norm2_squared();
        const Element vy = nearest_unitary_in_commutant(c1.pi, psi, nb);
        if (wy > 0) out.v_distance += wy * (psi - vy).norm2_squared();
        std::vector<Matrix> bl;
        for (size_t i = 0; i < nb.per_block.size(); ++i)
            for (auto &m : nb.per_block[i].extract(vy.block(i))) bl.push_back(std::move(m));
        second.emplace_back(nalg, std::move(bl));
    }
    AlmostHom phi2(gp2, std::move(second), AlmostHom::Unchecked{});
    out.second_defect = defect(phi2);

    // (iv) round inside N
    RoundingCertificate c2 = gowers_hatami_round(phi2, rng, opt);

    // (v) assemble pi(x, y) = pi2(y) tensor sigma(x)
    struct PartRef {
        size_t block;  // corner block of c1
        Decomposition::Part part;
    };
    std::vector<PartRef> refs;
    for (size_t i = 0; i < nb.per_block.size(); ++i)
        for (const auto &p : nb.per_block[i].parts) refs.push_back({i, p});

    std::vector<std::vector<Matrix>> sigma(refs.size());
    for (int x = 0; x < n1; ++x)
        for (size_t j = 0; j < refs.size(); ++j) {
            const auto &[i, p] = refs[j];
            const Matrix cols = nb.per_block[i].basis.middleCols(p.offset, p.copies);
            sigma[j].push_back(cols.adjoint() * c1.pi(x).block(i) * cols);
        }

    RoundingCertificate &cert = out.cert;
    cert.base = phi.algebra();
    cert.amplification = c1.amplification * c2.amplification;
    cert.input_defect = out.eps;
    cert.threshold_ties = c1.threshold_ties + c2.threshold_ties;
    std::vector<Block> blocks;
    for (size_t c = 0; c < c2.w.size(); ++c) {
        const auto &[i, p] = refs[c2.owner[c]];
        blocks.push_back({c2.corner->dim(c) * p.copies, c1.corner->coeff(i)});
        cert.owner.push_back(c1.owner[i]);
        const Matrix z = (nb.per_block[i].basis.adjoint() * c1.w[i]).middleRows(p.offset, p.m * p.copies);
        cert.w.push_back(kron(c2.w[c], Matrix::Identity(p.copies, p.copies)) * z);
    }
    cert.corner = share(TracialAlgebra(blocks));
    std::vector<Element> values;
    for (int x = 0; x < n1; ++x)
        for (int y = 0; y < n2; ++y) {
            std::vector<Matrix> bl;
            for (size_t c = 0; c < c2.w.size(); ++c) bl.push_back(kron(c2.pi(y).block(c), sigma[c2.owner[c]][x]));
            values.emplace_back(cert.corner, std::move(bl));
        }
    cert.pi = UnitaryRep(phi.group(), std::move(values), UnitaryRep::Unchecked{});
    finish_certificate(cert, phi);

    for (int g : mu.support())
        out.final_distance += mu.weight_double(g) * (phi(g) - cert.compress(cert.pi(g))).norm2_squared();
    for (auto [g, w] : s1) out.distance_g1 += w * (phi(g) - cert.compress(cert.pi(g))).norm2_squared();
    for (auto [g, w] : s2) out.distance_g2 += w * (phi(g) - cert.compress(cert.pi(g))).norm2_squared();
    out.empirical_constant = out.eps > 0 ? out.final_distance / out.eps : 0;
    return out;
}

}  // namespace gapstab
