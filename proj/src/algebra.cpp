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

#include "algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"
#include "spectral.hpp"

namespace gapstab {

TracialAlgebra::TracialAlgebra(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    require(!blocks_.empty(), ErrorKind::InvalidArgument, "algebra needs at least one block");
    for (const auto &b : blocks_) {
        require(b.dim >= 1, ErrorKind::InvalidArgument, "block dimension must be >= 1");
        require(b.coeff > 0 && std::isfinite(b.coeff), ErrorKind::InvalidArgument, "block weight must be positive");
    }
}

TracialAlgebra TracialAlgebra::matrix(Eigen::Index n) {
    require(n >= 1, ErrorKind::InvalidArgument, "matrix size must be >= 1");
    return TracialAlgebra({Block{n, 1.0 / static_cast<double>(n)}});
}

TracialAlgebra TracialAlgebra::direct_sum(const std::vector<Eigen::Index> &dims, const std::vector<double> &weights) {
    require(dims.size() == weights.size() && !dims.empty(), ErrorKind::InvalidArgument,
            "direct sum needs one weight per block");
    double total = 0;
    std::vector<Block> blocks;
    for (size_t i = 0; i < dims.size(); ++i) {
        require(dims[i] >= 1 && weights[i] > 0, ErrorKind::InvalidArgument, "block sizes and weights must be positive");
        total += weights[i];
        blocks.push_back({dims[i], weights[i] / static_cast<double>(dims[i])});
    }
    require(std::abs(total - 1.0) < 1e-12, ErrorKind::InvalidArgument, "block weights must sum to 1");
    return TracialAlgebra(std::move(blocks));
}

Eigen::Index TracialAlgebra::total_dim() const {
    Eigen::Index n = 0;
    for (const auto &b : blocks_) n += b.dim;
    return n;
}

double TracialAlgebra::unit_trace() const {
    double t = 0;
    for (const auto &b : blocks_) t += b.coeff * static_cast<double>(b.dim);
    return t;
}

bool TracialAlgebra::is_normalized(double tol) const { return std::abs(unit_trace() - 1.0) <= tol; }

Element::Element(AlgebraPtr algebra, std::vector<Matrix> blocks) : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
    require(algebra_ != nullptr, ErrorKind::InvalidArgument, "element without an algebra");
    require(blocks_.size() == algebra_->num_blocks(), ErrorKind::InvalidArgument, "element has the wrong block count");
    for (size_t i = 0; i < blocks_.size(); ++i)
        require(blocks_[i].rows() == algebra_->dim(i) && blocks_[i].cols() == algebra_->dim(i),
                ErrorKind::InvalidArgument, "element block has the wrong shape");
}

Element Element::identity(const AlgebraPtr &algebra) {
    std::vector<Matrix> b;
    for (const auto &blk : algebra->blocks()) b.push_back(Matrix::Identity(blk.dim, blk.dim));
    return Element(algebra, std::move(b));
}

Element Element::zero(const AlgebraPtr &algebra) {
    std::vector<Matrix> b;
    for (const auto &blk : algebra->blocks()) b.push_back(Matrix::Zero(blk.dim, blk.dim));
    return Element(algebra, std::move(b));
}

Element Element::single(const AlgebraPtr &algebra, Matrix m) {
    std::vector<Matrix> b;
    b.push_back(std::move(m));
    return Element(algebra, std::move(b));
}

Element Element::adjoint() const {
    Element out = *this;
    for (auto &b : out.blocks_) b.adjointInPlace();
    return out;
}

Element Element::operator*(const Element &other) const {
    Element out = *this;
    for (size_t i = 0; i < blocks_.size(); ++i) out.blocks_[i] = blocks_[i] * other.blocks_[i];
    return out;
}

Element Element::operator+(const Element &other) const {
    Element out = *this;
    out += other;
    return out;
}

Element Element::operator-(const Element &other) const {
    Element out = *this;
    out -= other;
    return out;
}

Element Element::operator*(Complex s) const {
    Element out = *this;
    for (auto &b : out.blocks_) b *= s;
    return out;
}

Element &Element::operator+=(const Element &other) {
    for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += other.blocks_[i];
    return *this;
}

Element &Element::operator-=(const Element &other) {
    for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= other.blocks_[i];
    return *this;
}

Complex Element::trace() const {
    Complex t = 0;
    for (size_t i = 0; i < blocks_.size(); ++i) t += algebra_->coeff(i) * blocks_[i].trace();
    return t;
}

double Element::norm2_squared() const {
    double t = 0;
    for (size_t i = 0; i < blocks_.size(); ++i) t += algebra_->coeff(i) * blocks_[i].squaredNorm();
    return t;
}

double Element::norm2() const { return std::sqrt(norm2_squared()); }

double Element::norm1() const {
    double t = 0;
    for (size_t i = 0; i < blocks_.size(); ++i) {
        Eigen::BDCSVD<Matrix> svd(blocks_[i]);
        t += algebra_->coeff(i) * svd.singularValues().sum();
    }
    return t;
}

double Element::norm_inf() const {
    double m = 0;
    for (const auto &b : blocks_) m = std::max(m, operator_norm(b));
    return m;
}

Matrix Element::to_dense() const {
    const Eigen::Index n = algebra_->total_dim();
    Matrix out = Matrix::Zero(n, n);
    Eigen::Index off = 0;
    for (const auto &b : blocks_) {
        out.block(off, off, b.rows(), b.cols()) = b;
        off += b.rows();
    }
    return out;
}

Complex inner(const Element &a, const Element &b) {
    Complex t = 0;
    for (size_t i = 0; i < a.num_blocks(); ++i) t += a.algebra()->coeff(i) * hs_inner(a.block(i), b.block(i));
    return t;
}

double commutator_norm2_squared(const Element &a, const Element &b) {
    double t = 0;
    for (size_t i = 0; i < a.num_blocks(); ++i) {
        Matrix c = a.block(i) * b.block(i) - b.block(i) * a.block(i);
        t += a.algebra()->coeff(i) * c.squaredNorm();
    }
    return t;
}

double distance_inf(const Element &a, const Element &b) {
    double m = 0;
    for (size_t i = 0; i < a.num_blocks(); ++i) m = std::max(m, operator_norm(a.block(i) - b.block(i)));
    return m;
}

namespace {

// Frobenius norm bounds the operator norm from above, so these checks are conservative.
double unitarity_residual(const Element &u) {
    double r = 0;
    for (const auto &b : u.blocks()) {
        Matrix d = b.adjoint() * b - Matrix::Identity(b.rows(), b.cols());
        r = std::max(r, d.norm());
    }
    return r;
}

double projection_residual(const Element &p) {
    double r = 0;
    for (const auto &b : p.blocks()) {
        r = std::max(r, (b - b.adjoint()).norm());
        r = std::max(r, (b * b - b).norm());
    }
    return r;
}

}  // namespace

bool is_unitary(const Element &u, double tol) { return unitarity_residual(u) <= tol; }
bool is_projection(const Element &p, double tol) { return projection_residual(p) <= tol; }

Pvm::Pvm(std::vector<Element> projections, double tol) : projections_(std::move(projections)) {
    require(!projections_.empty(), ErrorKind::InvalidPvm, "PVM needs at least one outcome");
    for (const auto &p : projections_)
        require(p.algebra() == projections_.front().algebra() || *p.algebra() == *projections_.front().algebra(),
                ErrorKind::InvalidPvm, "PVM elements live in different algebras");
    double r = residual();
    require(r <= tol, ErrorKind::InvalidPvm, "PVM axioms violated, residual " + std::to_string(r));
}

Element Pvm::observable(const std::vector<double> &signs) const {
    require(signs.size() == size(), ErrorKind::InvalidArgument, "one coefficient per outcome required");
    Element out = Element::zero(algebra());
    for (size_t a = 0; a < size(); ++a) out += projections_[a] * Complex(signs[a]);
    return out;
}

double Pvm::residual() const {
    double r = 0;
    Element sum = Element::zero(algebra());
    for (const auto &p : projections_) {
        r = std::max(r, projection_residual(p));
        sum += p;
    }
    r = std::max(r, (sum - Element::identity(algebra())).norm_inf());
    if (size() <= 64)
        for (size_t a = 0; a < size(); ++a)
            for (size_t b = a + 1; b < size(); ++b) r = std::max(r, (projections_[a] * projections_[b]).norm_inf());
    return r;
}

AlmostHom::AlmostHom(GroupPtr group, std::vector<Element> values, double tol)
    : group_(std::move(group)), values_(std::move(values)) {
    require(group_ != nullptr, ErrorKind::InvalidArgument, "missing group");
    require(static_cast<int>(values_.size()) == group_->order(), ErrorKind::InvalidArgument,
            "one value per group element required");
    for (const auto &v : values_) {
        require(*v.algebra() == *values_.front().algebra(), ErrorKind::InvalidArgument,
                "values live in different algebras");
        double r = unitarity_residual(v);
        require(r <= tol, ErrorKind::InvalidArgument, "value is not unitary, residual " + std::to_string(r));
    }
}

double AlmostHom::homomorphism_residual() const {
    double r = 0;
    const auto &g = *group_;
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) {
            const Element &ab = values_[g.mul(a, b)];
            for (size_t i = 0; i < ab.num_blocks(); ++i)
                r = std::max(r, (ab.block(i) - values_[a].block(i) * values_[b].block(i)).norm());
        }
    return r;
}

UnitaryRep::UnitaryRep(GroupPtr group, std::vector<Element> values, double tol) {
    try {
        static_cast<AlmostHom &>(*this) = AlmostHom(std::move(group), std::move(values), tol);
    } catch (const Error &e) {
        fail(ErrorKind::InvalidRepresentation, e.what());
    }
    double r = homomorphism_residual();
    require(r <= tol, ErrorKind::InvalidRepresentation, "not a homomorphism, residual " + std::to_string(r));
}

UnitaryRep UnitaryRep::trivial(GroupPtr group, const AlgebraPtr &algebra) {
    std::vector<Element> v(group->order(), Element::identity(algebra));
    return UnitaryRep(std::move(group), std::move(v), Unchecked{});
}

Matrix left_regular_matrix(const FiniteGroup &group, int g) {
    const int n = group.order();
    Matrix m = Matrix::Zero(n, n);
    for (int h = 0; h < n; ++h) m(group.mul(g, h), h) = 1.0;
    return m;
}

UnitaryRep UnitaryRep::left_regular(GroupPtr group) {
    auto alg = share(TracialAlgebra::matrix(group->order()));
    std::vector<Element> v;
    for (int g = 0; g < group->order(); ++g) v.push_back(Element::single(alg, left_regular_matrix(*group, g)));
    return UnitaryRep(std::move(group), std::move(v), Unchecked{});
}

double defect(const AlmostHom &phi) {
    const auto &g = phi.g();
    double total = 0;
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) total += (phi(g.mul(a, b)) - phi(a) * phi(b)).norm2_squared();
    return total / (static_cast<double>(g.order()) * g.order());
}

double defect(const AlmostHom &phi, const ProbMeasure &mu) {
    const auto &g = phi.g();
    require(mu.group_order() == g.order(), ErrorKind::InvalidArgument, "measure and group disagree on order");
    double total = 0;
    auto supp = mu.support();
    for (int a : supp)
        for (int b : supp)
            total += mu.weight_double(a) * mu.weight_double(b) * (phi(g.mul(a, b)) - phi(a) * phi(b)).norm2_squared();
    return total;
}

Element conditional_expectation(const UnitaryRep &u, const Element &v) {
    Element out = Element::zero(v.algebra());
    for (const auto &ug : u.values())
        for (size_t i = 0; i < out.num_blocks(); ++i) out.block(i) += ug.block(i) * v.block(i) * ug.block(i).adjoint();
    return out * Complex(1.0 / static_cast<double>(u.values().size()));
}

CommutatorGap commutator_gap_check(const UnitaryRep &u, const ProbMeasure &mu, const Element &v) {
    const auto &g = u.g();
    GapReport gap = kappa_general(g, mu);
    CommutatorGap out{};
    out.kappa = gap.kappa;
    out.lhs = (v - conditional_expectation(u, v)).norm2_squared();
    double weighted = 0;
    for (int x : mu.support()) weighted += mu.weight_double(x) * commutator_norm2_squared(u(x), v);
    double avg = 0;
    for (int x = 0; x < g.order(); ++x) avg += commutator_norm2_squared(u(x), v);
    out.average = avg / g.order();
    out.rhs_poincare = gap.kappa / 2 * weighted;
    out.rhs_average = gap.kappa * weighted;
    return out;
}

PolarElement polar(const Element &x, double kernel_tol) {
    std::vector<Matrix> w, a;
    for (const auto &b : x.blocks()) {
        auto p = polar_decomposition(b, kernel_tol);
        w.push_back(std::move(p.w));
        a.push_back(std::move(p.abs));
    }
    return {Element(x.algebra(), std::move(w)), Element(x.algebra(), std::move(a))};
}

Eigen::Index Decomposition::dimension() const {
    Eigen::Index d = 0;
    for (const auto &p : parts) d += p.m * p.m;
    return d;
}

std::vector<Matrix> Decomposition::extract(const Matrix &x) const {
    std::vector<Matrix> out;
    for (const auto &p : parts) {
        const Eigen::Index width = p.m * p.copies;
        Matrix cols = basis.middleCols(p.offset, width);
        Matrix y = cols.adjoint() * x * cols;
        Matrix xj = Matrix::Zero(p.m, p.m);
        for (Eigen::Index s = 0; s < p.m; ++s)
            for (Eigen::Index r = 0; r < p.m; ++r)
                for (Eigen::Index t = 0; t < p.copies; ++t) xj(s, r) += y(s * p.copies + t, r * p.copies + t);
        out.push_back(xj / static_cast<double>(p.copies));
    }
    return out;
}

Matrix Decomposition::assemble(const std::vector<Matrix> &blocks) const {
    const Eigen::Index n = basis.rows();
    Matrix inner = Matrix::Zero(n, n);
    for (size_t j = 0; j < parts.size(); ++j) {
        const auto &p = parts[j];
        inner.block(p.offset, p.offset, p.m * p.copies, p.m * p.copies) =
            kron(blocks[j], Matrix::Identity(p.copies, p.copies));
    }
    return basis * inner * basis.adjoint();
}

double Decomposition::residual(const Matrix &x) const {
    Matrix y = basis.adjoint() * x * basis;
    auto xs = extract(x);
    for (size_t j = 0; j < parts.size(); ++j) {
        const auto &p = parts[j];
        y.block(p.offset, p.offset, p.m * p.copies, p.m * p.copies) -= kron(xs[j], Matrix::Identity(p.copies, p.copies));
    }
    double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
    return y.cwiseAbs().maxCoeff() / scale;
}

namespace {

int find_root(std::vector<int> &parent, int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
}

// One attempt; returns false on detected degeneracy.
bool try_decompose(Eigen::Index n, const std::function<Matrix()> &sample, Decomposition &out) {
    Matrix y1 = sample();
    Matrix h1 = (y1 + y1.adjoint()) * 0.5;
    Matrix h2 = sample();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h1);
    const RealVector &ev = es.eigenvalues();
    const Matrix &vecs = es.eigenvectors();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    const double cluster_tol = 1e-8 * scale;

    std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;  // (start, size)
    Eigen::Index start = 0;
    for (Eigen::Index i = 1; i <= n; ++i)
        if (i == n || ev(i) - ev(i - 1) > cluster_tol) {
            clusters.push_back({start, i - start});
            start = i;
        }
    const int nc = static_cast<int>(clusters.size());

    const double h2_scale = std::max(1e-300, h2.norm());
    const double link_tol = 1e-6 * h2_scale;
    const Matrix g2 = vecs.adjoint() * h2 * vecs;
    std::vector<int> parent(nc);
    std::iota(parent.begin(), parent.end(), 0);
    for (int a = 0; a < nc; ++a)
        for (int b = a + 1; b < nc; ++b) {
            const auto [sa, na] = clusters[a];
            const auto [sb, nb] = clusters[b];
            double link = g2.block(sb, sa, nb, na).norm() + g2.block(sa, sb, na, nb).norm();
            if (link > link_tol) parent[find_root(parent, a)] = find_root(parent, b);
        }

    std::vector<std::vector<int>> groups;
    std::vector<int> group_of(nc, -1);
    for (int a = 0; a < nc; ++a) {
        int r = find_root(parent, a);
        if (group_of[r] < 0) {
            group_of[r] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[group_of[r]].push_back(a);
    }

    out.basis = Matrix::Zero(n, n);
    out.parts.clear();
    Eigen::Index offset = 0;
    for (const auto &grp : groups) {
        const Eigen::Index d = clusters[grp[0]].second;
        const Eigen::Index m = static_cast<Eigen::Index>(grp.size());
        for (int a : grp)
            if (clusters[a].second != d) return false;
        for (Eigen::Index s = 0; s < m; ++s) {
            auto es_cols = vecs.middleCols(clusters[grp[s]].first, d);
            Matrix u = Matrix::Identity(d, d);
            if (s > 0) {
                Matrix y = g2.block(clusters[grp[s]].first, clusters[grp[0]].first, d, d);
                Eigen::JacobiSVD<Matrix> svd(y);
                const auto &sv = svd.singularValues();
                if (sv(d - 1) < 1e-6 * h2_scale || sv(0) - sv(d - 1) > 1e-6 * sv(0)) return false;
                u = unitary_polar_factor(y);
            }
            out.basis.middleCols(offset + s * d, d) = es_cols * u;
        }
        out.parts.push_back({m, d, offset});
        offset += m * d;
    }
    for (int check = 0; check < 2; ++check)
        if (out.residual(sample()) > 1e-8) return false;
    return true;
}

}  // namespace

Decomposition decompose_algebra(Eigen::Index n, const std::function<Matrix()> &sample, Rng &rng, int max_tries) {
    (void)rng;
    Decomposition out;
    for (int attempt = 0; attempt < max_tries; ++attempt)
        if (try_decompose(n, sample, out)) return out;
    fail(ErrorKind::Degenerate, "commutant decomposition stayed degenerate after " + std::to_string(max_tries) +
                                    " attempts");
}

Eigen::Index CommutantBlocks::dimension() const {
    Eigen::Index d = 0;
    for (const auto &p : per_block) d += p.dimension();
    return d;
}

TracialAlgebra CommutantBlocks::as_algebra(const TracialAlgebra &ambient) const {
    std::vector<Block> blocks;
    for (size_t i = 0; i < per_block.size(); ++i)
        for (const auto &p : per_block[i].parts)
            blocks.push_back({p.m, ambient.coeff(i) * static_cast<double>(p.copies)});
    return TracialAlgebra(std::move(blocks));
}

CommutantBlocks commutant_blocks(const UnitaryRep &u, Rng &rng, int max_tries) {
    CommutantBlocks out;
    const auto &alg = *u.algebra();
    for (size_t i = 0; i < alg.num_blocks(); ++i) {
        const Eigen::Index n = alg.dim(i);
        auto sample = [&]() {
            Matrix g = random_ginibre(n, n, rng);
            Matrix acc = Matrix::Zero(n, n);
            for (const auto &ug : u.values()) acc += ug.block(i) * g * ug.block(i).adjoint();
            return Matrix(acc / static_cast<double>(u.values().size()));
        };
        out.per_block.push_back(decompose_algebra(n, sample, rng, max_tries));
    }
    return out;
}

Element nearest_unitary_in_commutant(const UnitaryRep &u, const Element &v, const CommutantBlocks &blocks) {
    Element x = conditional_expectation(u, v);
    std::vector<Matrix> out;
    for (size_t i = 0; i < x.num_blocks(); ++i) {
        const auto &dec = blocks.per_block[i];
        auto parts = dec.extract(x.block(i));
        for (auto &p : parts) p = unitary_polar_factor(p);
        out.push_back(dec.assemble(parts));
    }
    return Element(v.algebra(), std::move(out));
}

Element nearest_unitary_in_commutant(const UnitaryRep &u, const Element &v, Rng &rng) {
    return nearest_unitary_in_commutant(u, v, commutant_blocks(u, rng));
}

DualityCheck norm_conditional_duality_check(const UnitaryRep &u, const Element &xi) {
    Element z = xi - conditional_expectation(u, xi);
    DualityCheck out{};
    out.lhs = z.norm2();
    if (out.lhs == 0) return out;
    Element eta = z.adjoint() * Complex(1.0 / out.lhs);
    out.sup_value = std::abs((xi * eta).trace());
    out.orthogonality = conditional_expectation(u, eta).norm2();
    return out;
}

TracialAlgebra amplify(const TracialAlgebra &m, Eigen::Index k, Eigen::Index dim_cap) {
    require(k >= 1, ErrorKind::InvalidArgument, "amplification factor must be >= 1");
    require(m.total_dim() * k <= dim_cap, ErrorKind::Resource,
            "amplified dimension " + std::to_string(m.total_dim() * k) + " exceeds the cap " + std::to_string(dim_cap));
    std::vector<Block> blocks;
    for (const auto &b : m.blocks()) blocks.push_back({b.dim * k, b.coeff});
    return TracialAlgebra(std::move(blocks));
}

Element embed_amplified(const AlgebraPtr &amplified, const Element &x, Eigen::Index k) {
    std::vector<Matrix> out;
    for (size_t i = 0; i < x.num_blocks(); ++i) {
        const Eigen::Index n = x.block(i).rows();
        require(amplified->dim(i) == n * k, ErrorKind::InvalidArgument, "amplified algebra does not match");
        Matrix b = Matrix::Zero(n * k, n * k);
        b.topLeftCorner(n, n) = x.block(i);
        out.push_back(std::move(b));
    }
    return Element(amplified, std::move(out));
}

}  // namespace gapstab
