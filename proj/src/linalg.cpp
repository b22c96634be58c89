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

#include "linalg.hpp"

#include <cmath>

namespace gapstab {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 applied to seed + golden-ratio-spaced counter
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix random_ginibre(Eigen::Index rows, Eigen::Index cols, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = Complex(normal(rng), normal(rng));
    return g;
}

Matrix random_unitary(Eigen::Index n, Rng &rng) {
    Matrix g = random_ginibre(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        Complex d = r(j, j);
        double m = std::abs(d);
        if (m > 0) q.col(j) *= d / m;
    }
    return q;
}

Matrix random_hermitian(Eigen::Index n, Rng &rng) {
    Matrix g = random_ginibre(n, n, rng);
    Matrix h = (g + g.adjoint()) * 0.5;
    double norm = std::sqrt(h.squaredNorm() / static_cast<double>(n));
    if (norm > 0) h /= norm;
    return h;
}

Matrix exp_i_hermitian(const Matrix &h, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const RealVector &ev = es.eigenvalues();
    Vector phases(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) phases(i) = std::polar(1.0, t * ev(i));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double operator_norm(const Matrix &x) {
    if (x.size() == 0) return 0.0;
    const Matrix g = x.rows() < x.cols() ? Matrix(x * x.adjoint()) : Matrix(x.adjoint() * x);
    Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

Complex hs_inner(const Matrix &a, const Matrix &b) { return (a.conjugate().cwiseProduct(b)).sum(); }

Complex trace_of_product(const Matrix &a, const Matrix &b) { return (a.cwiseProduct(b.transpose())).sum(); }

PolarParts polar_decomposition(const Matrix &x, double kernel_tol) {
    PolarParts out;
    out.w = Matrix::Zero(x.rows(), x.cols());
    out.abs = Matrix::Zero(x.cols(), x.cols());
    if (x.size() == 0) return out;
    Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto &s = svd.singularValues();
    const Matrix &u = svd.matrixU();
    const Matrix &v = svd.matrixV();
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        if (s(k) < kernel_tol) continue;
        out.w += u.col(k) * v.col(k).adjoint();
        out.abs += s(k) * v.col(k) * v.col(k).adjoint();
    }
    return out;
}

Matrix unitary_polar_factor(const Matrix &x) {
    Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

Matrix projection_range(const Matrix &p) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(p);
    const RealVector &ev = es.eigenvalues();
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > 0.5) ++count;
    Matrix out(p.rows(), count);
    Eigen::Index c = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > 0.5) out.col(c++) = es.eigenvectors().col(i);
    return out;
}

}  // namespace gapstab
