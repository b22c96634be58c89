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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace gapstab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Counter-mode seed splitting: trial `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

Matrix kron(const Matrix &a, const Matrix &b);

/// Haar-distributed unitary (QR of a complex Ginibre matrix with phase fix).
Matrix random_unitary(Eigen::Index n, Rng &rng);

/// Gaussian self-adjoint matrix normalized to unit normalized-trace 2-norm.
Matrix random_hermitian(Eigen::Index n, Rng &rng);

Matrix random_ginibre(Eigen::Index rows, Eigen::Index cols, Rng &rng);

/// exp(i t H) for self-adjoint H.
Matrix exp_i_hermitian(const Matrix &h, double t);

double operator_norm(const Matrix &x);

/// Unnormalized Hilbert-Schmidt inner product Tr(a^* b), computed without forming the product.
Complex hs_inner(const Matrix &a, const Matrix &b);

/// Tr(a b) without forming the product.
Complex trace_of_product(const Matrix &a, const Matrix &b);

struct PolarParts {
    Matrix w;    // partial isometry, initial space = closure of range(abs)
    Matrix abs;  // (x^* x)^{1/2}
};

/// x = w * abs, with singular values below kernel_tol treated as kernel.
PolarParts polar_decomposition(const Matrix &x, double kernel_tol = 1e-12);

/// Full unitary U V^* from an SVD of a square matrix; x = u |x| holds exactly.
Matrix unitary_polar_factor(const Matrix &x);

/// Orthonormal basis (columns) of the range of a self-adjoint projection-like matrix:
/// eigenvectors whose eigenvalue exceeds 1/2.
Matrix projection_range(const Matrix &p);

}  // namespace gapstab
