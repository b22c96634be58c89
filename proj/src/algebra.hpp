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

#include <functional>
#include <memory>
#include <vector>

#include "group.hpp"
#include "linalg.hpp"
#include "measure.hpp"

namespace gapstab {

inline constexpr double kValidationTol = 1e-9;
inline constexpr Eigen::Index kDefaultDimCap = 4096;

/// One matrix block of a tracial algebra: tau contribution is coeff * Tr(x).
/// For a base algebra with block weight lambda and size n, coeff = lambda / n.
struct Block {
    Eigen::Index dim;
    double coeff;
    bool operator==(const Block &) const = default;
};

/// Finite direct sum of matrix algebras with a faithful trace tau(x) = sum_i coeff_i Tr(x_i).
class TracialAlgebra {
   public:
    TracialAlgebra() = default;
    explicit TracialAlgebra(std::vector<Block> blocks);

    /// M_n with its normalized trace.
    static TracialAlgebra matrix(Eigen::Index n);
    /// Direct sum of M_{n_i} with weights lambda_i (must be positive and sum to 1).
    static TracialAlgebra direct_sum(const std::vector<Eigen::Index> &dims, const std::vector<double> &weights);

    const std::vector<Block> &blocks() const { return blocks_; }
    size_t num_blocks() const { return blocks_.size(); }
    Eigen::Index dim(size_t i) const { return blocks_[i].dim; }
    double coeff(size_t i) const { return blocks_[i].coeff; }
    Eigen::Index total_dim() const;
    /// tau(1); equals 1 for a normalized algebra.
    double unit_trace() const;
    bool is_normalized(double tol = 1e-12) const;
    bool operator==(const TracialAlgebra &other) const = default;

   private:
    std::vector<Block> blocks_;
};

using AlgebraPtr = std::shared_ptr<const TracialAlgebra>;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline AlgebraPtr share(TracialAlgebra a) { return std::make_shared<const TracialAlgebra>(std::move(a)); }
inline GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

/// Block-diagonal element of a tracial algebra.
class Element {
   public:
    Element() = default;
    Element(AlgebraPtr algebra, std::vector<Matrix> blocks);

    static Element identity(const AlgebraPtr &algebra);
    static Element zero(const AlgebraPtr &algebra);
    /// Element of a single-block algebra.
    static Element single(const AlgebraPtr &algebra, Matrix m);

    const AlgebraPtr &algebra() const { return algebra_; }
    const std::vector<Matrix> &blocks() const { return blocks_; }
    std::vector<Matrix> &blocks() { return blocks_; }
    const Matrix &block(size_t i) const { return blocks_[i]; }
    Matrix &block(size_t i) { return blocks_[i]; }
    size_t num_blocks() const { return blocks_.size(); }

    Element adjoint() const;
    Element operator*(const Element &other) const;
    Element operator+(const Element &other) const;
    Element operator-(const Element &other) const;
    Element operator*(Complex s) const;
    Element &operator+=(const Element &other);
    Element &operator-=(const Element &other);

    Complex trace() const;
    double norm2_squared() const;
    double norm2() const;
    /// tau(|x|).
    double norm1() const;
    /// Largest operator norm over blocks.
    double norm_inf() const;
    Matrix to_dense() const;

   private:
    AlgebraPtr algebra_;
    std::vector<Matrix> blocks_;
};

/// tau(a^* b).
Complex inner(const Element &a, const Element &b);
/// ||a b - b a||_2^2 without forming the commutator twice.
double commutator_norm2_squared(const Element &a, const Element &b);
/// Largest blockwise operator-norm distance.
double distance_inf(const Element &a, const Element &b);
bool is_unitary(const Element &u, double tol = kValidationTol);
bool is_projection(const Element &p, double tol = kValidationTol);

/// Projection-valued measure with answers indexed 0..size-1.
class Pvm {
   public:
    Pvm() = default;
    /// Validates self-adjointness, idempotence and completeness within tol; throws InvalidPvm.
    explicit Pvm(std::vector<Element> projections, double tol = kValidationTol);
    struct Unchecked {};
    Pvm(std::vector<Element> projections, Unchecked) : projections_(std::move(projections)) {}

    size_t size() const { return projections_.size(); }
    const Element &operator[](size_t i) const { return projections_[i]; }
    const std::vector<Element> &projections() const { return projections_; }
    const AlgebraPtr &algebra() const { return projections_.front().algebra(); }
    /// sum_a s_a P_a.
    Element observable(const std::vector<double> &signs) const;
    /// Largest violation of the PVM axioms (operator norm).
    double residual() const;

   private:
    std::vector<Element> projections_;
};

/// Map from group elements to unitary elements of one algebra.
class AlmostHom {
   public:
    AlmostHom() = default;
    /// Validates unitarity within tol; throws InvalidArgument.
    AlmostHom(GroupPtr group, std::vector<Element> values, double tol = kValidationTol);
    struct Unchecked {};
    AlmostHom(GroupPtr group, std::vector<Element> values, Unchecked)
        : group_(std::move(group)), values_(std::move(values)) {}

    const GroupPtr &group() const { return group_; }
    const FiniteGroup &g() const { return *group_; }
    const std::vector<Element> &values() const { return values_; }
    const Element &operator()(int g) const { return values_[g]; }
    const AlgebraPtr &algebra() const { return values_.front().algebra(); }
    /// max over (g, h) of ||phi(gh) - phi(g)phi(h)|| in operator norm.
    double homomorphism_residual() const;

   private:
    GroupPtr group_;
    std::vector<Element> values_;
};

/// Homomorphism into unitaries (validated within tolerance).
class UnitaryRep : public AlmostHom {
   public:
    UnitaryRep() = default;
    /// Throws InvalidRepresentation when unitarity or multiplicativity fails beyond tol.
    UnitaryRep(GroupPtr group, std::vector<Element> values, double tol = kValidationTol);
    UnitaryRep(GroupPtr group, std::vector<Element> values, Unchecked)
        : AlmostHom(std::move(group), std::move(values), Unchecked{}) {}

    static UnitaryRep trivial(GroupPtr group, const AlgebraPtr &algebra);
    /// Left regular representation on M_{|G|}: lambda(g) e_h = e_{gh}.
    static UnitaryRep left_regular(GroupPtr group);
};

/// Left regular permutation matrix of g.
Matrix left_regular_matrix(const FiniteGroup &group, int g);

/// E_{g,h} ||phi(gh) - phi(g) phi(h)||_2^2, with (g, h) drawn uniformly or from mu x mu.
double defect(const AlmostHom &phi);
double defect(const AlmostHom &phi, const ProbMeasure &mu);

/// E_g U(g) V U(g)^*: the trace-preserving conditional expectation onto U(G)'.
Element conditional_expectation(const UnitaryRep &u, const Element &v);

struct CommutatorGap {
    double lhs;             // ||V - E_N(V)||_2^2
    double rhs_poincare;    // (kappa / 2) * int ||[U(g), V]||_2^2 dmu
    double average;         // E_g ||[U(g), V]||_2^2
    double rhs_average;     // kappa * int ||[U(g), V]||_2^2 dmu
    double kappa;
};
CommutatorGap commutator_gap_check(const UnitaryRep &u, const ProbMeasure &mu, const Element &v);

struct PolarElement {
    Element w;
    Element abs;
};
PolarElement polar(const Element &x, double kernel_tol = 1e-12);

/// Central decomposition of a *-subalgebra N of M_n: with W unitary,
/// W^* x W = diag_j(kron(x_j, I_{d_j})) for every x in N, x_j in M_{m_j}.
struct Decomposition {
    Matrix basis;  // W, columns ordered by (j, s, t)
    struct Part {
        Eigen::Index m;       // block size of N
        Eigen::Index copies;  // d, multiplicity in the ambient space
        Eigen::Index offset;  // first column of this part in W
    };
    std::vector<Part> parts;

    Eigen::Index dimension() const;
    /// Blocks x_j of an element of N (dense n x n).
    std::vector<Matrix> extract(const Matrix &x) const;
    Matrix assemble(const std::vector<Matrix> &blocks) const;
    /// Largest entry of W^* x W outside the block-scalar pattern, relative to ||x||.
    double residual(const Matrix &x) const;
};

/// Decompose the *-algebra sampled by `sample` (each call returns a random element of N).
Decomposition decompose_algebra(Eigen::Index n, const std::function<Matrix()> &sample, Rng &rng,
                                int max_tries = 8);

/// Commutant decomposition per block of the algebra of U.
struct CommutantBlocks {
    std::vector<Decomposition> per_block;
    Eigen::Index dimension() const;
    /// N as a tracial algebra: blocks (m_j, coeff_i * d_j).
    TracialAlgebra as_algebra(const TracialAlgebra &ambient) const;
};
CommutantBlocks commutant_blocks(const UnitaryRep &u, Rng &rng, int max_tries = 8);

/// Unitary in N = U(G)' closest (up to sqrt 2) to V: polar factor of E_N(V), completed blockwise.
Element nearest_unitary_in_commutant(const UnitaryRep &u, const Element &v, const CommutantBlocks &blocks);
Element nearest_unitary_in_commutant(const UnitaryRep &u, const Element &v, Rng &rng);

struct DualityCheck {
    double lhs;          // ||xi - E_N(xi)||_2
    double sup_value;    // |tau(xi eta)| at the maximizer
    double orthogonality;  // |E_N(eta)| residual of the maximizer
};
DualityCheck norm_conditional_duality_check(const UnitaryRep &u, const Element &xi);

/// M tensor M_k: block dims scale by k, coefficients are kept so that tau_inf(1_M tensor e_11) = tau(1_M).
TracialAlgebra amplify(const TracialAlgebra &m, Eigen::Index k, Eigen::Index dim_cap = kDefaultDimCap);
/// x tensor e_11, placed in the first slot of each amplified block (slot-major indexing).
Element embed_amplified(const AlgebraPtr &amplified, const Element &x, Eigen::Index k);

}  // namespace gapstab
