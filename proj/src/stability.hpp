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
#include <optional>
#include <vector>

#include "abelian.hpp"
#include "algebra.hpp"
#include "measure.hpp"
#include "spectral.hpp"

namespace gapstab {

/// Isotypic decomposition of the left regular representation:
/// W^* lambda(g) W = diag_j(kron(irrep_j(g), I_{d_j})).
struct RegularDecomposition {
    Decomposition dec;
    std::vector<std::vector<Matrix>> irreps;  // irreps[j][g], d_j x d_j unitary
};
RegularDecomposition regular_decomposition(const FiniteGroup &group, Rng &rng);

/// Output of Gowers-Hatami rounding, in corner coordinates: the corner P' M_inf P' is the
/// algebra `corner`; corner block c sits over base block owner[c] and carries its coefficient.
struct RoundingCertificate {
    AlgebraPtr base;
    AlgebraPtr corner;
    Eigen::Index amplification = 1;  // k in M tensor M_k
    UnitaryRep pi;                   // into the corner
    std::vector<size_t> owner;       // base block of each corner block
    std::vector<Matrix> w;           // per corner block, D'_c x n_owner; isometry or partial isometry
    std::vector<Matrix> embedding;   // optional, per block (k n_i) x D'_i orthonormal columns, slot-major

    double input_defect = 0;       // eps = E_{g,h} ||phi(gh) - phi(g)phi(h)||_2^2
    double distance = 0;           // E_g ||phi(g) - w^* pi(g) w||_2^2
    double trace_excess = 0;       // tau_inf(P') - tau(1_M)
    double projection_gap = 0;     // ||P' - w w^*||_2^2
    double isometry_defect = 0;    // ||1_M - w^* w||_2^2
    // contraction stage X = P V
    double distance_x = 0;           // E_g ||phi(g) - X^* pi(g) X||_2^2
    double x_isometry_defect = 0;    // ||1_M - X^* X||_2
    double x_projection_defect = 0;  // ||P - X X^*||_2
    int threshold_ties = 0;          // eigenvalues within 1e-9 of 1/2 (included)

    /// w^* y w for y in the corner.
    Element compress(const Element &y) const;
    /// w x w^* + P' - w w^* for x in the base.
    Element dilate_unitary(const Element &x) const;
    Element psi(int g) const { return compress(pi(g)); }
};

struct RoundingOptions {
    double tie_tol = 1e-9;
    Eigen::Index dim_cap = kDefaultDimCap;  // largest dense matrix formed
    bool materialize = false;               // fill RoundingCertificate::embedding; needs (|G| + 1) n <= dim_cap
    /// Precomputed decomposition for the group being rounded (reused across calls on one group).
    std::shared_ptr<const RegularDecomposition> regular;
    /// Input defect when the caller already knows it (pair rounding of exact representations).
    std::optional<double> known_defect;
};

/// Dilation V, averaged A, spectral cut at 1/2, polar completion.
RoundingCertificate gowers_hatami_round(const AlmostHom &phi, Rng &rng, const RoundingOptions &opt = {});
RoundingCertificate gowers_hatami_round(const AlmostHom &phi, const RegularDecomposition &reg,
                                        const RoundingOptions &opt = {});

/// A x A^ x Z/2 with the pairing cocycle, for exponent-2 A (the group rounded by round_pauli_pair).
FiniteGroup weyl_heisenberg(const AbelianGroup &group);

/// E_g ||phi(g) - w^* pi(g) w||_2^2 over a list of group elements.
double closeness_on(const AlmostHom &phi, const RoundingCertificate &cert, const std::vector<int> &elements);

enum class Side { Left, Right };

struct SubgroupCloseness {
    double lhs;                    // (E_{h in H} ||phi(h) - w^* pi(h) w||_2^2)^{1/2}
    double bound;                  // 38 sqrt(eps)
    double equivariance_residual;  // max ||phi(hg) - phi(h)phi(g)||_2 (or right version)
};
/// Throws PreconditionViolation when strict and the equivariance residual exceeds tol.
SubgroupCloseness subgroup_closeness_check(const AlmostHom &phi, const std::vector<int> &subgroup,
                                           const RoundingCertificate &cert, Side side, bool strict = true,
                                           double tol = 1e-9);

struct PairRounding {
    RoundingCertificate cert;
    std::vector<Element> u_tilde;  // in the corner
    std::vector<Element> v_tilde;
    double eps = 0;                // E_{a,b} commutator or twisted defect
    double distance_u = 0;         // E_a ||U(a) - w^* U~(a) w||_2^2
    double distance_v = 0;
    double trace_excess = 0;
    double isometry_defect = 0;    // ||1 - w^* w||_2^2 (nonzero after the Z-correction)
    double relation_residual = 0;  // max ||U~(a)V~(b) - gamma(a,b) V~(b)U~(a)||_inf
    double constant = 0;           // 1444 or 30000
};

/// Commuting pair: phi(a,b) = U(a)V(b) on A x B.
PairRounding round_commuting_pair(const UnitaryRep &u, const UnitaryRep &v, Rng &rng,
                                  const RoundingOptions &opt = {});

using Bicharacter = std::function<int(int, int)>;
bool is_bicharacter(const FiniteGroup &a, const FiniteGroup &b, const Bicharacter &gamma);

/// Twisted pair: round on the central extension, then restrict to the -1 eigenspace of pi(central).
PairRounding round_twisted_pair(const UnitaryRep &u, const UnitaryRep &v, const Bicharacter &gamma, Rng &rng,
                                const RoundingOptions &opt = {});

struct AmplificationCheck {
    double lhs;       // uniform average
    double weighted;  // integral against mu x nu
    double rhs;       // kappa(mu) kappa(nu) weighted
    double kappa_mu;
    double kappa_nu;
    double direct_lhs = 0;  // twisted version: direct evaluation, compared with the tensor reduction
};

/// Commutator amplification with kappas computed on the regular representation.
AmplificationCheck commutator_amplification_check(const UnitaryRep &u, const UnitaryRep &v, const ProbMeasure &mu,
                                                  const ProbMeasure &nu);
/// Same inequality with caller-supplied spectral constants.
AmplificationCheck commutator_amplification_check(const UnitaryRep &u, const UnitaryRep &v, const ProbMeasure &mu,
                                                  const ProbMeasure &nu, double kappa_mu, double kappa_nu);

/// Twisted amplification: U a representation of A, V of the dual (indexed like A), twisted by the pairing.
/// Evaluated as the commutator of U(a) x lambda(a) and V(chi) x M(chi) (Kronecker trace identity),
/// with the direct twisted commutator in direct_lhs.
AmplificationCheck twisted_amplification_check(const AbelianGroup &group, const UnitaryRep &u, const UnitaryRep &v,
                                               const ProbMeasure &mu, const ProbMeasure &nu);

struct PauliRounding {
    PairRounding pair;
    AmplificationCheck amplification;
    double composed_constant;  // 30000 kappa(mu) kappa(nu)
};
/// Twisted pair rounding for exponent-2 groups.
PauliRounding round_pauli_pair(const AbelianGroup &group, const UnitaryRep &u, const UnitaryRep &v,
                               const ProbMeasure &mu, const ProbMeasure &nu, Rng &rng,
                               const RoundingOptions &opt = {});

/// 1/2 (mu1(x) 1_{y=e} + mu2(y) 1_{x=e}) on G1 x G2 (index x |G2| + y).
ProbMeasure product_measure(const FiniteGroup &g1, const ProbMeasure &mu1, const FiniteGroup &g2,
                            const ProbMeasure &mu2);

struct ProductStabilization {
    RoundingCertificate cert;  // final representation of G1 x G2 and isometry
    double eps = 0;            // defect against the mixture measure
    double eps11 = 0, eps22 = 0, eps12 = 0, eps21 = 0;
    double first_defect = 0;     // uniform defect of phi restricted to G1
    double first_distance = 0;   // GH distance for G1
    double eta_l2_squared = 0;   // int eta(h)^2 dmu2
    double eta_comparison = 0;   // 12 kappa(mu1) min(4, 169 first_defect)
    double kappa_mu1 = 0;
    double second_defect = 0;    // uniform defect of V on G2 inside N
    double v_distance = 0;       // int ||psi(h) - V(h)||_2^2 dmu2
    double final_distance = 0;   // int ||phi - w^* pi w||_2^2 dmu
    double distance_g1 = 0;      // int over mu1
    double distance_g2 = 0;      // int over mu2
    double empirical_constant = 0;  // final_distance / eps
};

/// Finite-scale flexible stabilization of an almost homomorphism of G1 x G2.
ProductStabilization stabilize_product(const AlmostHom &phi, const FiniteGroup &g1, const ProbMeasure &mu1,
                                       const FiniteGroup &g2, const ProbMeasure &mu2, Rng &rng,
                                       const RoundingOptions &opt = {});

}  // namespace gapstab
