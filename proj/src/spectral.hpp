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

#include <optional>
#include <vector>

#include "abelian.hpp"
#include "algebra.hpp"
#include "measure.hpp"

namespace gapstab {

enum class GapMethod { AbelianFourier, RegularRep };

struct GapReport {
    double kappa = 0;               // +inf allowed in principle; generating supports keep it finite
    double second_eigenvalue = 0;   // -inf for the trivial group
    std::optional<Rational> exact_kappa;
    std::optional<Rational> exact_second_eigenvalue;
    GapMethod method = GapMethod::RegularRep;
};

const char *gap_method_name(GapMethod m);

/// Fourier-side: kappa = max over nontrivial chi of 1 / (1 - Re mu_hat(chi)).
/// Measure weights are indexed by the element index of `group`.
GapReport kappa_abelian(const AbelianGroup &group, const ProbMeasure &mu);

/// Regular-representation route with symmetrization; |G| <= cap.
GapReport kappa_general(const FiniteGroup &group, const ProbMeasure &mu, int cap = 5040);

/// mu_hat(chi) = sum_a mu(a) chi(a).
Complex fourier_coefficient(const AbelianGroup &group, const ProbMeasure &mu, int chi);

struct PoincareResidual {
    double lhs;  // ||xi - P_inv xi||^2
    double rhs;  // (kappa / 2) sum_g mu(g) ||pi(g) xi - xi||^2
    double kappa;
};
/// xi lives on the direct sum of the blocks of rep's algebra (Euclidean norms).
PoincareResidual poincare_residual(const UnitaryRep &rep, const ProbMeasure &mu, const Vector &xi);

struct SampledMeasure {
    ProbMeasure measure;
    std::vector<int> multiset;
    GapReport gap;
    int tries;
};

/// Uniform measure on a random multiset of size ceil(c log|G|), verified kappa <= target.
/// c doubles after every failed try; throws SamplingError with the best kappa seen.
SampledMeasure alon_roichman_sample(const FiniteGroup &group, double target_kappa, Rng &rng, int max_tries = 20,
                                    double c = 6.0, int cap = 5040);
SampledMeasure alon_roichman_sample(const AbelianGroup &group, double target_kappa, Rng &rng, int max_tries = 20,
                                    double c = 6.0);

}  // namespace gapstab
