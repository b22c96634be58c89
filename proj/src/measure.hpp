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

#include <span>
#include <vector>

#include "group.hpp"
#include "rational.hpp"

namespace gapstab {

/// Probability measure on the element indices of a finite group, with exact rational weights.
class ProbMeasure {
   public:
    ProbMeasure(int group_order, std::vector<Rational> weights);

    static ProbMeasure uniform(int group_order);
    static ProbMeasure point(int group_order, int element);
    /// Uniform measure on a multiset of elements (repeats add weight).
    static ProbMeasure uniform_on(int group_order, std::span<const int> multiset);

    int group_order() const { return static_cast<int>(weights_.size()); }
    const std::vector<Rational> &weights() const { return weights_; }
    const Rational &weight(int g) const { return weights_[g]; }
    double weight_double(int g) const { return to_double(weights_[g]); }
    std::vector<int> support() const;

    /// nu(g) = (mu(g) + mu(g^{-1})) / 2.
    ProbMeasure symmetrized(const FiniteGroup &group) const;
    bool is_symmetric(const FiniteGroup &group) const;
    bool generates(const FiniteGroup &group) const;

    /// lambda * delta_identity + (1 - lambda) * mu.
    ProbMeasure mixed_with_point(int element, const Rational &lambda) const;

    bool operator==(const ProbMeasure &other) const { return weights_ == other.weights_; }

   private:
    std::vector<Rational> weights_;
};

}  // namespace gapstab
