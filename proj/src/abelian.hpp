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

#include <vector>

#include "algebra.hpp"
#include "group.hpp"
#include "linalg.hpp"

namespace gapstab {

using Residues = std::vector<int>;

/// Z/m_1 x ... x Z/m_r. Elements are residue tuples indexed lexicographically
/// (first coordinate most significant). The dual has the same orders.
class AbelianGroup {
   public:
    AbelianGroup() = default;
    explicit AbelianGroup(std::vector<int> orders);

    const std::vector<int> &orders() const { return orders_; }
    int rank() const { return static_cast<int>(orders_.size()); }
    int order() const { return order_; }
    /// lcm of the orders.
    int exponent() const { return exponent_; }
    bool exponent_two() const { return exponent_ <= 2; }

    int index(const Residues &a) const;
    Residues element(int index) const;
    int add(int a, int b) const;
    int neg(int a) const;
    bool contains(const Residues &a) const;

    /// Phase numerator of pairing(chi, a): pairing = exp(2 pi i phase / exponent()).
    int phase(int chi, int a) const;
    /// pairing(chi, a) with exact values on the real and imaginary axes.
    Complex pairing(int chi, int a) const;
    /// Subgroup generated by the given elements, as a sorted index list.
    std::vector<int> closure(const std::vector<int> &generators) const;

    FiniteGroup to_finite_group() const;
    bool operator==(const AbelianGroup &other) const { return orders_ == other.orders_; }

   private:
    std::vector<int> orders_;
    std::vector<int> strides_;
    std::vector<int> scale_;  // exponent / m_j
    int order_ = 1;
    int exponent_ = 1;
};

/// Throws InvalidArgument for orders <= 0; an empty list gives the trivial group.
AbelianGroup make_group(const std::vector<int> &orders);

struct Character {
    AbelianGroup owner;
    Residues exponents;
};

/// exp(2 pi i sum_j chi_j a_j / m_j). Throws InvalidArgument on group or shape mismatch.
Complex pairing(const Character &chi, const AbelianGroup &group, const Residues &a);

/// U(a) = sum_chi chi(a) P_chi; characters indexed like group elements.
UnitaryRep rep_from_pvm(const AbelianGroup &group, const Pvm &pvm);
/// P_chi = E_a conj(chi(a)) U(a). Validates the representation first.
Pvm pvm_from_rep(const AbelianGroup &group, const UnitaryRep &rep, double tol = kValidationTol);

}  // namespace gapstab
