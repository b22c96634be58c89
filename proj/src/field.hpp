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

namespace gapstab {

/// F_q for q = p^k. Elements are integers in [0, q) whose base-p digits are the
/// coefficients of a polynomial in x (digit l multiplies x^l) reduced modulo an
/// irreducible polynomial of degree k.
class FiniteField {
   public:
    FiniteField() = default;
    /// Default modulus: tabulated for p = 2 and k <= 16, otherwise the first irreducible found.
    explicit FiniteField(int q);
    /// Explicit monic modulus, coefficients low degree first (size k + 1, last entry 1).
    FiniteField(int p, std::vector<int> modulus);

    int q() const { return q_; }
    int p() const { return p_; }
    int k() const { return k_; }
    const std::vector<int> &modulus() const { return modulus_; }

    int add(int a, int b) const;
    int sub(int a, int b) const;
    int neg(int a) const;
    int mul(int a, int b) const;
    int inv(int a) const;
    int pow(int a, long long e) const;

    std::vector<int> digits(int a) const;
    int from_digits(const std::vector<int> &d) const;

    /// Absolute trace to F_p: sum_i a^(p^i).
    int trace(int a) const;
    /// k x k matrix over F_p of multiplication by a: digits(a z) = M digits(z).
    std::vector<std::vector<int>> mul_matrix(int a) const;
    /// Tr(x^a x^b) over the polynomial basis.
    std::vector<std::vector<int>> trace_pairing_matrix() const;

   private:
    void build(std::vector<int> modulus);
    int poly_mul(int a, int b) const;

    int q_ = 0, p_ = 0, k_ = 0;
    std::vector<int> modulus_;
    std::vector<int> log_, exp_;
};

/// True if q is a prime power within the supported range (q <= 2^16).
bool is_supported_field_size(int q);

/// Inverse of a square matrix over F_p; throws RankDeficient when singular.
std::vector<std::vector<int>> inverse_mod_p(std::vector<std::vector<int>> m, int p);

}  // namespace gapstab
