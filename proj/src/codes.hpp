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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "field.hpp"
#include "linalg.hpp"
#include "measure.hpp"
#include "rational.hpp"

namespace gapstab {

inline constexpr std::uint64_t kDistanceCap = std::uint64_t{1} << 24;

using SymbolMatrix = std::vector<std::vector<int>>;

/// [K, N, d]_q linear code given by an N x K generator matrix (rows b_1..b_N).
class LinearCode {
   public:
    /// Throws InvalidField for unsupported q, InvalidArgument for bad symbols,
    /// RankDeficient when the rows are dependent.
    LinearCode(FiniteField field, SymbolMatrix generator);

    const FiniteField &field() const { return field_; }
    int q() const { return field_.q(); }
    int length() const { return length_; }     // K
    int dimension() const { return static_cast<int>(generator_.size()); }  // N
    const SymbolMatrix &generator() const { return generator_; }
    std::optional<int> cached_distance() const { return distance_; }
    void set_distance(int d) { distance_ = d; }

    std::vector<int> encode(const std::vector<int> &message) const;

   private:
    FiniteField field_;
    SymbolMatrix generator_;
    int length_ = 0;
    std::optional<int> distance_;
};

LinearCode code_new(int q, SymbolMatrix generator);

/// Rank over F_q by Gaussian elimination.
int rank_over_field(const FiniteField &field, SymbolMatrix rows);

/// Exact minimum distance by Gray-code enumeration of all q^N - 1 nonzero messages.
/// Throws Resource when q^N - 1 exceeds cap.
int distance(const LinearCode &code, std::uint64_t cap = kDistanceCap);
/// Cached distance, computing it on first use.
int distance(LinearCode &code, std::uint64_t cap = kDistanceCap);

enum class DualPairing { Standard, Trace };

struct CodeMeasure {
    AbelianGroup group;         // (Z/p)^{kN}, the additive group of F_q^N
    ProbMeasure measure;        // uniform on the character multiset
    std::vector<int> characters;  // multiset of size K (q - 1), as group elements
    int distance;
    Rational predicted_kappa;   // ((q - 1) / q) (K / d)
};

/// Characters y -> chi(sum_j y_j b_j(i)) for nontrivial chi and every coordinate i.
/// The Trace pairing (q = 2^k) identifies characters with F_q^N via (-1)^{Tr(x y)}.
CodeMeasure measure_from_code(LinearCode &code, DualPairing pairing = DualPairing::Standard,
                              std::uint64_t cap = kDistanceCap);

/// Polynomials of individual degree <= 1 in m variables evaluated on F_q^m, q = 2^k with k odd.
LinearCode reed_muller_multilinear(int q, int m);
/// q^m (1 - m / q), the guaranteed distance of reed_muller_multilinear.
Rational reed_muller_distance_bound(int q, int m);

/// Uniformly random full-rank generators until the distance reaches min_distance.
/// Throws SamplingError carrying the best distance found.
LinearCode random_code(int q, int length, int dimension, int min_distance, Rng &rng, int max_tries = 1000);

/// Binary code of the largest distance among systematic generators [I_N | A].
LinearCode best_binary_code(int length, int dimension);

/// Text format: "q K N", N rows of K symbols, optional "d <value>".
LinearCode parse_code(const std::string &text, std::uint64_t cap = kDistanceCap);
LinearCode read_code_file(const std::string &path, std::uint64_t cap = kDistanceCap);
std::string format_code(const LinearCode &code);

}  // namespace gapstab
