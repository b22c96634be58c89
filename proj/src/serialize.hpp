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
#include <string>

#include "json.hpp"

#include "abelian.hpp"
#include "algebra.hpp"
#include "codes.hpp"
#include "games.hpp"
#include "spectral.hpp"
#include "stability.hpp"

namespace gapstab {

using Json = nlohmann::json;

/// Reads and parses a JSON file; throws Error(Input) on I/O or syntax errors.
Json read_json_file(const std::string &path);
void write_json_file(const std::string &path, const Json &j);
std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

/// Row-major array of rows, each entry [re, im].
Json to_json(const Matrix &m);
Matrix matrix_from_json(const Json &j);

Json to_json(const TracialAlgebra &a);
TracialAlgebra algebra_from_json(const Json &j);
/// Array of blocks.
Json to_json(const Element &e);
Element element_from_json(const AlgebraPtr &algebra, const Json &j);

/// {"kind": "cyclic" | "abelian" | "symmetric" | "alternating" | "dihedral" | "quaternion" | "trivial" |
///  "product" | "table", ...}. Abelian descriptors also yield an AbelianGroup.
struct GroupInput {
    GroupPtr group;
    std::optional<AbelianGroup> abelian;
};
GroupInput group_from_json(const Json &j);

/// {"group": ..., "weights": ["p/q", ...]} or {"group": ..., "multiset": [g, ...]}.
struct MeasureInput {
    GroupInput group;
    ProbMeasure measure;
};
MeasureInput measure_from_json(const Json &j);

/// {"group": ..., "algebra": ..., "values": [element, ...]}.
AlmostHom almost_hom_from_json(const Json &j);
Json almost_hom_to_json(const Json &group_descriptor, const AlmostHom &phi);

Json to_json(const Rule &r);
Rule rule_from_json(const Json &j);
Json to_json(const Game &g);
Game game_from_json(const Json &j);
/// Replaces intensional rules by accepted-pair tables; throws Resource above max_pairs per entry.
Game expand_rules(const Game &g, long long max_pairs = 1 << 16);

Json to_json(const SynchronousStrategy &s);
SynchronousStrategy strategy_from_json(const Json &j);

Json to_json(const GapReport &r);
Json to_json(const RoundingCertificate &c, bool matrices = false);
Json to_json(const ClosenessCertificate &c);
Json to_json(const RigidityReport &r);
Json to_json(const CommutationBound &b);
Json to_json(const AnticommutationBound &b);
Json to_json(const ProductStabilization &p);

}  // namespace gapstab
