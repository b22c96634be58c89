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
#include <span>
#include <string>
#include <vector>

namespace gapstab {

/// A finite group given by its multiplication table on element indices 0..n-1.
class FiniteGroup {
   public:
    FiniteGroup(std::vector<std::vector<int>> table, std::string name);

    int order() const { return static_cast<int>(table_.size()); }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return table_[a][b]; }
    int inv(int a) const { return inverse_[a]; }
    const std::string &name() const { return name_; }
    bool is_abelian() const;

    /// Elements of the subgroup generated by `generators`, sorted.
    std::vector<int> closure(std::span<const int> generators) const;
    bool generates(std::span<const int> generators) const;
    bool is_subgroup(std::span<const int> elements) const;

    static FiniteGroup trivial();
    static FiniteGroup cyclic(int m);
    /// Element (a, b) has index a * |B| + b.
    static FiniteGroup product(const FiniteGroup &a, const FiniteGroup &b);
    static FiniteGroup symmetric(int n);
    static FiniteGroup alternating(int n);
    static FiniteGroup dihedral(int n);
    static FiniteGroup quaternion();

    /// The group A x B x Z/2 with (a,b,z)(a',b',z') = (aa', bb', gamma(a',b) z z').
    /// Element (a, b, z) has index (a * |B| + b) * 2 + z, where z = 1 encodes -1.
    /// gamma(a, b) must return +1 or -1 and be a bicharacter.
    static FiniteGroup central_extension(const FiniteGroup &a, const FiniteGroup &b,
                                         const std::function<int(int, int)> &gamma);

   private:
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    int identity_ = 0;
    std::string name_;
};

}  // namespace gapstab
