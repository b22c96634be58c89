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

#include "group.hpp"

#include <algorithm>
#include <numeric>

#include "error.hpp"

namespace gapstab {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::string name)
    : table_(std::move(table)), name_(std::move(name)) {
    const int n = order();
    require(n >= 1, ErrorKind::InvalidArgument, "group must have at least one element");
    for (const auto &row : table_) {
        require(static_cast<int>(row.size()) == n, ErrorKind::InvalidArgument, "multiplication table is not square");
        for (int v : row) require(v >= 0 && v < n, ErrorKind::InvalidArgument, "table entry out of range");
    }
    identity_ = -1;
    for (int e = 0; e < n && identity_ < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
        if (ok) identity_ = e;
    }
    require(identity_ >= 0, ErrorKind::InvalidArgument, "multiplication table has no identity");
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (table_[a][b] == identity_) {
                inverse_[a] = b;
                break;
            }
        require(inverse_[a] >= 0 && table_[inverse_[a]][a] == identity_, ErrorKind::InvalidArgument,
                "element without a two-sided inverse");
    }
    // associativity is O(n^3); only checked where that is cheap
    if (n <= 64) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    require(table_[table_[a][b]][c] == table_[a][table_[b][c]], ErrorKind::InvalidArgument,
                            "multiplication table is not associative");
    }
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order(); ++a)
        for (int b = a + 1; b < order(); ++b)
            if (table_[a][b] != table_[b][a]) return false;
    return true;
}

std::vector<int> FiniteGroup::closure(std::span<const int> generators) const {
    std::vector<char> seen(order(), 0);
    std::vector<int> queue{identity_};
    seen[identity_] = 1;
    for (size_t head = 0; head < queue.size(); ++head) {
        int x = queue[head];
        for (int g : generators) {
            int y = table_[x][g];
            if (!seen[y]) {
                seen[y] = 1;
                queue.push_back(y);
            }
        }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
}

bool FiniteGroup::generates(std::span<const int> generators) const {
    return static_cast<int>(closure(generators).size()) == order();
}

bool FiniteGroup::is_subgroup(std::span<const int> elements) const {
    if (elements.empty()) return false;
    std::vector<char> in(order(), 0);
    for (int e : elements) {
        if (e < 0 || e >= order()) return false;
        in[e] = 1;
    }
    if (!in[identity_]) return false;
    for (int a : elements)
        for (int b : elements)
            if (!in[table_[a][b]]) return false;
    return true;
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(int m) {
    require(m >= 1, ErrorKind::InvalidArgument, "cyclic group order must be >= 1");
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) t[a][b] = (a + b) % m;
    return FiniteGroup(std::move(t), "Z/" + std::to_string(m));
}

FiniteGroup FiniteGroup::product(const FiniteGroup &a, const FiniteGroup &b) {
    const int na = a.order(), nb = b.order();
    std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
    for (int x = 0; x < na * nb; ++x)
        for (int y = 0; y < na * nb; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    return FiniteGroup(std::move(t), a.name() + " x " + b.name());
}

namespace {

FiniteGroup permutation_group(const std::vector<std::vector<int>> &perms, const std::string &name) {
    const int n = static_cast<int>(perms.size());
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            // (a b)(i) = a(b(i))
            std::vector<int> c(perms[a].size());
            for (size_t i = 0; i < c.size(); ++i) c[i] = perms[a][perms[b][i]];
            auto it = std::lower_bound(perms.begin(), perms.end(), c);
            t[a][b] = static_cast<int>(it - perms.begin());
        }
    return FiniteGroup(std::move(t), name);
}

int parity(const std::vector<int> &p) {
    int inversions = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inversions;
    return inversions % 2;
}

}  // namespace

FiniteGroup FiniteGroup::symmetric(int n) {
    require(n >= 1 && n <= 6, ErrorKind::InvalidArgument, "symmetric group degree must be in [1, 6]");
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return permutation_group(perms, "S" + std::to_string(n));
}

FiniteGroup FiniteGroup::alternating(int n) {
    require(n >= 1 && n <= 6, ErrorKind::InvalidArgument, "alternating group degree must be in [1, 6]");
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> perms;
    do
        if (parity(p) == 0) perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return permutation_group(perms, "A" + std::to_string(n));
}

FiniteGroup FiniteGroup::dihedral(int n) {
    require(n >= 1, ErrorKind::InvalidArgument, "dihedral group needs n >= 1");
    // element (s, r) = s^f r^k encoded as f * n + k, with s r s = r^{-1}
    const int size = 2 * n;
    std::vector<std::vector<int>> t(size, std::vector<int>(size));
    for (int x = 0; x < size; ++x)
        for (int y = 0; y < size; ++y) {
            int f1 = x / n, k1 = x % n, f2 = y / n, k2 = y % n;
            // r^k1 s^f2 = s^f2 r^{(-1)^f2 k1}
            int k = ((f2 ? -k1 : k1) + k2) % n;
            if (k < 0) k += n;
            t[x][y] = ((f1 + f2) % 2) * n + k;
        }
    return FiniteGroup(std::move(t), "D" + std::to_string(n));
}

FiniteGroup FiniteGroup::quaternion() {
    // elements ±1, ±i, ±j, ±k encoded as sign * 4 + unit, unit in {1,i,j,k}
    static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            int s = (x / 4 + y / 4 + unit_sign[x % 4][y % 4]) % 2;
            t[x][y] = s * 4 + unit_mul[x % 4][y % 4];
        }
    return FiniteGroup(std::move(t), "Q8");
}

FiniteGroup FiniteGroup::central_extension(const FiniteGroup &a, const FiniteGroup &b,
                                           const std::function<int(int, int)> &gamma) {
    const int na = a.order(), nb = b.order();
    std::vector<std::vector<int>> g(na, std::vector<int>(nb));
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < nb; ++y) {
            int v = gamma(x, y);
            require(v == 1 || v == -1, ErrorKind::InvalidArgument, "bicharacter values must be +1 or -1");
            g[x][y] = v == 1 ? 0 : 1;
        }
    const int size = na * nb * 2;
    std::vector<std::vector<int>> t(size, std::vector<int>(size));
    for (int u = 0; u < size; ++u)
        for (int v = 0; v < size; ++v) {
            int a1 = u / 2 / nb, b1 = u / 2 % nb, z1 = u % 2;
            int a2 = v / 2 / nb, b2 = v / 2 % nb, z2 = v % 2;
            int z = (z1 + z2 + g[a2][b1]) % 2;
            t[u][v] = (a.mul(a1, a2) * nb + b.mul(b1, b2)) * 2 + z;
        }
    return FiniteGroup(std::move(t), "Ext(" + a.name() + " x " + b.name() + ")");
}

}  // namespace gapstab
