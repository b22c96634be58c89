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

#include "abelian.hpp"

#include <numeric>

#include "error.hpp"

namespace gapstab {

AbelianGroup::AbelianGroup(std::vector<int> orders) : orders_(std::move(orders)) {
    std::int64_t n = 1;
    for (int m : orders_) {
        require(m >= 1, ErrorKind::InvalidArgument, "cyclic factor orders must be >= 1");
        n *= m;
        require(n <= (1 << 26), ErrorKind::Resource, "abelian group too large to enumerate");
        exponent_ = std::lcm(exponent_, m);
    }
    order_ = static_cast<int>(n);
    strides_.assign(orders_.size(), 1);
    for (int j = rank() - 2; j >= 0; --j) strides_[j] = strides_[j + 1] * orders_[j + 1];
    for (int m : orders_) scale_.push_back(exponent_ / m);
}

AbelianGroup make_group(const std::vector<int> &orders) { return AbelianGroup(orders); }

int AbelianGroup::index(const Residues &a) const {
    require(contains(a), ErrorKind::InvalidArgument, "residue tuple does not belong to the group");
    int idx = 0;
    for (int j = 0; j < rank(); ++j) idx += a[j] * strides_[j];
    return idx;
}

Residues AbelianGroup::element(int index) const {
    Residues a(orders_.size());
    for (int j = 0; j < rank(); ++j) a[j] = (index / strides_[j]) % orders_[j];
    return a;
}

int AbelianGroup::add(int a, int b) const {
    int idx = 0;
    for (int j = 0; j < rank(); ++j) {
        int x = (a / strides_[j]) % orders_[j], y = (b / strides_[j]) % orders_[j];
        idx += ((x + y) % orders_[j]) * strides_[j];
    }
    return idx;
}

int AbelianGroup::neg(int a) const {
    int idx = 0;
    for (int j = 0; j < rank(); ++j) {
        int x = (a / strides_[j]) % orders_[j];
        idx += ((orders_[j] - x) % orders_[j]) * strides_[j];
    }
    return idx;
}

bool AbelianGroup::contains(const Residues &a) const {
    if (a.size() != orders_.size()) return false;
    for (int j = 0; j < rank(); ++j)
        if (a[j] < 0 || a[j] >= orders_[j]) return false;
    return true;
}

int AbelianGroup::phase(int chi, int a) const {
    std::int64_t p = 0;
    for (int j = 0; j < rank(); ++j) {
        std::int64_t x = (chi / strides_[j]) % orders_[j], y = (a / strides_[j]) % orders_[j];
        p += x * y % orders_[j] * scale_[j];
    }
    return static_cast<int>(p % exponent_);
}

namespace {

Complex root_of_unity(int num, int den) {
    // exact values on the axes: +-1, +-i
    if (num == 0) return {1.0, 0.0};
    if (2 * num == den) return {-1.0, 0.0};
    if (4 * num == den) return {0.0, 1.0};
    if (4 * num == 3 * den) return {0.0, -1.0};
    return std::polar(1.0, 2.0 * M_PI * num / den);
}

}  // namespace

Complex AbelianGroup::pairing(int chi, int a) const { return root_of_unity(phase(chi, a), exponent_); }

std::vector<int> AbelianGroup::closure(const std::vector<int> &generators) const {
    std::vector<char> seen(order_, 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (size_t head = 0; head < queue.size(); ++head)
        for (int g : generators) {
            int y = add(queue[head], g);
            if (!seen[y]) {
                seen[y] = 1;
                queue.push_back(y);
            }
        }
    std::sort(queue.begin(), queue.end());
    return queue;
}

FiniteGroup AbelianGroup::to_finite_group() const {
    require(order_ <= 4096, ErrorKind::Resource, "group too large for a multiplication table");
    std::vector<std::vector<int>> t(order_, std::vector<int>(order_));
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b) t[a][b] = add(a, b);
    std::string name;
    for (int m : orders_) name += (name.empty() ? "Z/" : " x Z/") + std::to_string(m);
    return FiniteGroup(std::move(t), name.empty() ? "1" : name);
}

Complex pairing(const Character &chi, const AbelianGroup &group, const Residues &a) {
    require(chi.owner == group, ErrorKind::InvalidArgument, "character belongs to a different group");
    return group.pairing(group.index(chi.exponents), group.index(a));
}

UnitaryRep rep_from_pvm(const AbelianGroup &group, const Pvm &pvm) {
    require(static_cast<int>(pvm.size()) == group.order(), ErrorKind::InvalidPvm,
            "PVM must have one outcome per character");
    double r = pvm.residual();
    require(r <= kValidationTol, ErrorKind::InvalidPvm, "PVM axioms violated, residual " + std::to_string(r));
    std::vector<Element> values;
    for (int a = 0; a < group.order(); ++a) {
        Element u = Element::zero(pvm.algebra());
        for (int chi = 0; chi < group.order(); ++chi) u += pvm[chi] * group.pairing(chi, a);
        values.push_back(std::move(u));
    }
    return UnitaryRep(share(group.to_finite_group()), std::move(values), UnitaryRep::Unchecked{});
}

Pvm pvm_from_rep(const AbelianGroup &group, const UnitaryRep &rep, double tol) {
    require(rep.g().order() == group.order(), ErrorKind::InvalidRepresentation, "representation of a different group");
    double r = rep.homomorphism_residual();
    require(r <= tol, ErrorKind::InvalidRepresentation, "not a homomorphism, residual " + std::to_string(r));
    std::vector<Element> proj;
    const Complex scale(1.0 / group.order());
    for (int chi = 0; chi < group.order(); ++chi) {
        Element p = Element::zero(rep.algebra());
        for (int a = 0; a < group.order(); ++a) p += rep(a) * (std::conj(group.pairing(chi, a)) * scale);
        proj.push_back(std::move(p));
    }
    return Pvm(std::move(proj), Pvm::Unchecked{});
}

}  // namespace gapstab
