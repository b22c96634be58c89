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

#include "measure.hpp"

#include "error.hpp"

namespace gapstab {

ProbMeasure::ProbMeasure(int group_order, std::vector<Rational> weights) : weights_(std::move(weights)) {
    require(group_order >= 1 && static_cast<int>(weights_.size()) == group_order, ErrorKind::InvalidArgument,
            "measure weight count does not match the group order");
    Rational total(0);
    for (const auto &w : weights_) {
        require(w >= Rational(0), ErrorKind::InvalidArgument, "measure weights must be nonnegative");
        total += w;
    }
    require(total == Rational(1), ErrorKind::InvalidArgument, "measure weights sum to " + format_rational(total) + ", not 1");
}

ProbMeasure ProbMeasure::uniform(int group_order) {
    require(group_order >= 1, ErrorKind::InvalidArgument, "group order must be >= 1");
    return ProbMeasure(group_order, std::vector<Rational>(group_order, Rational(1, group_order)));
}

ProbMeasure ProbMeasure::point(int group_order, int element) {
    require(element >= 0 && element < group_order, ErrorKind::InvalidArgument, "point outside the group");
    std::vector<Rational> w(group_order, Rational(0));
    w[element] = 1;
    return ProbMeasure(group_order, std::move(w));
}

ProbMeasure ProbMeasure::uniform_on(int group_order, std::span<const int> multiset) {
    require(!multiset.empty(), ErrorKind::InvalidArgument, "empty support");
    std::vector<Rational> w(group_order, Rational(0));
    const Rational unit(1, static_cast<std::int64_t>(multiset.size()));
    for (int e : multiset) {
        require(e >= 0 && e < group_order, ErrorKind::InvalidArgument, "support element outside the group");
        w[e] += unit;
    }
    return ProbMeasure(group_order, std::move(w));
}

std::vector<int> ProbMeasure::support() const {
    std::vector<int> s;
    for (int g = 0; g < group_order(); ++g)
        if (weights_[g] != Rational(0)) s.push_back(g);
    return s;
}

ProbMeasure ProbMeasure::symmetrized(const FiniteGroup &group) const {
    require(group.order() == group_order(), ErrorKind::InvalidArgument, "measure and group disagree on order");
    std::vector<Rational> w(group_order());
    for (int g = 0; g < group_order(); ++g) w[g] = (weights_[g] + weights_[group.inv(g)]) / 2;
    return ProbMeasure(group_order(), std::move(w));
}

bool ProbMeasure::is_symmetric(const FiniteGroup &group) const {
    for (int g = 0; g < group_order(); ++g)
        if (weights_[g] != weights_[group.inv(g)]) return false;
    return true;
}

bool ProbMeasure::generates(const FiniteGroup &group) const {
    require(group.order() == group_order(), ErrorKind::InvalidArgument, "measure and group disagree on order");
    auto s = support();
    return group.generates(s);
}

ProbMeasure ProbMeasure::mixed_with_point(int element, const Rational &lambda) const {
    require(lambda >= Rational(0) && lambda <= Rational(1), ErrorKind::InvalidArgument, "mixing weight must lie in [0, 1]");
    std::vector<Rational> w(group_order());
    for (int g = 0; g < group_order(); ++g) w[g] = (1 - lambda) * weights_[g];
    w[element] += lambda;
    return ProbMeasure(group_order(), std::move(w));
}

}  // namespace gapstab
