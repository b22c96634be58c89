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

#include "error.hpp"

#include <charconv>

#include "rational.hpp"

namespace gapstab {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument:
            return "invalid-argument";
        case ErrorKind::InvalidPvm:
            return "invalid-pvm";
        case ErrorKind::InvalidRepresentation:
            return "invalid-representation";
        case ErrorKind::InvalidField:
            return "invalid-field";
        case ErrorKind::NonGenerating:
            return "non-generating";
        case ErrorKind::RankDeficient:
            return "rank-deficient";
        case ErrorKind::Resource:
            return "resource";
        case ErrorKind::SamplingFailure:
            return "sampling-failure";
        case ErrorKind::PreconditionViolation:
            return "precondition-violation";
        case ErrorKind::Degenerate:
            return "degenerate";
        case ErrorKind::Input:
            return "input";
        case ErrorKind::BoundViolation:
            return "bound-violation";
        case ErrorKind::Internal:
            return "internal";
    }
    return "unknown";
}

namespace {

std::int64_t parse_int(std::string_view text) {
    std::int64_t value = 0;
    auto begin = text.data();
    auto end = text.data() + text.size();
    if (begin != end && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || begin == end)
        fail(ErrorKind::Input, "malformed rational component '" + std::string(text) + "'");
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    auto num = parse_int(trim(text.substr(0, slash)));
    auto den = parse_int(trim(text.substr(slash + 1)));
    if (den == 0) fail(ErrorKind::Input, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string format_rational(const Rational &r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace gapstab
