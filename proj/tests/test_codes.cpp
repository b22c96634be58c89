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

#include <gtest/gtest.h>

#include "codes.hpp"
#include "error.hpp"
#include "spectral.hpp"
#include "suites.hpp"

using namespace gapstab;

namespace {

LinearCode hamming() {
    return code_new(2, {{1, 0, 0, 0, 0, 1, 1}, {0, 1, 0, 0, 1, 0, 1}, {0, 0, 1, 0, 1, 1, 0}, {0, 0, 0, 1, 1, 1, 1}});
}

ErrorKind kind_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

}  // namespace

TEST(Codes, Construction) {
    LinearCode rep = code_new(2, {{1, 1, 1}});
    EXPECT_EQ(rep.length(), 3);
    EXPECT_EQ(rep.dimension(), 1);
    EXPECT_EQ(kind_of([] { code_new(2, {{1, 0}, {1, 0}}); }), ErrorKind::RankDeficient);
    EXPECT_EQ(kind_of([] { code_new(6, {{1}}); }), ErrorKind::InvalidField);
    EXPECT_EQ(kind_of([] { code_new(2, {{1, 2}}); }), ErrorKind::InvalidArgument);
}

TEST(Codes, Distance) {
    LinearCode rep = code_new(2, {{1, 1, 1}});
    EXPECT_EQ(distance(rep), 3);
    LinearCode id = code_new(2, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    EXPECT_EQ(distance(id), 1);
    LinearCode h = hamming();
    EXPECT_EQ(distance(h), 3);
    EXPECT_EQ(kind_of([&] { distance(static_cast<const LinearCode &>(h), 4); }), ErrorKind::Resource);
}

TEST(Codes, RepetitionAnchor) {
    LinearCode rep = code_new(2, {{1, 1, 1}});
    CodeMeasure cm = measure_from_code(rep);
    EXPECT_EQ(cm.group.order(), 2);
    EXPECT_EQ(cm.characters, (std::vector<int>{1, 1, 1}));
    EXPECT_EQ(cm.predicted_kappa, Rational(1, 2));
    GapReport g = kappa_abelian(cm.group, cm.measure);
    ASSERT_TRUE(g.exact_kappa.has_value());
    EXPECT_EQ(*g.exact_kappa, Rational(1, 2));
}

TEST(Codes, HammingAnchor) {
    LinearCode h = hamming();
    CodeMeasure cm = measure_from_code(h);
    EXPECT_EQ(cm.group.order(), 16);
    EXPECT_EQ(cm.predicted_kappa, Rational(7, 6));
    GapReport g = kappa_abelian(cm.group, cm.measure);
    ASSERT_TRUE(g.exact_kappa.has_value());
    EXPECT_EQ(*g.exact_kappa, Rational(7, 6));
    CodeCheck c = code_check(h);
    EXPECT_TRUE(c.match);
}

TEST(Codes, IdentityCodeKappa) {
    for (int n = 1; n <= 5; ++n) {
        SymbolMatrix gen(n, std::vector<int>(n, 0));
        for (int i = 0; i < n; ++i) gen[i][i] = 1;
        LinearCode id = code_new(2, gen);
        CodeCheck c = code_check(id);
        EXPECT_TRUE(c.match);
        EXPECT_EQ(c.predicted, Rational(n, 2));
    }
}

TEST(Codes, PredictionOverLargerFields) {
    Rng rng(3);
    for (int q : {3, 4, 5, 8, 9}) {
        for (int t = 0; t < 5; ++t) {
            LinearCode c = random_code(q, 5, 2, 1, rng);
            CodeCheck r = code_check(c);
            EXPECT_TRUE(r.match) << "q=" << q;
        }
    }
}

TEST(Codes, TracePairingKeepsKappa) {
    Rng rng(5);
    for (int t = 0; t < 6; ++t) {
        LinearCode c = random_code(4, 6, 2, 1, rng);
        CodeMeasure a = measure_from_code(c, DualPairing::Standard);
        CodeMeasure b = measure_from_code(c, DualPairing::Trace);
        EXPECT_NEAR(kappa_abelian(a.group, a.measure).kappa, kappa_abelian(b.group, b.measure).kappa, 1e-12);
    }
}

TEST(Codes, ExhaustiveSystematicBinary) {
    int mismatches = 0, count = 0;
    for (auto &c : systematic_binary_codes(3, 6)) {
        ++count;
        if (!code_check(c).match) ++mismatches;
    }
    EXPECT_GT(count, 100);
    EXPECT_EQ(mismatches, 0);
}

TEST(Codes, ReedMuller) {
    LinearCode a = reed_muller_multilinear(2, 1);
    EXPECT_EQ(a.length(), 2);
    EXPECT_EQ(a.dimension(), 2);
    EXPECT_EQ(distance(a), 1);

    LinearCode b = reed_muller_multilinear(8, 1);
    EXPECT_EQ(b.length(), 8);
    EXPECT_GE(distance(b), 7);
    CodeMeasure cm = measure_from_code(b);
    EXPECT_LE(cm.predicted_kappa, Rational(1));

    LinearCode c = reed_muller_multilinear(8, 2);
    EXPECT_EQ(c.length(), 64);
    EXPECT_EQ(c.dimension(), 4);
    EXPECT_EQ(reed_muller_distance_bound(8, 2), Rational(48));
    EXPECT_GE(distance(c), 48);
    EXPECT_EQ(kind_of([] { reed_muller_multilinear(4, 1); }), ErrorKind::InvalidArgument);
}

TEST(Codes, RandomCode) {
    Rng rng(11);
    LinearCode c = random_code(2, 8, 2, 4, rng);
    EXPECT_GE(distance(c), 4);
    LinearCode r = random_code(2, 4, 1, 4, rng);
    EXPECT_EQ(r.generator()[0], (std::vector<int>{1, 1, 1, 1}));
    EXPECT_EQ(kind_of([&] { random_code(2, 3, 2, 3, rng, 50); }), ErrorKind::SamplingFailure);
}

TEST(Codes, TextFormat) {
    LinearCode h = hamming();
    distance(h);
    const std::string text = format_code(h);
    LinearCode back = parse_code(text);
    EXPECT_EQ(back.generator(), h.generator());
    EXPECT_EQ(back.cached_distance(), std::optional<int>(3));
    EXPECT_EQ(kind_of([] { parse_code("2 3 1\n1 1 1\nd 2\n"); }), ErrorKind::Input);
    EXPECT_EQ(kind_of([] { parse_code("2 3 1\n1 1\n"); }), ErrorKind::Input);
    EXPECT_EQ(kind_of([] { read_code_file("/nonexistent/file.code"); }), ErrorKind::Input);
}

TEST(Codes, BestBinaryCode) {
    LinearCode c = best_binary_code(8, 2);
    EXPECT_EQ(distance(c), 5);
    EXPECT_EQ(rank_over_field(FiniteField(2), {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}), 2);
}
