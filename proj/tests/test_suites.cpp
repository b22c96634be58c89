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

#include <atomic>

#include "error.hpp"
#include "suites.hpp"

using namespace gapstab;

namespace {

int small_trials(const std::string &name) {
    if (name == "prop24") return 4;
    if (name == "sqrt2" || name == "poincare") return 60;
    return 25;
}

}  // namespace

class SuiteSmoke : public ::testing::TestWithParam<std::string> {};

TEST_P(SuiteSmoke, Passes) {
    SuiteOptions opt;
    opt.seed = 5;
    opt.trials = small_trials(GetParam());
    SuiteResult r = run_suite(GetParam(), opt);
    EXPECT_TRUE(r.passed()) << r.summary();
    EXPECT_FALSE(r.constant.empty());
    EXPECT_FALSE(r.rows.empty());
    for (const auto &row : r.rows) EXPECT_EQ(row.size(), r.columns.size());
}

INSTANTIATE_TEST_SUITE_P(AllSuites, SuiteSmoke, ::testing::ValuesIn(suite_names()),
                         [](const auto &info) { return info.param; });

TEST(Suites, UnknownName) {
    try {
        run_suite("nope");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
}

TEST(Suites, ReplayIsDeterministic) {
    for (const char *name : {"lemma19", "gh"}) {
        SuiteOptions a;
        a.seed = 42;
        a.trials = 12;
        a.threads = 1;
        SuiteOptions b = a;
        b.threads = 3;
        EXPECT_EQ(run_suite(name, a).csv(), run_suite(name, b).csv());
        SuiteOptions c = a;
        c.seed = 43;
        EXPECT_NE(run_suite(name, a).csv(), run_suite(name, c).csv());
    }
}

TEST(Suites, CodeGameEtaRatio) {
    SuiteOptions opt;
    opt.trials = 20;
    SuiteResult r = run_suite("lemma19", opt);
    for (const auto &[k, v] : r.stats)
        if (k.rfind("eta_over_eps", 0) == 0) EXPECT_NEAR(v, 72.0, 1e-5);
}

TEST(Suites, LogLogSlope) {
    std::vector<double> x, y;
    for (int i = 1; i <= 10; ++i) {
        x.push_back(i * 0.01);
        y.push_back(3 * std::pow(i * 0.01, 2));
    }
    EXPECT_NEAR(loglog_slope(x, y), 2.0, 1e-12);
}

TEST(Suites, ParallelForCoversEveryIndex) {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(100, 4, [&](int i) { hits[i]++; });
    for (auto &h : hits) EXPECT_EQ(h.load(), 1);
    EXPECT_THROW(parallel_for(10, 2,
                              [](int i) {
                                  if (i == 7) fail(ErrorKind::Internal, "boom");
                              }),
                 Error);
}

TEST(Suites, SystematicCodeCount) {
    // [I_N | A] for N <= 2, K <= 4: sum over N, K of 2^(N (K - N))
    EXPECT_EQ(systematic_binary_codes(2, 4).size(), 1u + 2 + 4 + 8 + 1 + 4 + 16);
}

TEST(Suites, SweepOnRepetitionGame) {
    LinearCode rep = code_new(2, {{1, 1, 1}});
    Game g = game_from_code(rep, rep);
    SweepOptions opt;
    opt.points = 8;
    SuiteResult r = run_sweep(g, opt);
    EXPECT_TRUE(r.passed()) << r.summary();
    EXPECT_EQ(r.rows.size(), 8u);
}
