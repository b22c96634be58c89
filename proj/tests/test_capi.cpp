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

#include <cstdlib>
#include <string>

#include "gapstab.h"
#include "json.hpp"

using nlohmann::json;

namespace {

json take_json(char *s) {
    json j = json::parse(s);
    gapstab_string_free(s);
    return j;
}

const char *kHamming = "2 7 4\n1 0 0 0 0 1 1\n0 1 0 0 1 0 1\n0 0 1 0 1 1 0\n0 0 0 1 1 1 1\n";

}  // namespace

TEST(CApi, VersionAndStatusNames) {
    EXPECT_STRNE(gapstab_version(), "");
    EXPECT_STREQ(gapstab_status_name(GAPSTAB_OK), "ok");
    EXPECT_STREQ(gapstab_status_name(GAPSTAB_BOUND_VIOLATION), "bound-violation");
}

TEST(CApi, Kappa) {
    char *out = nullptr;
    ASSERT_EQ(gapstab_kappa(R"({"group": {"kind": "abelian", "orders": [2, 2, 2]}, "multiset": [1, 2, 4]})", &out),
              GAPSTAB_OK);
    json j = take_json(out);
    EXPECT_EQ(j["abelian"]["exact_kappa"], "3/2");
    EXPECT_NEAR(j["general"]["kappa"].get<double>(), 1.5, 1e-9);

    EXPECT_EQ(gapstab_kappa("{not json", &out), GAPSTAB_INPUT);
    EXPECT_NE(std::string(gapstab_last_error()), "");
    EXPECT_EQ(gapstab_kappa(R"({"group": {"kind": "cyclic", "n": 4}, "multiset": [2]})", &out),
              GAPSTAB_NON_GENERATING);
    EXPECT_EQ(gapstab_kappa(nullptr, &out), GAPSTAB_INVALID_ARGUMENT);
}

TEST(CApi, CodeReport) {
    char *out = nullptr;
    ASSERT_EQ(gapstab_code_report(kHamming, &out), GAPSTAB_OK);
    json j = take_json(out);
    EXPECT_EQ(j["parameters"], "[7,4,3]_2");
    EXPECT_EQ(j["predicted_kappa"], "7/6");
    EXPECT_EQ(j["exact_kappa"], "7/6");
    EXPECT_TRUE(j["match"].get<bool>());
    EXPECT_EQ(gapstab_code_report("2 2 2\n1 0\n1 0\n", &out), GAPSTAB_RANK_DEFICIENT);
    EXPECT_NE(std::string(gapstab_last_error()), "");
}

TEST(CApi, GamesAndStrategies) {
    gapstab_game *g = nullptr;
    ASSERT_EQ(gapstab_game_from_codes(kHamming, kHamming, &g), GAPSTAB_OK);
    gapstab_strategy *s = nullptr;
    ASSERT_EQ(gapstab_strategy_honest(g, &s), GAPSTAB_OK);
    double v = 0;
    ASSERT_EQ(gapstab_value(g, s, &v), GAPSTAB_OK);
    EXPECT_NEAR(v, 1.0, 1e-9);

    char *text = nullptr;
    ASSERT_EQ(gapstab_game_to_json(g, &text), GAPSTAB_OK);
    gapstab_game *g2 = nullptr;
    ASSERT_EQ(gapstab_game_from_json(text, &g2), GAPSTAB_OK);
    gapstab_string_free(text);
    EXPECT_EQ(gapstab_game_num_questions(g2), gapstab_game_num_questions(g));

    ASSERT_EQ(gapstab_strategy_to_json(s, &text), GAPSTAB_OK);
    gapstab_strategy *s2 = nullptr;
    ASSERT_EQ(gapstab_strategy_from_json(text, &s2), GAPSTAB_OK);
    gapstab_string_free(text);
    ASSERT_EQ(gapstab_value(g2, s2, &v), GAPSTAB_OK);
    EXPECT_NEAR(v, 1.0, 1e-9);

    gapstab_strategy *p = nullptr;
    ASSERT_EQ(gapstab_strategy_perturb(s, 0.05, 3, &p), GAPSTAB_OK);
    char *report = nullptr;
    ASSERT_EQ(gapstab_rigidity(g, p, 1, 4096, &report), GAPSTAB_OK);
    json r = take_json(report);
    EXPECT_LE(r["rigidity_lhs"].get<double>(), r["rigidity_bound"].get<double>());

    gapstab_strategy_free(p);
    gapstab_strategy_free(s2);
    gapstab_strategy_free(s);
    gapstab_game_free(g2);
    gapstab_game_free(g);
}

TEST(CApi, Evaluate) {
    gapstab_game *g = nullptr;
    ASSERT_EQ(gapstab_game_magic_square(&g), GAPSTAB_OK);
    gapstab_strategy *s = nullptr, *p = nullptr;
    ASSERT_EQ(gapstab_strategy_honest(g, &s), GAPSTAB_OK);
    ASSERT_EQ(gapstab_strategy_perturb(s, 0.1, 7, &p), GAPSTAB_OK);
    char *out = nullptr;
    ASSERT_EQ(gapstab_evaluate(g, p, &out), GAPSTAB_OK);
    json j = take_json(out);
    EXPECT_NEAR(j["value"].get<double>(), j["value_direct"].get<double>(), 1e-10);
    EXPECT_LE(j["lemma19"]["lhs"].get<double>(), j["lemma19"]["bound"].get<double>());
    gapstab_strategy_free(p);
    gapstab_strategy_free(s);
    gapstab_game_free(g);

    gapstab_game *c = nullptr;
    ASSERT_EQ(gapstab_game_commutation(2, 2, &c), GAPSTAB_OK);
    EXPECT_EQ(gapstab_game_num_questions(c), 3);
    gapstab_strategy *cs = nullptr;
    ASSERT_EQ(gapstab_strategy_honest(c, &cs), GAPSTAB_OK);
    ASSERT_EQ(gapstab_evaluate(c, cs, &out), GAPSTAB_OK);
    json k = take_json(out);
    EXPECT_NEAR(k["lemma17"]["lhs_projections"].get<double>(), 0, 1e-12);
    gapstab_strategy_free(cs);
    gapstab_game_free(c);
    EXPECT_EQ(gapstab_game_commutation(0, 2, &c), GAPSTAB_INVALID_ARGUMENT);
}

TEST(CApi, Round) {
    const char *phi = R"({"group": {"kind": "cyclic", "n": 2}, "algebra": {"matrix": 1},
                          "values": [[[[[1, 0]]]], [[[[-1, 0]]]]]})";
    char *out = nullptr;
    ASSERT_EQ(gapstab_round(phi, 1, 4096, 0, &out), GAPSTAB_OK);
    json j = take_json(out);
    EXPECT_LT(j["distance"].get<double>(), 1e-10);
    EXPECT_EQ(gapstab_round(phi, 1, 1, 0, &out), GAPSTAB_RESOURCE);
}

TEST(CApi, SuitesAndDeterminism) {
    ASSERT_GT(gapstab_suite_count(), 7u);
    EXPECT_EQ(gapstab_suite_name(gapstab_suite_count()), nullptr);
    gapstab_suite_options opt;
    gapstab_suite_options_default(&opt);
    opt.trials = 10;
    opt.seed = 9;
    gapstab_suite *a = nullptr, *b = nullptr;
    ASSERT_EQ(gapstab_verify("lemma17", &opt, &a), GAPSTAB_OK);
    ASSERT_EQ(gapstab_verify("lemma17", &opt, &b), GAPSTAB_OK);
    EXPECT_TRUE(gapstab_suite_passed(a));
    EXPECT_EQ(gapstab_suite_trials(a), 10);
    EXPECT_EQ(gapstab_suite_violations(a), 0);
    EXPECT_LT(gapstab_suite_worst_ratio(a), 1.0);
    char *ca = nullptr, *cb = nullptr;
    ASSERT_EQ(gapstab_suite_csv(a, &ca), GAPSTAB_OK);
    ASSERT_EQ(gapstab_suite_csv(b, &cb), GAPSTAB_OK);
    EXPECT_STREQ(ca, cb);
    gapstab_string_free(ca);
    gapstab_string_free(cb);
    char *js = nullptr;
    ASSERT_EQ(gapstab_suite_json(a, &js), GAPSTAB_OK);
    json j = take_json(js);
    EXPECT_EQ(j["suite"], "lemma17");
    gapstab_suite_free(a);
    gapstab_suite_free(b);
    EXPECT_EQ(gapstab_verify("unknown", &opt, &a), GAPSTAB_INVALID_ARGUMENT);
}

TEST(CApi, Sweep) {
    gapstab_game *g = nullptr;
    ASSERT_EQ(gapstab_game_from_codes("2 3 1\n1 1 1\n", "2 3 1\n1 1 1\n", &g), GAPSTAB_OK);
    gapstab_sweep_options opt;
    gapstab_sweep_options_default(&opt);
    opt.points = 5;
    gapstab_suite *s = nullptr;
    ASSERT_EQ(gapstab_sweep(g, &opt, &s), GAPSTAB_OK);
    EXPECT_EQ(gapstab_suite_trials(s), 5);
    char *text = nullptr;
    ASSERT_EQ(gapstab_suite_summary(s, &text), GAPSTAB_OK);
    EXPECT_NE(std::string(text).find("1320"), std::string::npos);
    gapstab_string_free(text);
    gapstab_suite_free(s);
    gapstab_game_free(g);
}
