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

#include <cstdio>
#include <filesystem>

#include "error.hpp"
#include "serialize.hpp"
#include "suites.hpp"

using namespace gapstab;

namespace {

ErrorKind kind_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

LinearCode hamming() {
    return code_new(2, {{1, 0, 0, 0, 0, 1, 1}, {0, 1, 0, 0, 1, 0, 1}, {0, 0, 1, 0, 1, 1, 0}, {0, 0, 0, 1, 1, 1, 1}});
}

}  // namespace

TEST(Serialize, MatrixRoundTrip) {
    Rng rng(1);
    Matrix m = random_ginibre(3, 2, rng);
    Matrix back = matrix_from_json(Json::parse(to_json(m).dump()));
    EXPECT_EQ((m - back).norm(), 0);
    Matrix plain = matrix_from_json(Json::parse("[[1, 0], [0, 2]]"));
    EXPECT_EQ(plain(1, 1), Complex(2, 0));
    EXPECT_EQ(kind_of([] { matrix_from_json(Json::parse("[[1, 0], [0]]")); }), ErrorKind::Input);
}

TEST(Serialize, AlgebraRoundTrip) {
    TracialAlgebra a = TracialAlgebra::direct_sum({1, 3}, {0.25, 0.75});
    EXPECT_EQ(algebra_from_json(to_json(a)), a);
    EXPECT_EQ(algebra_from_json(Json::parse(R"({"matrix": 4})")), TracialAlgebra::matrix(4));
}

TEST(Serialize, Groups) {
    EXPECT_EQ(group_from_json(Json::parse(R"({"kind": "cyclic", "n": 5})")).group->order(), 5);
    GroupInput ab = group_from_json(Json::parse(R"({"kind": "abelian", "orders": [2, 2, 2]})"));
    ASSERT_TRUE(ab.abelian.has_value());
    EXPECT_EQ(ab.abelian->order(), 8);
    EXPECT_EQ(group_from_json(Json::parse(R"({"kind": "symmetric", "n": 4})")).group->order(), 24);
    GroupInput p = group_from_json(
        Json::parse(R"({"kind": "product", "factors": [{"kind": "cyclic", "n": 2}, {"kind": "cyclic", "n": 3}]})"));
    EXPECT_EQ(p.group->order(), 6);
    EXPECT_TRUE(p.abelian.has_value());
    EXPECT_EQ(group_from_json(Json::parse(R"({"kind": "table", "table": [[0, 1], [1, 0]]})")).group->order(), 2);
    EXPECT_EQ(kind_of([] { group_from_json(Json::parse(R"({"kind": "table", "table": [[0, 1], [0, 1]]})")); }),
              ErrorKind::Input);
    EXPECT_EQ(kind_of([] { group_from_json(Json::parse(R"({"kind": "mystery"})")); }), ErrorKind::Input);
    EXPECT_EQ(kind_of([] { group_from_json(Json::parse(R"({"kind": "symmetric", "n": 9})")); }), ErrorKind::Resource);
}

TEST(Serialize, Measures) {
    MeasureInput m = measure_from_json(
        Json::parse(R"({"group": {"kind": "abelian", "orders": [2]}, "weights": ["0", "1"]})"));
    EXPECT_EQ(*kappa_abelian(*m.group.abelian, m.measure).exact_kappa, Rational(1, 2));
    MeasureInput ms = measure_from_json(Json::parse(R"({"group": {"kind": "cyclic", "n": 4}, "multiset": [1, 1, 3]})"));
    EXPECT_EQ(ms.measure.weight(1), Rational(2, 3));
    EXPECT_EQ(kind_of([] {
                  measure_from_json(Json::parse(R"({"group": {"kind": "cyclic", "n": 2}, "weights": ["1/2", "1/3"]})"));
              }),
              ErrorKind::Input);
    EXPECT_EQ(kind_of([] {
                  measure_from_json(Json::parse(R"({"group": {"kind": "cyclic", "n": 2}, "multiset": [2]})"));
              }),
              ErrorKind::Input);
}

TEST(Serialize, GameRoundTrip) {
    LinearCode h = hamming();
    for (const Game &g : {commutation_game(), magic_square_game(), game_from_code(h, h)}) {
        const Game back = game_from_json(Json::parse(to_json(g).dump()));
        EXPECT_EQ(back.num_questions(), g.num_questions());
        ASSERT_EQ(back.entries.size(), g.entries.size());
        for (size_t i = 0; i < g.entries.size(); ++i) {
            EXPECT_EQ(back.entries[i].weight, g.entries[i].weight);
            EXPECT_EQ(back.entries[i].rule, g.entries[i].rule);
            EXPECT_EQ(back.entries[i].stage, g.entries[i].stage);
        }
        EXPECT_EQ(back.pauli.has_value(), g.pauli.has_value());
        EXPECT_NEAR(value(back, honest_strategy(back)), 1.0, 1e-9);
    }
}

TEST(Serialize, ExpandedRulesKeepValue) {
    Rng rng(2);
    LinearCode rep = code_new(2, {{1, 1, 1}});
    for (const Game &g : {commutation_game(2, 3), magic_square_game(), game_from_code(rep, rep)}) {
        const Game t = expand_rules(g);
        for (const auto &e : t.entries) EXPECT_EQ(e.rule.kind, RuleKind::Table);
        SynchronousStrategy s = perturb_strategy(honest_strategy(g), 0.1, rng);
        EXPECT_NEAR(value(t, s), value(g, s), 1e-12);
    }
}

TEST(Serialize, InvalidGames) {
    Json j = to_json(commutation_game());
    j["entries"][0]["weight"] = "1/3";
    EXPECT_EQ(kind_of([&] { game_from_json(j); }), ErrorKind::Input);
    Json k = to_json(commutation_game());
    k["format"] = "something-else";
    EXPECT_EQ(kind_of([&] { game_from_json(k); }), ErrorKind::Input);
    EXPECT_EQ(kind_of([] { read_json_file("/nonexistent/game.json"); }), ErrorKind::Input);
}

TEST(Serialize, StrategyRoundTrip) {
    Rng rng(3);
    const Game g = magic_square_game();
    SynchronousStrategy s = perturb_strategy(honest_strategy(g), 0.05, rng);
    SynchronousStrategy back = strategy_from_json(Json::parse(to_json(s).dump()));
    EXPECT_NEAR(value(g, back), value(g, s), 1e-12);

    Json bad = to_json(s);
    bad["pvms"][0][0] = bad["pvms"][0][1];
    EXPECT_EQ(kind_of([&] { strategy_from_json(bad); }), ErrorKind::Input);
}

TEST(Serialize, AlmostHomRoundTrip) {
    const Json desc = Json::parse(R"({"kind": "dihedral", "n": 3})");
    GroupInput g = group_from_json(desc);
    UnitaryRep reg = UnitaryRep::left_regular(g.group);
    AlmostHom back = almost_hom_from_json(Json::parse(almost_hom_to_json(desc, reg).dump()));
    EXPECT_LT(defect(back), 1e-20);

    Json j = almost_hom_to_json(desc, reg);
    j["values"][1][0][0][0] = Json::array({2.0, 0.0});
    EXPECT_EQ(kind_of([&] { almost_hom_from_json(j); }), ErrorKind::Input);
}

TEST(Serialize, ReportsHaveConstants) {
    Rng rng(4);
    LinearCode rep = code_new(2, {{1, 1, 1}});
    Game g = game_from_code(rep, rep);
    RigidityReport r = pauli_rigidity_report(g, perturb_strategy(honest_strategy(g), 0.02, rng), rng);
    Json j = to_json(r);
    EXPECT_TRUE(j.contains("rigidity_bound"));
    EXPECT_TRUE(j.contains("closeness"));
    RoundingCertificate c = gowers_hatami_round(UnitaryRep::left_regular(share(FiniteGroup::cyclic(3))), rng);
    Json cj = to_json(c);
    EXPECT_TRUE(cj.contains("distance_bound"));
    EXPECT_TRUE(cj.contains("trace_excess_bound"));
}

TEST(Serialize, Files) {
    const auto dir = std::filesystem::temp_directory_path() / "gapstab_serialize_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "game.json").string();
    write_json_file(path, to_json(magic_square_game()));
    EXPECT_EQ(game_from_json(read_json_file(path)).num_questions(), 15);
    write_text_file(path, "{ not json");
    EXPECT_EQ(kind_of([&] { read_json_file(path); }), ErrorKind::Input);
    std::filesystem::remove_all(dir);
}
