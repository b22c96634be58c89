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

#include "serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace gapstab {

namespace {

template <class F>
auto guarded(const std::string &what, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::Input, what + ": " + e.what());
    }
}

Json rational_json(const Rational &r) { return format_rational(r); }

Rational rational_from(const Json &j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    return parse_rational(j.get<std::string>());
}

Json optional_rational(const std::optional<Rational> &r) { return r ? Json(format_rational(*r)) : Json(nullptr); }

// JSON has no infinity; unbounded constants are written as null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

const char *game_kind_name(GameKind k) {
    switch (k) {
        case GameKind::Generic: return "generic";
        case GameKind::Commutation: return "commutation";
        case GameKind::MagicSquare: return "magic_square";
        case GameKind::Combined: return "combined";
    }
    return "generic";
}

GameKind game_kind_from(const std::string &s) {
    if (s == "generic") return GameKind::Generic;
    if (s == "commutation") return GameKind::Commutation;
    if (s == "magic_square") return GameKind::MagicSquare;
    if (s == "combined") return GameKind::Combined;
    fail(ErrorKind::Input, "unknown game kind '" + s + "'");
}

RuleKind rule_kind_from(const std::string &s) {
    for (RuleKind k : {RuleKind::Table, RuleKind::Commutation, RuleKind::MagicSquareLine, RuleKind::PauliX,
                       RuleKind::PauliZ})
        if (s == rule_kind_name(k)) return k;
    fail(ErrorKind::Input, "unknown rule kind '" + s + "'");
}

}  // namespace

Json read_json_file(const std::string &path) {
    const std::string text = read_text_file(path);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::Input, path + ": " + e.what());
    }
}

void write_json_file(const std::string &path, const Json &j) { write_text_file(path, j.dump(1) + "\n"); }

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorKind::Input, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorKind::Input, "cannot write " + path);
    out << text;
    require(static_cast<bool>(out), ErrorKind::Input, "write failed for " + path);
}

Json to_json(const Matrix &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json &j) {
    return guarded("matrix", [&] {
        require(j.is_array(), ErrorKind::Input, "matrix must be an array of rows");
        const auto rows = static_cast<Eigen::Index>(j.size());
        const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
        Matrix m(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            require(static_cast<Eigen::Index>(j[r].size()) == cols, ErrorKind::Input, "ragged matrix rows");
            for (Eigen::Index c = 0; c < cols; ++c) {
                const Json &e = j[r][c];
                m(r, c) = e.is_array() ? Complex(e.at(0).get<double>(), e.at(1).get<double>()) : Complex(e.get<double>());
            }
        }
        return m;
    });
}

Json to_json(const TracialAlgebra &a) {
    Json blocks = Json::array();
    for (const auto &b : a.blocks()) blocks.push_back({{"dim", b.dim}, {"coeff", b.coeff}});
    return {{"blocks", blocks}};
}

TracialAlgebra algebra_from_json(const Json &j) {
    return guarded("algebra", [&] {
        if (j.contains("matrix")) return TracialAlgebra::matrix(j.at("matrix").get<Eigen::Index>());
        std::vector<Block> blocks;
        for (const auto &b : j.at("blocks")) {
            const auto dim = b.at("dim").get<Eigen::Index>();
            const double coeff = b.contains("coeff") ? b.at("coeff").get<double>() : 1.0 / static_cast<double>(dim);
            blocks.push_back({dim, coeff});
        }
        try {
            return TracialAlgebra(std::move(blocks));
        } catch (const Error &e) {
            fail(ErrorKind::Input, std::string("algebra: ") + e.what());
        }
    });
}

Json to_json(const Element &e) {
    Json out = Json::array();
    for (const auto &b : e.blocks()) out.push_back(to_json(b));
    return out;
}

Element element_from_json(const AlgebraPtr &algebra, const Json &j) {
    return guarded("element", [&] {
        require(j.is_array() && j.size() == algebra->num_blocks(), ErrorKind::Input,
                "element needs one matrix per algebra block");
        std::vector<Matrix> blocks;
        for (size_t i = 0; i < j.size(); ++i) {
            Matrix m = matrix_from_json(j[i]);
            require(m.rows() == algebra->dim(i) && m.cols() == algebra->dim(i), ErrorKind::Input,
                    "block " + std::to_string(i) + " has the wrong size");
            blocks.push_back(std::move(m));
        }
        return Element(algebra, std::move(blocks));
    });
}

GroupInput group_from_json(const Json &j) {
    return guarded("group", [&]() -> GroupInput {
        const std::string kind = j.at("kind").get<std::string>();
        auto positive = [&](const char *key) {
            const int n = j.at(key).get<int>();
            require(n >= 1, ErrorKind::Input, std::string("group parameter '") + key + "' must be positive");
            return n;
        };
        if (kind == "trivial") return {share(FiniteGroup::trivial()), AbelianGroup(std::vector<int>{})};
        if (kind == "cyclic") {
            const int n = positive("n");
            return {share(FiniteGroup::cyclic(n)), AbelianGroup({n})};
        }
        if (kind == "abelian") {
            auto orders = j.at("orders").get<std::vector<int>>();
            AbelianGroup a;
            try {
                a = make_group(orders);
            } catch (const Error &e) {
                fail(ErrorKind::Input, e.what());
            }
            require(a.order() <= 4096, ErrorKind::Resource, "abelian group too large for a multiplication table");
            return {share(a.to_finite_group()), a};
        }
        if (kind == "symmetric") {
            const int n = positive("n");
            require(n <= 7, ErrorKind::Resource, "symmetric groups are supported up to S_7");
            return {share(FiniteGroup::symmetric(n)), std::nullopt};
        }
        if (kind == "alternating") {
            const int n = positive("n");
            require(n <= 7, ErrorKind::Resource, "alternating groups are supported up to A_7");
            return {share(FiniteGroup::alternating(n)), std::nullopt};
        }
        if (kind == "dihedral") return {share(FiniteGroup::dihedral(positive("n"))), std::nullopt};
        if (kind == "quaternion") return {share(FiniteGroup::quaternion()), std::nullopt};
        if (kind == "product") {
            const auto &f = j.at("factors");
            require(f.size() == 2, ErrorKind::Input, "product needs two factors");
            GroupInput a = group_from_json(f[0]), b = group_from_json(f[1]);
            std::optional<AbelianGroup> ab;
            if (a.abelian && b.abelian) {
                auto orders = a.abelian->orders();
                orders.insert(orders.end(), b.abelian->orders().begin(), b.abelian->orders().end());
                ab = AbelianGroup(orders);
            }
            return {share(FiniteGroup::product(*a.group, *b.group)), ab};
        }
        if (kind == "table") {
            auto table = j.at("table").get<std::vector<std::vector<int>>>();
            try {
                return {share(FiniteGroup(std::move(table), j.value("name", std::string("table")))), std::nullopt};
            } catch (const Error &e) {
                fail(ErrorKind::Input, std::string("group table: ") + e.what());
            }
        }
        fail(ErrorKind::Input, "unknown group kind '" + kind + "'");
    });
}

MeasureInput measure_from_json(const Json &j) {
    return guarded("measure", [&]() -> MeasureInput {
        GroupInput g = group_from_json(j.at("group"));
        const int n = g.group->order();
        if (j.contains("multiset")) {
            auto ms = j.at("multiset").get<std::vector<int>>();
            for (int x : ms) require(x >= 0 && x < n, ErrorKind::Input, "multiset element out of range");
            require(!ms.empty(), ErrorKind::Input, "multiset is empty");
            return {g, ProbMeasure::uniform_on(n, ms)};
        }
        std::vector<Rational> w;
        for (const auto &x : j.at("weights")) w.push_back(rational_from(x));
        try {
            return {g, ProbMeasure(n, std::move(w))};
        } catch (const Error &e) {
            fail(ErrorKind::Input, std::string("measure: ") + e.what());
        }
    });
}

AlmostHom almost_hom_from_json(const Json &j) {
    return guarded("almost-homomorphism", [&] {
        GroupInput g = group_from_json(j.at("group"));
        auto alg = share(algebra_from_json(j.at("algebra")));
        const auto &vals = j.at("values");
        require(static_cast<int>(vals.size()) == g.group->order(), ErrorKind::Input, "one value per group element required");
        std::vector<Element> values;
        for (const auto &v : vals) values.push_back(element_from_json(alg, v));
        try {
            return AlmostHom(g.group, std::move(values), 1e-8);
        } catch (const Error &e) {
            fail(ErrorKind::Input, std::string("almost-homomorphism: ") + e.what());
        }
    });
}

Json almost_hom_to_json(const Json &group_descriptor, const AlmostHom &phi) {
    Json vals = Json::array();
    for (const auto &v : phi.values()) vals.push_back(to_json(v));
    return {{"format", "gapstab-almost-hom"}, {"group", group_descriptor}, {"algebra", to_json(*phi.algebra())},
            {"values", vals}};
}

Json to_json(const Rule &r) {
    Json j = {{"kind", rule_kind_name(r.kind)}, {"param", r.param}, {"extra", r.extra}, {"transposed", r.transposed}};
    if (r.kind == RuleKind::Table) {
        Json acc = Json::array();
        for (auto [a, b] : r.accepted) acc.push_back({a, b});
        j["accepted"] = acc;
    }
    return j;
}

Rule rule_from_json(const Json &j) {
    return guarded("rule", [&] {
        Rule r;
        r.kind = rule_kind_from(j.at("kind").get<std::string>());
        r.param = j.value("param", 0);
        r.extra = j.value("extra", 0);
        r.transposed = j.value("transposed", false);
        if (r.kind == RuleKind::Table)
            for (const auto &p : j.at("accepted")) r.accepted.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
        require(r.kind != RuleKind::Commutation || r.extra > 0, ErrorKind::Input, "commutation rule needs extra > 0");
        require(r.kind != RuleKind::MagicSquareLine || ((r.extra == 1 || r.extra == -1) && r.param >= 0 && r.param < 3),
                ErrorKind::Input, "magic-square rule needs a cell position 0..2 and a sign +-1");
        return r;
    });
}

Json to_json(const Game &g) {
    Json q = Json::array();
    for (const auto &x : g.questions) q.push_back({{"label", x.label}, {"answers", x.answers}});
    Json e = Json::array();
    for (const auto &x : g.entries)
        e.push_back({{"x", x.x}, {"y", x.y}, {"weight", rational_json(x.weight)}, {"rule", to_json(x.rule)},
                     {"stage", x.stage}});
    Json j = {{"format", "gapstab-game"},
              {"version", 1},
              {"kind", game_kind_name(g.kind)},
              {"questions", q},
              {"entries", e},
              {"distinguished", {g.distinguished[0], g.distinguished[1]}}};
    if (g.pauli) {
        const auto &p = *g.pauli;
        Json w = Json::array();
        for (const auto &x : p.omega_weight) w.push_back(rational_json(x));
        std::vector<int> plus(p.plus.begin(), p.plus.end());
        j["pauli"] = {{"orders", p.group.orders()},
                      {"px", p.px},
                      {"pz", p.pz},
                      {"omega_weight", w},
                      {"alpha", p.alpha},
                      {"beta", p.beta},
                      {"plus", plus},
                      {"omega_offset", p.omega_offset},
                      {"c", optional_rational(p.c)},
                      {"c_prime", optional_rational(p.c_prime)},
                      {"question_constant", p.question_constant}};
    }
    return j;
}

void check_format(const Json &j, const char *expected) {
    if (j.contains("format"))
        require(j["format"] == expected, ErrorKind::Input, std::string("expected format '") + expected + "'");
}

Game game_from_json(const Json &j) {
    return guarded("game", [&] {
        check_format(j, "gapstab-game");
        Game g;
        g.kind = game_kind_from(j.value("kind", std::string("generic")));
        for (const auto &q : j.at("questions")) g.questions.push_back({q.at("label").get<std::string>(), q.at("answers").get<int>()});
        for (const auto &e : j.at("entries"))
            g.entries.push_back(Entry{e.at("x").get<int>(), e.at("y").get<int>(), rational_from(e.at("weight")),
                                      rule_from_json(e.at("rule")), e.value("stage", 0)});
        if (j.contains("distinguished")) g.distinguished = {j["distinguished"].at(0).get<int>(), j["distinguished"].at(1).get<int>()};
        if (j.contains("pauli")) {
            const auto &p = j.at("pauli");
            PauliStructure ps;
            ps.group = AbelianGroup(p.at("orders").get<std::vector<int>>());
            ps.px = p.at("px").get<int>();
            ps.pz = p.at("pz").get<int>();
            for (const auto &w : p.at("omega_weight")) ps.omega_weight.push_back(rational_from(w));
            ps.alpha = p.at("alpha").get<std::vector<int>>();
            ps.beta = p.at("beta").get<std::vector<int>>();
            for (int x : p.at("plus").get<std::vector<int>>()) ps.plus.push_back(x != 0);
            ps.omega_offset = p.at("omega_offset").get<std::vector<int>>();
            if (!p.at("c").is_null()) ps.c = rational_from(p.at("c"));
            if (!p.at("c_prime").is_null()) ps.c_prime = rational_from(p.at("c_prime"));
            ps.question_constant = p.value("question_constant", 0.0);
            const size_t no = ps.omega_weight.size();
            require(ps.alpha.size() == no && ps.beta.size() == no && ps.plus.size() == no && ps.omega_offset.size() == no,
                    ErrorKind::Input, "pauli structure arrays differ in length");
            g.pauli = std::move(ps);
        }
        try {
            g.validate();
        } catch (const Error &e) {
            fail(ErrorKind::Input, std::string("game: ") + e.what());
        }
        return g;
    });
}

Game expand_rules(const Game &g, long long max_pairs) {
    Game out = g;
    for (auto &e : out.entries) {
        const long long pairs = static_cast<long long>(g.questions[e.x].answers) * g.questions[e.y].answers;
        require(pairs <= max_pairs, ErrorKind::Resource,
                "expanding a rule with " + std::to_string(pairs) + " answer pairs exceeds the limit");
        Rule t;
        for (int a = 0; a < g.questions[e.x].answers; ++a)
            for (int b = 0; b < g.questions[e.y].answers; ++b)
                if (e.rule.accepts(a, b)) t.accepted.emplace_back(a, b);
        e.rule = std::move(t);
    }
    return out;
}

Json to_json(const SynchronousStrategy &s) {
    Json pvms = Json::array();
    for (const auto &p : s.pvms) {
        Json elems = Json::array();
        for (const auto &e : p.projections()) elems.push_back(to_json(e));
        pvms.push_back(std::move(elems));
    }
    return {{"format", "gapstab-strategy"}, {"version", 1}, {"algebra", to_json(*s.algebra)}, {"pvms", pvms}};
}

SynchronousStrategy strategy_from_json(const Json &j) {
    return guarded("strategy", [&] {
        check_format(j, "gapstab-strategy");
        SynchronousStrategy s;
        s.algebra = share(algebra_from_json(j.at("algebra")));
        for (const auto &p : j.at("pvms")) {
            std::vector<Element> elems;
            for (const auto &e : p) elems.push_back(element_from_json(s.algebra, e));
            try {
                s.pvms.emplace_back(std::move(elems), 1e-8);
            } catch (const Error &e) {
                fail(ErrorKind::Input, std::string("strategy: ") + e.what());
            }
        }
        return s;
    });
}

Json to_json(const GapReport &r) {
    return {{"kappa", number(r.kappa)},
            {"second_eigenvalue", number(r.second_eigenvalue)},
            {"exact_kappa", optional_rational(r.exact_kappa)},
            {"exact_second_eigenvalue", optional_rational(r.exact_second_eigenvalue)},
            {"method", gap_method_name(r.method)}};
}

Json to_json(const RoundingCertificate &c, bool matrices) {
    Json j = {{"base", to_json(*c.base)},
              {"corner", to_json(*c.corner)},
              {"amplification", c.amplification},
              {"owner", c.owner},
              {"input_defect", c.input_defect},
              {"distance", c.distance},
              {"distance_bound", 169 * c.input_defect},
              {"trace_excess", c.trace_excess},
              {"trace_excess_bound", 16 * c.input_defect},
              {"projection_gap", c.projection_gap},
              {"isometry_defect", c.isometry_defect},
              {"distance_x", c.distance_x},
              {"x_isometry_defect", c.x_isometry_defect},
              {"x_projection_defect", c.x_projection_defect},
              {"threshold_ties", c.threshold_ties}};
    if (c.input_defect > 0) j["distance_ratio"] = c.distance / (169 * c.input_defect);
    if (matrices) {
        Json w = Json::array(), pi = Json::array();
        for (const auto &m : c.w) w.push_back(to_json(m));
        for (const auto &v : c.pi.values()) pi.push_back(to_json(v));
        j["w"] = w;
        j["pi"] = pi;
    }
    return j;
}

Json to_json(const ClosenessCertificate &c) {
    return {{"isometry_trace_defect", c.isometry_trace_defect},
            {"projection_trace_defect", c.projection_trace_defect},
            {"strategy_distance", c.strategy_distance},
            {"epsilon", c.epsilon()}};
}

Json to_json(const RigidityReport &r) {
    const auto &p = r.rounding.pair;
    return {{"value", r.value},
            {"eps", r.eps},
            {"stage_eps", {r.stage_eps[1], r.stage_eps[2], r.stage_eps[3]}},
            {"stage_sum", r.stage_sum},
            {"stage_bound", r.stage_bound},
            {"c", number(r.c)},
            {"c_prime", number(r.c_prime)},
            {"rigidity_lhs", r.rigidity_lhs},
            {"rigidity_bound", number(r.rigidity_bound)},
            {"rigidity_weighted", r.rigidity_weighted},
            {"rigidity_weighted_bound", 1320 * r.eps},
            {"twisted_eps", p.eps},
            {"distance_u", p.distance_u},
            {"distance_v", p.distance_v},
            {"relation_residual", p.relation_residual},
            {"rounding_constant", p.constant},
            {"composed_constant", number(r.rounding.composed_constant)},
            {"amplification",
             {{"lhs", r.rounding.amplification.lhs},
              {"direct_lhs", r.rounding.amplification.direct_lhs},
              {"weighted", r.rounding.amplification.weighted},
              {"rhs", r.rounding.amplification.rhs}}},
            {"certificate", to_json(p.cert)},
            {"closeness", to_json(r.closeness)},
            {"bridge_distance", r.bridge_distance},
            {"measured_constant", r.measured_constant}};
}

Json to_json(const CommutationBound &b) {
    Json j = {{"eps", b.eps}, {"lhs_projections", b.lhs_projections}, {"bound_projections", b.bound_projections}};
    if (b.lhs_unitary) {
        j["lhs_unitary"] = *b.lhs_unitary;
        j["bound_unitary"] = b.bound_unitary;
    }
    return j;
}

Json to_json(const AnticommutationBound &b) {
    return {{"eps", b.eps},         {"lhs", b.lhs},
            {"bound", b.bound},     {"eta_squared", b.eta_squared},
            {"eta_squared_sum", b.eta_squared_sum}, {"eta_bound", b.eta_bound}};
}

Json to_json(const ProductStabilization &p) {
    return {{"eps", p.eps},
            {"eps11", p.eps11},
            {"eps22", p.eps22},
            {"eps12", p.eps12},
            {"eps21", p.eps21},
            {"first_defect", p.first_defect},
            {"first_distance", p.first_distance},
            {"eta_l2_squared", p.eta_l2_squared},
            {"eta_comparison", p.eta_comparison},
            {"kappa_mu1", p.kappa_mu1},
            {"second_defect", p.second_defect},
            {"v_distance", p.v_distance},
            {"final_distance", p.final_distance},
            {"distance_g1", p.distance_g1},
            {"distance_g2", p.distance_g2},
            {"empirical_constant", p.empirical_constant},
            {"certificate", to_json(p.cert)}};
}

}  // namespace gapstab
