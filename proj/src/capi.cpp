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

#include "gapstab.h"

#include <cstring>
#include <memory>
#include <string>

#include "error.hpp"
#include "serialize.hpp"
#include "suites.hpp"

using namespace gapstab;

struct gapstab_game {
    Game game;
};

struct gapstab_strategy {
    SynchronousStrategy strategy;
};

struct gapstab_suite {
    SuiteResult result;
};

namespace {

thread_local std::string last_error;

gapstab_status status_of(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument: return GAPSTAB_INVALID_ARGUMENT;
        case ErrorKind::InvalidPvm: return GAPSTAB_INVALID_PVM;
        case ErrorKind::InvalidRepresentation: return GAPSTAB_INVALID_REPRESENTATION;
        case ErrorKind::InvalidField: return GAPSTAB_INVALID_FIELD;
        case ErrorKind::NonGenerating: return GAPSTAB_NON_GENERATING;
        case ErrorKind::RankDeficient: return GAPSTAB_RANK_DEFICIENT;
        case ErrorKind::Resource: return GAPSTAB_RESOURCE;
        case ErrorKind::SamplingFailure: return GAPSTAB_SAMPLING_FAILURE;
        case ErrorKind::PreconditionViolation: return GAPSTAB_PRECONDITION_VIOLATION;
        case ErrorKind::Degenerate: return GAPSTAB_DEGENERATE;
        case ErrorKind::Input: return GAPSTAB_INPUT;
        case ErrorKind::BoundViolation: return GAPSTAB_BOUND_VIOLATION;
        case ErrorKind::Internal: return GAPSTAB_INTERNAL;
    }
    return GAPSTAB_INTERNAL;
}

template <class F>
gapstab_status guard(F &&f) {
    try {
        f();
        last_error.clear();
        return GAPSTAB_OK;
    } catch (const Error &e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return GAPSTAB_RESOURCE;
    } catch (const std::exception &e) {
        last_error = e.what();
        return GAPSTAB_INTERNAL;
    } catch (...) {
        last_error = "unknown failure";
        return GAPSTAB_INTERNAL;
    }
}

char *copy_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void need(const void *p, const char *what) {
    require(p != nullptr, ErrorKind::InvalidArgument, std::string(what) + " is null");
}

Json parse(const char *text) {
    need(text, "JSON text");
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::Input, e.what());
    }
}

std::string dump(const Json &j) { return j.dump(1); }

Json suite_json(const SuiteResult &r) {
    Json stats = Json::object();
    for (const auto &[k, v] : r.stats) stats[k] = std::isfinite(v) ? Json(v) : Json(nullptr);
    return {{"suite", r.name},     {"bound", r.constant},       {"passed", r.passed()},
            {"trials", r.trials},  {"violations", r.violations}, {"worst_ratio", r.worst_ratio},
            {"stats", stats},      {"failures", r.failures}};
}

}  // namespace

extern "C" {

const char *gapstab_version(void) { return "1.0.0"; }

const char *gapstab_status_name(gapstab_status status) {
    switch (status) {
        case GAPSTAB_OK: return "ok";
        case GAPSTAB_INVALID_ARGUMENT: return error_kind_name(ErrorKind::InvalidArgument);
        case GAPSTAB_INVALID_PVM: return error_kind_name(ErrorKind::InvalidPvm);
        case GAPSTAB_INVALID_REPRESENTATION: return error_kind_name(ErrorKind::InvalidRepresentation);
        case GAPSTAB_INVALID_FIELD: return error_kind_name(ErrorKind::InvalidField);
        case GAPSTAB_NON_GENERATING: return error_kind_name(ErrorKind::NonGenerating);
        case GAPSTAB_RANK_DEFICIENT: return error_kind_name(ErrorKind::RankDeficient);
        case GAPSTAB_RESOURCE: return error_kind_name(ErrorKind::Resource);
        case GAPSTAB_SAMPLING_FAILURE: return error_kind_name(ErrorKind::SamplingFailure);
        case GAPSTAB_PRECONDITION_VIOLATION: return error_kind_name(ErrorKind::PreconditionViolation);
        case GAPSTAB_DEGENERATE: return error_kind_name(ErrorKind::Degenerate);
        case GAPSTAB_INPUT: return error_kind_name(ErrorKind::Input);
        case GAPSTAB_BOUND_VIOLATION: return error_kind_name(ErrorKind::BoundViolation);
        case GAPSTAB_INTERNAL: return error_kind_name(ErrorKind::Internal);
    }
    return "unknown";
}

const char *gapstab_last_error(void) { return last_error.c_str(); }

void gapstab_string_free(char *s) { std::free(s); }

void gapstab_suite_options_default(gapstab_suite_options *opt) {
    if (!opt) return;
    const SuiteOptions d;
    *opt = {d.seed, d.trials, d.tol, static_cast<int64_t>(d.dim_cap), d.threads};
}

void gapstab_sweep_options_default(gapstab_sweep_options *opt) {
    if (!opt) return;
    const SweepOptions d;
    *opt = {d.seed, d.points, d.sigma_min, d.sigma_max, d.tol, static_cast<int64_t>(d.dim_cap), d.threads};
}

gapstab_status gapstab_kappa(const char *measure_json, char **report_json) {
    return guard([&] {
        need(report_json, "output");
        const MeasureInput m = measure_from_json(parse(measure_json));
        Json out = {{"group_order", m.group.group->order()},
                    {"generates", m.measure.generates(*m.group.group)},
                    {"support", m.measure.support().size()}};
        if (m.group.abelian) out["abelian"] = to_json(kappa_abelian(*m.group.abelian, m.measure));
        if (m.group.group->order() <= 5040) out["general"] = to_json(kappa_general(*m.group.group, m.measure));
        *report_json = copy_string(dump(out));
    });
}

gapstab_status gapstab_code_report(const char *code_text, char **report_json) {
    return guard([&] {
        need(code_text, "code text");
        need(report_json, "output");
        LinearCode code = parse_code(code_text);
        const CodeCheck c = code_check(code);
        Json out = {{"q", c.q},
                    {"length", c.length},
                    {"dimension", c.dimension},
                    {"distance", c.distance},
                    {"parameters", "[" + std::to_string(c.length) + "," + std::to_string(c.dimension) + "," +
                                       std::to_string(c.distance) + "]_" + std::to_string(c.q)},
                    {"predicted_kappa", format_rational(c.predicted)},
                    {"kappa", c.kappa},
                    {"exact_kappa", c.exact ? Json(format_rational(*c.exact)) : Json(nullptr)},
                    {"match", c.match}};
        *report_json = copy_string(dump(out));
    });
}

gapstab_status gapstab_game_commutation(int a1, int a2, gapstab_game **out) {
    return guard([&] {
        need(out, "output");
        *out = new gapstab_game{commutation_game(a1, a2)};
    });
}

gapstab_status gapstab_game_magic_square(gapstab_game **out) {
    return guard([&] {
        need(out, "output");
        *out = new gapstab_game{magic_square_game()};
    });
}

gapstab_status gapstab_game_from_codes(const char *code_text, const char *code_prime_text, gapstab_game **out) {
    return guard([&] {
        need(code_text, "code text");
        need(out, "output");
        LinearCode c = parse_code(code_text);
        LinearCode cp = parse_code(code_prime_text ? code_prime_text : code_text);
        *out = new gapstab_game{game_from_code(c, cp)};
    });
}

gapstab_status gapstab_game_gn(int n, uint64_t seed, gapstab_game **out) {
    return guard([&] {
        need(out, "output");
        require(n >= 1 && n <= 7, ErrorKind::InvalidArgument, "n must lie in 1..7");
        Rng rng(seed);
        LinearCode code = gn_code(n, rng);
        *out = new gapstab_game{gn_game(code)};
    });
}

gapstab_status gapstab_game_from_json(const char *json, gapstab_game **out) {
    return guard([&] {
        need(out, "output");
        *out = new gapstab_game{game_from_json(parse(json))};
    });
}

gapstab_status gapstab_game_to_json(const gapstab_game *game, char **json) {
    return guard([&] {
        need(game, "game");
        need(json, "output");
        *json = copy_string(dump(to_json(game->game)));
    });
}

int gapstab_game_num_questions(const gapstab_game *game) { return game ? game->game.num_questions() : -1; }

void gapstab_game_free(gapstab_game *game) { delete game; }

gapstab_status gapstab_strategy_honest(const gapstab_game *game, gapstab_strategy **out) {
    return guard([&] {
        need(game, "game");
        need(out, "output");
        require(game->game.kind != GameKind::Generic, ErrorKind::InvalidArgument,
                "honest strategies exist for the built-in game kinds only");
        *out = new gapstab_strategy{honest_strategy(game->game)};
    });
}

gapstab_status gapstab_strategy_from_json(const char *json, gapstab_strategy **out) {
    return guard([&] {
        need(out, "output");
        *out = new gapstab_strategy{strategy_from_json(parse(json))};
    });
}

gapstab_status gapstab_strategy_to_json(const gapstab_strategy *s, char **json) {
    return guard([&] {
        need(s, "strategy");
        need(json, "output");
        *json = copy_string(dump(to_json(s->strategy)));
    });
}

gapstab_status gapstab_strategy_perturb(const gapstab_strategy *s, double sigma, uint64_t seed,
                                        gapstab_strategy **out) {
    return guard([&] {
        need(s, "strategy");
        need(out, "output");
        Rng rng(seed);
        *out = new gapstab_strategy{perturb_strategy(s->strategy, sigma, rng)};
    });
}

void gapstab_strategy_free(gapstab_strategy *s) { delete s; }

gapstab_status gapstab_value(const gapstab_game *game, const gapstab_strategy *s, double *out) {
    return guard([&] {
        need(game, "game");
        need(s, "strategy");
        need(out, "output");
        validate_strategy(game->game, s->strategy);
        *out = value(game->game, s->strategy);
    });
}

gapstab_status gapstab_evaluate(const gapstab_game *game, const gapstab_strategy *s, char **report_json) {
    return guard([&] {
        need(game, "game");
        need(s, "strategy");
        need(report_json, "output");
        const Game &g = game->game;
        validate_strategy(g, s->strategy);
        const double v = value(g, s->strategy);
        Json out = {{"value", v}, {"eps", std::max(0.0, 1.0 - v)}};
        long long pairs = 0;
        for (const auto &e : g.entries) pairs += static_cast<long long>(g.questions[e.x].answers) * g.questions[e.y].answers;
        if (pairs <= (1 << 22)) out["value_direct"] = value_direct(g, s->strategy);
        if (g.kind == GameKind::Combined) {
            const auto st = stage_failures(g, s->strategy);
            out["stage_eps"] = {st[1], st[2], st[3]};
        }
        if (g.kind == GameKind::Commutation) out["lemma17"] = to_json(commutation_bound_check(g, s->strategy));
        if (g.kind == GameKind::MagicSquare) out["lemma19"] = to_json(anticommutation_bound_check(g, s->strategy));
        *report_json = copy_string(dump(out));
    });
}

gapstab_status gapstab_rigidity(const gapstab_game *game, const gapstab_strategy *s, uint64_t seed, int64_t dim_cap,
                                char **report_json) {
    return guard([&] {
        need(game, "game");
        need(s, "strategy");
        need(report_json, "output");
        validate_strategy(game->game, s->strategy);
        Rng rng(seed);
        RoundingOptions opt;
        if (dim_cap > 0) opt.dim_cap = dim_cap;
        const RigidityReport r = pauli_rigidity_report(game->game, s->strategy, rng, opt);
        *report_json = copy_string(dump(to_json(r)));
    });
}

gapstab_status gapstab_round(const char *almost_hom_json, uint64_t seed, int64_t dim_cap, int include_matrices,
                             char **certificate_json) {
    return guard([&] {
        need(certificate_json, "output");
        const AlmostHom phi = almost_hom_from_json(parse(almost_hom_json));
        Rng rng(seed);
        RoundingOptions opt;
        if (dim_cap > 0) opt.dim_cap = dim_cap;
        const RoundingCertificate cert = gowers_hatami_round(phi, rng, opt);
        Json out = to_json(cert, include_matrices != 0);
        out["group_order"] = phi.g().order();
        *certificate_json = copy_string(dump(out));
    });
}

size_t gapstab_suite_count(void) { return suite_names().size(); }

const char *gapstab_suite_name(size_t index) {
    return index < suite_names().size() ? suite_names()[index].c_str() : nullptr;
}

gapstab_status gapstab_verify(const char *suite, const gapstab_suite_options *opt, gapstab_suite **out) {
    return guard([&] {
        need(suite, "suite name");
        need(out, "output");
        SuiteOptions o;
        if (opt) {
            o.seed = opt->seed;
            o.trials = opt->trials;
            o.tol = opt->tol;
            if (opt->dim_cap > 0) o.dim_cap = opt->dim_cap;
            o.threads = opt->threads;
        }
        require(o.trials >= 0, ErrorKind::InvalidArgument, "trials must be nonnegative");
        *out = new gapstab_suite{run_suite(suite, o)};
    });
}

gapstab_status gapstab_sweep(const gapstab_game *game, const gapstab_sweep_options *opt, gapstab_suite **out) {
    return guard([&] {
        need(game, "game");
        need(out, "output");
        SweepOptions o;
        if (opt) {
            o.seed = opt->seed;
            o.points = opt->points;
            o.sigma_min = opt->sigma_min;
            o.sigma_max = opt->sigma_max;
            o.tol = opt->tol;
            if (opt->dim_cap > 0) o.dim_cap = opt->dim_cap;
            o.threads = opt->threads;
        }
        *out = new gapstab_suite{run_sweep(game->game, o)};
    });
}

int gapstab_suite_passed(const gapstab_suite *suite) { return suite && suite->result.passed() ? 1 : 0; }

int gapstab_suite_trials(const gapstab_suite *suite) { return suite ? suite->result.trials : -1; }

int gapstab_suite_violations(const gapstab_suite *suite) { return suite ? suite->result.violations : -1; }

double gapstab_suite_worst_ratio(const gapstab_suite *suite) { return suite ? suite->result.worst_ratio : 0.0; }

gapstab_status gapstab_suite_csv(const gapstab_suite *suite, char **csv) {
    return guard([&] {
        need(suite, "suite");
        need(csv, "output");
        *csv = copy_string(suite->result.csv());
    });
}

gapstab_status gapstab_suite_summary(const gapstab_suite *suite, char **text) {
    return guard([&] {
        need(suite, "suite");
        need(text, "output");
        *text = copy_string(suite->result.summary());
    });
}

gapstab_status gapstab_suite_json(const gapstab_suite *suite, char **json) {
    return guard([&] {
        need(suite, "suite");
        need(json, "output");
        *json = copy_string(dump(suite_json(suite->result)));
    });
}

void gapstab_suite_free(gapstab_suite *suite) { delete suite; }

}  // extern "C"
