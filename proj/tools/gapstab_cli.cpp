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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gapstab.h"
#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

enum Exit { kPass = 0, kInternal = 1, kBound = 2, kInput = 3, kResource = 4 };

int exit_code(gapstab_status s) {
    switch (s) {
        case GAPSTAB_OK: return kPass;
        case GAPSTAB_BOUND_VIOLATION: return kBound;
        case GAPSTAB_RESOURCE:
        case GAPSTAB_SAMPLING_FAILURE: return kResource;
        case GAPSTAB_INTERNAL: return kInternal;
        default: return kInput;
    }
}

/// Failure carrying the exit code and the record printed on stderr.
struct Failure {
    int code;
    std::string kind;
    std::string message;
};

[[noreturn]] void input_error(const std::string &message) { throw Failure{kInput, "input", message}; }

void check(gapstab_status s) {
    if (s != GAPSTAB_OK) throw Failure{exit_code(s), gapstab_status_name(s), gapstab_last_error()};
}

struct CString {
    char *p = nullptr;
    ~CString() { gapstab_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

struct GameHandle {
    gapstab_game *p = nullptr;
    ~GameHandle() { gapstab_game_free(p); }
};

struct StrategyHandle {
    gapstab_strategy *p = nullptr;
    ~StrategyHandle() { gapstab_strategy_free(p); }
};

struct SuiteHandle {
    gapstab_suite *p = nullptr;
    ~SuiteHandle() { gapstab_suite_free(p); }
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) input_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) input_error("cannot write " + path);
    out << text;
}

/// Writes to `out` when given, otherwise to stdout.
void emit(const std::string &out, const std::string &text) {
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
}

struct Globals {
    std::uint64_t seed = 1;
    int trials = 0;
    double tol = 1e-9;
    std::int64_t dim_cap = 4096;
    unsigned threads = 0;
};

std::string str_param(const Json &p, const char *key, const fs::path &base, bool required = true) {
    if (!p.contains(key)) {
        if (required) input_error(std::string("missing parameter '") + key + "'");
        return {};
    }
    if (!p[key].is_string()) input_error(std::string("parameter '") + key + "' must be a string");
    fs::path v = p[key].get<std::string>();
    return (v.is_absolute() || base.empty() ? v : base / v).string();
}

template <class T>
T num_param(const Json &p, const char *key, T fallback) {
    if (!p.contains(key) || p[key].is_null()) return fallback;
    if (!p[key].is_number()) input_error(std::string("parameter '") + key + "' must be a number");
    return p[key].get<T>();
}

GameHandle load_game(const std::string &path) {
    GameHandle g;
    check(gapstab_game_from_json(read_file(path).c_str(), &g.p));
    return g;
}

StrategyHandle load_strategy(const std::string &path) {
    StrategyHandle s;
    check(gapstab_strategy_from_json(read_file(path).c_str(), &s.p));
    return s;
}

int op_kappa(const Json &p, const fs::path &base) {
    CString r;
    check(gapstab_kappa(read_file(str_param(p, "measure", base)).c_str(), &r.p));
    const Json j = Json::parse(r.str());
    const std::string out = str_param(p, "out", base, false);
    if (!out.empty()) write_file(out, j.dump(1) + "\n");
    const Json &best = j.contains("abelian") ? j["abelian"] : j["general"];
    std::cout << "kappa = " << (best["exact_kappa"].is_null() ? best["kappa"].dump() : best["exact_kappa"].get<std::string>())
              << " (" << best["method"].get<std::string>() << ")\n";
    if (out.empty()) std::cout << j.dump(1) << "\n";
    return kPass;
}

int op_code(const Json &p, const fs::path &base) {
    CString r;
    check(gapstab_code_report(read_file(str_param(p, "file", base)).c_str(), &r.p));
    const Json j = Json::parse(r.str());
    const std::string out = str_param(p, "out", base, false);
    if (!out.empty()) write_file(out, j.dump(1) + "\n");
    const bool ok = j["match"].get<bool>();
    std::cout << j["parameters"].get<std::string>() << "\n"
              << "kappa = " << (j["exact_kappa"].is_null() ? j["kappa"].dump() : j["exact_kappa"].get<std::string>())
              << "\npredicted = " << j["predicted_kappa"].get<std::string>() << "\n"
              << "cross-check " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kPass : kBound;
}

int op_build_game(const Json &p, const fs::path &base, const Globals &g) {
    const std::string kind = p.value("kind", std::string(p.contains("code") ? "code" : ""));
    GameHandle game;
    if (kind == "code") {
        const std::string c = read_file(str_param(p, "code", base));
        const std::string cp = p.contains("code_prime") ? read_file(str_param(p, "code_prime", base)) : c;
        check(gapstab_game_from_codes(c.c_str(), cp.c_str(), &game.p));
    } else if (kind == "commutation") {
        check(gapstab_game_commutation(num_param(p, "a1", 2), num_param(p, "a2", 2), &game.p));
    } else if (kind == "magic") {
        check(gapstab_game_magic_square(&game.p));
    } else if (kind == "gn") {
        check(gapstab_game_gn(num_param(p, "n", 0), num_param<std::uint64_t>(p, "seed", g.seed), &game.p));
    } else {
        input_error("build-game needs kind code | commutation | magic | gn");
    }
    CString j;
    check(gapstab_game_to_json(game.p, &j.p));
    emit(str_param(p, "out", base, false), j.str() + "\n");
    std::cerr << "questions: " << gapstab_game_num_questions(game.p) << "\n";
    return kPass;
}

int op_honest(const Json &p, const fs::path &base) {
    GameHandle game = load_game(str_param(p, "game", base));
    StrategyHandle s;
    check(gapstab_strategy_honest(game.p, &s.p));
    double v = 0;
    check(gapstab_value(game.p, s.p, &v));
    CString j;
    check(gapstab_strategy_to_json(s.p, &j.p));
    write_file(str_param(p, "out", base), j.str() + "\n");
    std::printf("value %.9f\n", v);
    return kPass;
}

int op_eval(const Json &p, const fs::path &base) {
    GameHandle game = load_game(str_param(p, "game", base));
    StrategyHandle s = load_strategy(str_param(p, "strategy", base));
    CString r;
    check(gapstab_evaluate(game.p, s.p, &r.p));
    const Json j = Json::parse(r.str());
    std::printf("value %.9f\n", j["value"].get<double>());
    const std::string out = str_param(p, "out", base, false);
    if (!out.empty()) write_file(out, j.dump(1) + "\n");
    int code = kPass;
    for (const char *key : {"lemma17", "lemma19"})
        if (j.contains(key)) {
            const Json &b = j[key];
            const bool ok = key[5] == '7' ? b["lhs_projections"].get<double>() <= b["bound_projections"].get<double>() + 1e-9
                                          : b["lhs"].get<double>() <= b["bound"].get<double>() + 1e-9;
            std::cout << key << " " << (ok ? "PASS" : "FAIL") << "\n";
            if (!ok) code = kBound;
        }
    return code;
}

int op_round(const Json &p, const fs::path &base, const Globals &g) {
    CString r;
    check(gapstab_round(read_file(str_param(p, "almost_hom", base)).c_str(), num_param<std::uint64_t>(p, "seed", g.seed),
                        num_param<std::int64_t>(p, "dim_cap", g.dim_cap), p.value("matrices", false) ? 1 : 0, &r.p));
    const Json j = Json::parse(r.str());
    emit(str_param(p, "out", base, false), j.dump(1) + "\n");
    const double eps = j["input_defect"].get<double>(), d = j["distance"].get<double>();
    const double te = j["trace_excess"].get<double>();
    const double slack = num_param(p, "tol", g.tol);
    const bool ok = d <= 169 * eps + slack && te <= 16 * eps + slack;
    std::fprintf(stderr, "eps %.6g  distance %.6g  (169 eps = %.6g)  trace excess %.6g  %s\n", eps, d, 169 * eps, te,
                 ok ? "PASS" : "FAIL");
    return ok ? kPass : kBound;
}

int op_rigidity(const Json &p, const fs::path &base, const Globals &g) {
    GameHandle game = load_game(str_param(p, "game", base));
    StrategyHandle s = load_strategy(str_param(p, "strategy", base));
    CString r;
    check(gapstab_rigidity(game.p, s.p, num_param<std::uint64_t>(p, "seed", g.seed),
                           num_param<std::int64_t>(p, "dim_cap", g.dim_cap), &r.p));
    const Json j = Json::parse(r.str());
    emit(str_param(p, "out", base, false), j.dump(1) + "\n");
    const bool ok = j["rigidity_bound"].is_null() ||
                    j["rigidity_lhs"].get<double>() <= j["rigidity_bound"].get<double>() + num_param(p, "tol", g.tol);
    std::fprintf(stderr, "value %.9f  eps %.6g  closeness %.6g  prop24 %s\n", j["value"].get<double>(),
                 j["eps"].get<double>(), j["closeness"]["epsilon"].get<double>(), ok ? "PASS" : "FAIL");
    return ok ? kPass : kBound;
}

int finish_suite(const SuiteHandle &s, const Json &p, const fs::path &base) {
    CString csv, summary;
    check(gapstab_suite_csv(s.p, &csv.p));
    check(gapstab_suite_summary(s.p, &summary.p));
    std::cout << summary.str();
    const std::string out = str_param(p, "out", base, false);
    if (!out.empty()) write_file(out, csv.str());
    const std::string report = str_param(p, "report", base, false);
    if (!report.empty()) {
        CString j;
        check(gapstab_suite_json(s.p, &j.p));
        write_file(report, j.str() + "\n");
    }
    return gapstab_suite_passed(s.p) ? kPass : kBound;
}

int op_verify(const Json &p, const fs::path &base, const Globals &g) {
    gapstab_suite_options o;
    gapstab_suite_options_default(&o);
    o.seed = num_param<std::uint64_t>(p, "seed", g.seed);
    o.trials = num_param(p, "trials", g.trials);
    o.tol = num_param(p, "tol", g.tol);
    o.dim_cap = num_param<std::int64_t>(p, "dim_cap", g.dim_cap);
    o.threads = num_param(p, "threads", g.threads);
    if (!p.contains("suite") || !p["suite"].is_string()) input_error("verify needs a suite name");
    SuiteHandle s;
    check(gapstab_verify(p["suite"].get<std::string>().c_str(), &o, &s.p));
    return finish_suite(s, p, base);
}

int op_sweep(const Json &p, const fs::path &base, const Globals &g) {
    GameHandle game = load_game(str_param(p, "game", base));
    gapstab_sweep_options o;
    gapstab_sweep_options_default(&o);
    o.seed = num_param<std::uint64_t>(p, "seed", g.seed);
    o.points = num_param(p, "points", g.trials > 0 ? g.trials : o.points);
    o.sigma_min = num_param(p, "sigma_min", o.sigma_min);
    o.sigma_max = num_param(p, "sigma_max", o.sigma_max);
    o.tol = num_param(p, "tol", g.tol);
    o.dim_cap = num_param<std::int64_t>(p, "dim_cap", g.dim_cap);
    o.threads = num_param(p, "threads", g.threads);
    SuiteHandle s;
    check(gapstab_sweep(game.p, &o, &s.p));
    return finish_suite(s, p, base);
}

int execute(const std::string &op, const Json &p, const fs::path &base, const Globals &g);

int op_run(const std::string &manifest_path, const Globals &cli) {
    Json m;
    try {
        m = Json::parse(read_file(manifest_path));
    } catch (const nlohmann::json::exception &e) {
        input_error(manifest_path + ": " + e.what());
    }
    if (!m.is_object()) input_error("manifest must be a JSON object");
    const fs::path base = fs::path(manifest_path).parent_path();
    Globals g = cli;
    g.seed = num_param<std::uint64_t>(m, "seed", g.seed);
    g.tol = num_param(m, "tol", g.tol);
    g.dim_cap = num_param<std::int64_t>(m, "dim_cap", g.dim_cap);
    g.threads = num_param(m, "threads", g.threads);
    g.trials = num_param(m, "trials", g.trials);
    Json steps = m.contains("steps") ? m["steps"] : Json::array({m});
    if (!steps.is_array()) input_error("'steps' must be an array");
    int worst = kPass;
    for (const auto &step : steps) {
        if (!step.is_object() || !step.contains("op") || !step["op"].is_string())
            input_error("every manifest step needs an 'op' string");
        const std::string op = step["op"].get<std::string>();
        if (op == "run") input_error("manifests cannot nest 'run'");
        const int code = execute(op, step, base, g);
        if (code != kPass && (worst == kPass || code != kBound)) worst = code;
    }
    return worst;
}

int execute(const std::string &op, const Json &p, const fs::path &base, const Globals &g) {
    if (op == "kappa") return op_kappa(p, base);
    if (op == "code") return op_code(p, base);
    if (op == "build-game") return op_build_game(p, base, g);
    if (op == "honest") return op_honest(p, base);
    if (op == "eval") return op_eval(p, base);
    if (op == "round") return op_round(p, base, g);
    if (op == "rigidity") return op_rigidity(p, base, g);
    if (op == "verify") return op_verify(p, base, g);
    if (op == "sweep") return op_sweep(p, base, g);
    input_error("unknown operation '" + op + "'");
}

void print_failure(const Failure &f) {
    const Json rec = {{"error", f.kind}, {"exit_code", f.code}, {"message", f.message}};
    std::cerr << rec.dump() << "\n";
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Spectral-gap, stability and non-local game laboratory"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    std::string out;
    app.add_option("--seed", g.seed, "Base seed; trials use derived seeds");
    app.add_option("--trials", g.trials, "Trial count (0 = suite default)")->check(CLI::NonNegativeNumber);
    app.add_option("--tol", g.tol, "Absolute slack on every bound")->check(CLI::NonNegativeNumber);
    app.add_option("--dim-cap", g.dim_cap, "Largest dense matrix dimension")->check(CLI::PositiveNumber);
    app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
    app.add_option("--out", out, "Output file");

    Json p;
    std::string op;
    auto positional = [&](CLI::App *sub, const char *key, const char *help) {
        sub->add_option_function<std::string>(key, [&p, key](const std::string &v) { p[key] = v; }, help)->required();
    };

    auto *kappa = app.add_subcommand("kappa", "Spectral gap constant of a measure file");
    positional(kappa, "measure", "Measure JSON");

    auto *code = app.add_subcommand("code", "Code parameters and the kappa cross-check");
    positional(code, "file", "Code file");

    auto *build = app.add_subcommand("build-game", "Write a game file");
    std::string code_a, code_b, builtin;
    int gn = 0, a1 = 2, a2 = 2;
    build->add_option("--code", code_a, "Code file for the first law");
    build->add_option("--code-prime", code_b, "Code file for the second law (default: same code)");
    build->add_option("--builtin", builtin, "commutation | magic")->check(CLI::IsMember({"commutation", "magic"}));
    build->add_option("--gn", gn, "Game from a code of length 4n and dimension n");
    build->add_option("--a1", a1, "Answers of the first commutation question");
    build->add_option("--a2", a2, "Answers of the second commutation question");

    auto *honest = app.add_subcommand("honest", "Write the honest strategy of a game and print its value");
    positional(honest, "game", "Game JSON");

    auto *eval = app.add_subcommand("eval", "Value of a strategy");
    positional(eval, "game", "Game JSON");
    positional(eval, "strategy", "Strategy JSON");

    auto *round = app.add_subcommand("round", "Gowers-Hatami rounding certificate");
    positional(round, "almost_hom", "Almost homomorphism JSON");
    bool matrices = false;
    round->add_flag("--matrices", matrices, "Include w and pi in the certificate");

    auto *rigidity = app.add_subcommand("rigidity", "Pauli rigidity report");
    positional(rigidity, "game", "Combined game JSON");
    positional(rigidity, "strategy", "Strategy JSON");

    auto *verify = app.add_subcommand("verify", "Randomized bound suite");
    positional(verify, "suite", "lemma17 | lemma19 | thm12 | cor14 | gh | lemma9 | sqrt2 | poincare | prop24 | codes");
    std::string report;
    verify->add_option("--report", report, "JSON summary file");

    auto *sweep = app.add_subcommand("sweep", "Perturbation sweep on a combined game");
    positional(sweep, "game", "Combined game JSON");
    double smin = 1e-3, smax = 0.1;
    sweep->add_option("--sigma-min", smin, "Smallest perturbation")->check(CLI::PositiveNumber);
    sweep->add_option("--sigma-max", smax, "Largest perturbation")->check(CLI::PositiveNumber);
    sweep->add_option("--report", report, "JSON summary file");

    auto *run = app.add_subcommand("run", "Execute a manifest");
    std::string manifest;
    run->add_option("manifest", manifest, "Manifest JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kInput;
    }

    try {
        if (run->parsed()) return op_run(manifest, g);
        for (auto *sub : app.get_subcommands()) op = sub->get_name();
        if (!out.empty()) p["out"] = out;
        if (!report.empty()) p["report"] = report;
        if (op == "build-game") {
            if (!code_a.empty()) {
                p["kind"] = "code";
                p["code"] = code_a;
                if (!code_b.empty()) p["code_prime"] = code_b;
            } else if (gn > 0) {
                p["kind"] = "gn";
                p["n"] = gn;
            } else {
                p["kind"] = builtin;
                p["a1"] = a1;
                p["a2"] = a2;
            }
        }
        if (op == "round") p["matrices"] = matrices;
        if (op == "sweep") {
            p["sigma_min"] = smin;
            p["sigma_max"] = smax;
        }
        return execute(op, p, {}, g);
    } catch (const Failure &f) {
        print_failure(f);
        return f.code;
    } catch (const std::exception &e) {
        print_failure({kInternal, "internal", e.what()});
        return kInternal;
    }
}
