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

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "error.hpp"
#include "games.hpp"
#include "spectral.hpp"
#include "suites.hpp"

using namespace gapstab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

double stat(const SuiteResult &r, const std::string &key) {
    for (const auto &[k, v] : r.stats)
        if (k == key) return v;
    return std::nan("");
}

std::string suite_detail(const SuiteResult &r) {
    return r.name + " " + std::to_string(r.trials) + " trials, " + std::to_string(r.violations) +
           " violations, worst ratio " + fmt(r.worst_ratio);
}

LinearCode repetition() { return code_new(2, {{1, 1, 1}}); }

LinearCode hamming() {
    return code_new(2, {{1, 0, 0, 0, 0, 1, 1}, {0, 1, 0, 0, 1, 0, 1}, {0, 0, 1, 0, 1, 1, 0}, {0, 0, 0, 1, 1, 1, 1}});
}

Outcome criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult r = run_suite("codes");
    const double t = seconds_since(t0);
    const double exhaustive = stat(r, "exhaustive_codes");
    return {r.passed() && t < 30 && exhaustive > 0,
            suite_detail(r) + ", " + fmt(exhaustive) + " exhaustive codes, " + fmt(t) + " s (limit 30 s)"};
}

Outcome criterion2() {
    bool ok = true;
    std::string detail;
    const std::pair<LinearCode (*)(), Rational> anchors[] = {{repetition, Rational(1, 2)}, {hamming, Rational(7, 6)}};
    for (const auto &[make, expected] : anchors) {
        LinearCode c = make();
        CodeMeasure cm = measure_from_code(c);
        GapReport fourier = kappa_abelian(cm.group, cm.measure);
        GapReport regular = kappa_general(cm.group.to_finite_group(), cm.measure);
        ok = ok && cm.predicted_kappa == expected && fourier.exact_kappa && *fourier.exact_kappa == expected &&
             std::abs(regular.kappa - to_double(expected)) < 1e-9;
        detail += "[" + std::to_string(c.length()) + "," + std::to_string(c.dimension()) + "," +
                  std::to_string(cm.distance) + "] predicted " + format_rational(cm.predicted_kappa) + " fourier " +
                  (fourier.exact_kappa ? format_rational(*fourier.exact_kappa) : "?") + " regular " +
                  fmt(regular.kappa) + "; ";
    }
    return {ok, detail};
}

Outcome criterion3() {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult r = run_suite("gh");
    const double t = seconds_since(t0);
    return {r.passed() && r.trials >= 200 && t < 300, suite_detail(r) + ", " + fmt(t) + " s (limit 300 s)"};
}

Outcome criterion4() {
    SuiteResult r = run_suite("lemma9");
    return {r.passed(), suite_detail(r)};
}

Outcome criterion5() {
    SuiteResult a = run_suite("thm12");
    SuiteResult b = run_suite("cor14");
    return {a.passed() && b.passed() && a.trials >= 500 && b.trials >= 500,
            suite_detail(a) + "; " + suite_detail(b)};
}

Outcome criterion6() {
    SuiteResult a = run_suite("poincare");
    SuiteResult b = run_suite("sqrt2");
    const double gap = stat(b, "tightness_gap");
    return {a.passed() && b.passed() && a.trials >= 1000 && b.trials >= 1000 && gap < 1e-9,
            suite_detail(a) + "; " + suite_detail(b) + ", tightness gap " + fmt(gap)};
}

Outcome criterion7() {
    bool ok = true;
    std::string detail;
    auto check = [&](const std::string &label, const Game &g) {
        const double v = value(g, honest_strategy(g));
        ok = ok && std::abs(v - 1) <= 1e-9;
        detail += label + " " + fmt(v) + "; ";
    };
    check("commutation", commutation_game());
    check("magic", magic_square_game());
    LinearCode r = repetition(), h = hamming();
    check("repetition", game_from_code(r, r));
    check("hamming", game_from_code(h, h));
    Matrix x = Matrix::Zero(2, 2), z = Matrix::Identity(2, 2);
    x(0, 1) = x(1, 0) = 1;
    z(1, 1) = -1;
    GridCheck grid = check_grid(magic_square_grid(x, z));
    const double worst = std::max({grid.involution, grid.commutation, grid.line_product});
    ok = ok && worst < 1e-10;
    detail += "grid residual " + fmt(worst);
    return {ok, detail};
}

Outcome criterion8() {
    SuiteResult a = run_suite("lemma17");
    SuiteResult b = run_suite("lemma19");
    return {a.passed() && b.passed() && a.trials >= 500 && b.trials >= 500,
            suite_detail(a) + "; " + suite_detail(b)};
}

Outcome criterion9() {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult r = run_suite("prop24");
    const double t = seconds_since(t0);
    const double s1 = stat(r, "repetition.loglog_slope"), s2 = stat(r, "hamming.loglog_slope");
    const bool slopes = std::abs(s1 - 1) <= 0.2 && std::abs(s2 - 1) <= 0.2;
    return {r.passed() && slopes && r.trials >= 400 && t < 600,
            suite_detail(r) + ", slopes " + fmt(s1) + " / " + fmt(s2) + ", constants " +
                fmt(stat(r, "repetition.max_measured_constant")) + " / " +
                fmt(stat(r, "hamming.max_measured_constant")) + ", " + fmt(t) + " s (limit 600 s)"};
}

std::string slurp(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Outcome criterion10(const std::string &cli) {
    const fs::path dir = fs::temp_directory_path() / ("gapstab_acceptance_" + std::to_string(std::rand()));
    fs::create_directories(dir);
    nlohmann::json steps = nlohmann::json::array();
    for (const auto &name : suite_names()) {
        if (name == "prop24" || name == "codes") continue;
        steps.push_back({{"op", "verify"}, {"suite", name}, {"trials", 20}, {"out", name + ".csv"}});
    }
    bool ok = true;
    int compared = 0;
    for (int run = 0; run < 2; ++run) {
        const fs::path sub = dir / ("run" + std::to_string(run));
        fs::create_directories(sub);
        nlohmann::json m = {{"seed", 2024}, {"threads", run == 0 ? 1 : 4}, {"steps", steps}};
        std::ofstream(sub / "manifest.json") << m.dump(2);
        const std::string cmd = "\"" + cli + "\" run \"" + (sub / "manifest.json").string() + "\" > \"" +
                                (sub / "log.txt").string() + "\" 2>&1";
        ok = ok && std::system(cmd.c_str()) == 0;
    }
    for (const auto &s : steps) {
        const std::string f = s["out"].get<std::string>();
        const std::string a = slurp(dir / "run0" / f), b = slurp(dir / "run1" / f);
        ok = ok && !a.empty() && a == b;
        ++compared;
    }
    fs::remove_all(dir);
    return {ok, std::to_string(compared) + " suite CSVs byte-identical across two manifest replays"};
}

}  // namespace

int main(int argc, char **argv) {
    const std::string cli = argc > 1 ? argv[1] : "gapstab_cli";
    const std::function<Outcome()> criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                 criterion6, criterion7, criterion8, criterion9,
                                                 [&] { return criterion10(cli); }};
    int failed = 0;
    for (int i = 0; i < 10; ++i) {
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << "Criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << ")"
                  << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
