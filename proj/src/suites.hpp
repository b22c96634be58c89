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

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "codes.hpp"
#include "games.hpp"

namespace gapstab {

struct SuiteOptions {
    std::uint64_t seed = 1;
    int trials = 0;  // 0 selects the suite default
    double tol = 1e-9;
    Eigen::Index dim_cap = kDefaultDimCap;
    unsigned threads = 0;  // 0 = hardware concurrency
};

/// Tabular outcome of a randomized bound suite.
struct SuiteResult {
    std::string name;
    std::string constant;  // the bound being tested, e.g. "432 eps"
    int trials = 0;
    int violations = 0;
    double worst_ratio = 0;  // max lhs / bound
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, double>> stats;  // extra named figures
    std::vector<std::string> failures;                  // human-readable descriptions

    bool passed() const { return violations == 0; }
    /// Header plus one line per row, numbers printed with %.17g.
    std::string csv() const;
    std::string summary() const;
};

/// lemma17 | lemma19 | thm12 | cor14 | gh | lemma9 | sqrt2 | poincare | prop24 | codes.
const std::vector<std::string> &suite_names();
/// Throws InvalidArgument for an unknown name.
SuiteResult run_suite(const std::string &name, const SuiteOptions &opt = {});

struct SweepOptions {
    int points = 50;
    double sigma_min = 1e-3;
    double sigma_max = 0.1;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    Eigen::Index dim_cap = kDefaultDimCap;
    double tol = 1e-9;
};

/// Perturbation sweep on a combined game: rigidity report per log-spaced sigma.
/// Stats include the log-log slope of closeness against eps.
SuiteResult run_sweep(const Game &game, const SweepOptions &opt = {});

/// Least-squares slope of log y against log x over the pairs with x, y > 0.
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

struct CodeCheck {
    int q, length, dimension, distance;
    Rational predicted;             // ((q - 1) / q) (K / d)
    std::optional<Rational> exact;  // brute-force kappa when rational
    double kappa;                   // brute-force kappa in floating point
    bool match;
};
/// Predicted kappa of the code measure against the Fourier-side value.
CodeCheck code_check(LinearCode &code, double tol = 1e-9);

/// Every systematic binary generator [I_N | A] with N <= max_n, N <= K <= max_k.
std::vector<LinearCode> systematic_binary_codes(int max_n, int max_k);

/// Runs f(i) for i in [0, n) on up to `threads` workers; rethrows the first exception by index.
void parallel_for(int n, unsigned threads, const std::function<void(int)> &f);

/// s tensor 1_k on the single-block algebra M_{dk}.
SynchronousStrategy tensor_identity(const SynchronousStrategy &s, Eigen::Index k);
/// Conjugates every PVM of a single-block strategy by u.
SynchronousStrategy conjugate_strategy(const SynchronousStrategy &s, const Matrix &u);

}  // namespace gapstab
