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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "algebra.hpp"
#include "codes.hpp"
#include "rational.hpp"
#include "stability.hpp"

namespace gapstab {

// Answer conventions: a +-1 answer is stored as 0 (+1) or 1 (-1); the commutation
// question y answers a * |A2| + b; a magic-square line answers the index of a 3-bit
// sign pattern (bit k set = cell k answers -1) among the patterns of the right parity;
// PX and PZ answers are group element indices of H.
enum class RuleKind { Table, Commutation, MagicSquareLine, PauliX, PauliZ };

const char *rule_kind_name(RuleKind k);

/// Decision rule on one question pair (x, y), evaluated on answer indices.
struct Rule {
    RuleKind kind = RuleKind::Table;
    std::vector<std::pair<int, int>> accepted;  // Table
    int param = 0;  // Commutation: component; MagicSquareLine: cell position; PauliX/Z: alpha or beta
    int extra = 0;  // Commutation: |A2|; MagicSquareLine: alpha(line)
    bool transposed = false;  // evaluate D(y, x, b, a)

    bool accepts(int a, int b) const;
    Rule transpose() const;
    bool operator==(const Rule &) const = default;
};

/// The k-th 3-bit pattern whose parity matches alpha (ascending order).
int line_pattern(int alpha, int k);

struct Question {
    std::string label;
    int answers;
};

struct Entry {
    int x, y;
    Rational weight;
    Rule rule;
    int stage = 0;  // case of the combined question law, 1..3
};

enum class GameKind { Generic, Commutation, MagicSquare, Combined };

/// Data of a game built from H, Omega, alpha, beta.
struct PauliStructure {
    AbelianGroup group;
    int px = 0, pz = 0;
    std::vector<Rational> omega_weight;
    std::vector<int> alpha, beta;
    std::vector<bool> plus;         // <beta, alpha> = 1
    std::vector<int> omega_offset;  // first question of each omega copy
    std::optional<Rational> c, c_prime;  // exact kappa of the laws of alpha and beta
    double question_constant = 0;        // |X| / N^2

    int sub_question(int omega, int j) const;  // j = 0, 1: the two distinguished sub-questions
    ProbMeasure alpha_law() const;
    ProbMeasure beta_law() const;
};

struct Game {
    GameKind kind = GameKind::Generic;
    std::vector<Question> questions;
    std::vector<Entry> entries;
    std::array<int, 2> distinguished{-1, -1};
    std::optional<PauliStructure> pauli;

    int num_questions() const { return static_cast<int>(questions.size()); }
    /// (1/2) sum_y mu(x, y) + mu(y, x).
    Rational marginal(int x) const;
    /// sum_y mu(x, y).
    Rational first_marginal(int x) const;
    Rational total_weight() const;
    /// mu sums to 1, indices and answers valid, D symmetric where doubly defined; throws InvalidArgument.
    void validate() const;
};

struct SynchronousStrategy {
    AlgebraPtr algebra;
    std::vector<Pvm> pvms;  // indexed by question
};

void validate_strategy(const Game &game, const SynchronousStrategy &s);

/// Value with the observable shortcut on PX/PZ rules.
double value(const Game &game, const SynchronousStrategy &s);
/// Value by the explicit double sum over answers.
double value_direct(const Game &game, const SynchronousStrategy &s);
/// Failure probability conditioned on each stage 1..3 (index 0 unused).
std::array<double, 4> stage_failures(const Game &game, const SynchronousStrategy &s);

/// Symmetrized question law (mu + mu~) / 2 with D extended by symmetry.
Game symmetrize(const Game &game);

/// Deterministic strategy: one answer per question, on the one-dimensional algebra.
SynchronousStrategy deterministic_strategy(const Game &game, const std::vector<int> &answers);
Rational deterministic_value(const Game &game, const std::vector<int> &answers);
/// Exhaustive maximum over deterministic strategies; throws Resource above cap assignments.
Rational best_deterministic_value(const Game &game, std::uint64_t cap = std::uint64_t{1} << 24);

struct ClosenessCertificate {
    double isometry_trace_defect = 0;    // tau(1 - w^* w)
    double projection_trace_defect = 0;  // tau'(P - w w^*)
    double strategy_distance = 0;        // E_x sum_a ||P^x_a - w^* Q^x_a w||_2^2
    double epsilon() const;
};

/// a on the base algebra of cert, b on its corner; weights over the listed PVM pairs.
ClosenessCertificate closeness(const std::vector<Pvm> &a, const std::vector<Pvm> &b, const std::vector<double> &weights,
                               const RoundingCertificate &cert);
/// All questions, weighted by the marginal.
ClosenessCertificate closeness(const Game &game, const SynchronousStrategy &a, const SynchronousStrategy &b,
                               const RoundingCertificate &cert);

struct ClosenessBridge {
    double unitary_side;     // E_h ||U(h) - w^* V(h) w||_2^2
    double projection_side;  // sum_chi ||P_chi - w^* Q_chi w||_2^2
};
ClosenessBridge closeness_bridge(const AbelianGroup &group, const UnitaryRep &u, const UnitaryRep &v,
                                 const RoundingCertificate &cert);

Game commutation_game(int a1 = 2, int a2 = 2);

struct CommutationBound {
    double eps;
    double lhs_projections;  // sum_{a,b} ||[p_a, q_b]||_2^2
    double bound_projections;  // 16 eps
    std::optional<double> lhs_unitary;  // ||[p_1 - p_-1, q_1 - q_-1]||_2^2 for +-1 answers
    double bound_unitary;               // 64 eps
};
CommutationBound commutation_bound_check(const Pvm &p, const Pvm &q, double eps);
CommutationBound commutation_bound_check(const Game &game, const SynchronousStrategy &s);

Game magic_square_game();
/// Cell (r, c), 0-based, and line indices (rows h1..h3 then columns v1..v3) within the game.
inline int magic_cell(int r, int c) { return r * 3 + c; }
inline int magic_line(int l) { return 9 + l; }
std::array<int, 3> magic_line_cells(int l);
int magic_line_sign(int l);

struct AnticommutationBound {
    double eps;
    double lhs;    // ||UV + VU||_2^2 at the distinguished cells
    double bound;  // 432 eps
    std::array<double, 6> eta_squared;  // per line
    double eta_squared_sum;
    double eta_bound;  // 24 eps
};
/// pvms: the 15 magic-square PVMs in game order.
AnticommutationBound anticommutation_bound_check(const std::vector<Pvm> &pvms, double eps);
AnticommutationBound anticommutation_bound_check(const Game &game, const SynchronousStrategy &s);

/// Magic-square observables (row-major) from anticommuting self-adjoint unitaries P, Q, using one auxiliary qubit.
std::array<Matrix, 9> magic_square_grid(const Matrix &p, const Matrix &q);
struct GridCheck {
    double involution;    // max ||A^2 - 1||, ||A - A^*||
    double commutation;   // max ||[A, B]|| within a line
    double line_product;  // max ||A B C - alpha I||
};
GridCheck check_grid(const std::array<Matrix, 9> &grid);

struct PauliPvms {
    AlgebraPtr algebra;
    Pvm x;  // over characters
    Pvm z;  // over group elements
};
/// tau^X and tau^Z on M_{2^N}; throws Resource when dense storage exceeds the cap.
PauliPvms pauli_pvms(int n, Eigen::Index dim_cap = kDefaultDimCap);
/// lambda(a) and M(chi) on C^{2^N}.
Matrix pauli_translation(int n, int a);
Matrix pauli_modulation(int n, int chi);

/// Combined game for exponent-2 H; alpha and beta must be independent under omega_weight.
Game combined_game(const AbelianGroup &h, const std::vector<Rational> &omega_weight, const std::vector<int> &alpha,
                   const std::vector<int> &beta);
/// Omega = supp(mu_C) x supp(mu_C') weighted by mu_C x mu_C'; C and C' binary of equal dimension.
Game game_from_code(LinearCode &c, LinearCode &c_prime);

/// Binary code with K = 4N: exhaustive search when small, otherwise verified random sampling with d >= ceil(0.3 K).
LinearCode gn_code(int n, Rng &rng);
Game gn_game(LinearCode &code);

/// Perfect strategy: commuting diagonal PVMs, the two-qubit magic square, or the Pauli strategy with one auxiliary qubit.
SynchronousStrategy honest_strategy(const Game &game);

struct RigidityReport {
    double value = 0;
    double eps = 0;
    std::array<double, 4> stage_eps{};  // eps_1..eps_3 in slots 1..3
    double stage_sum = 0;
    double stage_bound = 0;  // 3 eps
    double c = 0, c_prime = 0;
    double rigidity_lhs = 0;       // (1/|H|^2) sum ||U(h)V(chi) - chi(h)V(chi)U(h)||_2^2
    double rigidity_weighted = 0;  // the same integrated against the laws of alpha and beta
    double rigidity_bound = 0;     // 1320 c c' eps
    PauliRounding rounding;
    ClosenessCertificate closeness;
    double bridge_distance = 0;  // (distance_u + distance_v) / 2
    double measured_constant = 0;  // closeness epsilon / eps
};
RigidityReport pauli_rigidity_report(const Game &game, const SynchronousStrategy &s, Rng &rng,
                                     const RoundingOptions &opt = {});

/// Conjugates every PVM by exp(i sigma H_x), H_x Gaussian self-adjoint of unit normalized 2-norm.
SynchronousStrategy perturb_strategy(const SynchronousStrategy &s, double sigma, Rng &rng);

}  // namespace gapstab
