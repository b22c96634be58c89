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

#include "games.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "error.hpp"
#include "spectral.hpp"

namespace gapstab {

namespace {

int parity(int x) { return std::popcount(static_cast<unsigned>(x)) & 1; }

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

double trace_product(const Element &a, const Element &b) { return inner(a, b).real(); }

Pvm binary_pvm(const AlgebraPtr &alg, const Matrix &obs) {
    const Matrix id = identity(obs.rows());
    return Pvm({Element::single(alg, (id + obs) * 0.5), Element::single(alg, (id - obs) * 0.5)});
}

// Calls f(a, b) on every accepted answer pair, oriented as (answer of e.x, answer of e.y).
template <class F>
void for_each_accepted(const Rule &rule, int na, int nb, F &&f) {
    const bool t = rule.transposed;
    const int nu = t ? nb : na, nv = t ? na : nb;
    auto emit = [&](int u, int v) { t ? f(v, u) : f(u, v); };
    switch (rule.kind) {
        case RuleKind::Table:
            for (auto [u, v] : rule.accepted) emit(u, v);
            break;
        case RuleKind::Commutation:
            for (int v = 0; v < nv; ++v) emit(rule.param == 0 ? v / rule.extra : v % rule.extra, v);
            break;
        case RuleKind::MagicSquareLine:
            for (int v = 0; v < nv; ++v) emit((line_pattern(rule.extra, v) >> rule.param) & 1, v);
            break;
        case RuleKind::PauliX:
        case RuleKind::PauliZ:
            for (int u = 0; u < nu; ++u) emit(u, parity(u & rule.param));
            break;
    }
}

// sum_u (-1)^{<u, param>} P_u
Element parity_observable(const Pvm &p, int param) {
    Element out = Element::zero(p.algebra());
    for (size_t u = 0; u < p.size(); ++u) {
        if (parity(static_cast<int>(u) & param))
            out -= p[u];
        else
            out += p[u];
    }
    return out;
}

std::vector<double> entry_successes(const Game &game, const SynchronousStrategy &s) {
    validate_strategy(game, s);
    std::map<std::pair<int, int>, Element> cache;
    std::vector<double> out;
    out.reserve(game.entries.size());
    for (const auto &e : game.entries) {
        const Pvm &px = s.pvms[e.x], &py = s.pvms[e.y];
        double success = 0;
        if (e.rule.kind == RuleKind::PauliX || e.rule.kind == RuleKind::PauliZ) {
            const int pq = e.rule.transposed ? e.y : e.x;
            const Pvm &other = e.rule.transposed ? px : py;
            auto key = std::make_pair(pq, e.rule.param);
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, parity_observable(s.pvms[pq], e.rule.param)).first;
            for (int eps = 0; eps < 2; ++eps) {
                const double sign = eps == 0 ? 1.0 : -1.0;
                success += 0.5 * other[eps].trace().real() + 0.5 * sign * trace_product(it->second, other[eps]);
            }
        } else {
            for_each_accepted(e.rule, static_cast<int>(px.size()), static_cast<int>(py.size()),
                              [&](int a, int b) { success += trace_product(px[a], py[b]); });
        }
        out.push_back(success);
    }
    return out;
}

std::vector<Pvm> magic_pvms(const AlgebraPtr &alg, const std::array<Matrix, 9> &grid) {
    std::vector<Pvm> out;
    for (int c = 0; c < 9; ++c) out.push_back(binary_pvm(alg, grid[c]));
    const Eigen::Index d = grid[0].rows();
    for (int l = 0; l < 6; ++l) {
        const auto cells = magic_line_cells(l);
        std::vector<Element> proj;
        for (int r = 0; r < 4; ++r) {
            const int m = line_pattern(magic_line_sign(l), r);
            Matrix p = identity(d);
            for (int k = 0; k < 3; ++k) {
                const double s = (m >> k) & 1 ? -1.0 : 1.0;
                p = p * ((identity(d) + grid[cells[k]] * s) * 0.5);
            }
            proj.push_back(Element::single(alg, std::move(p)));
        }
        out.emplace_back(std::move(proj));
    }
    return out;
}

void require_grid(const std::array<Matrix, 9> &grid) {
    const GridCheck c = check_grid(grid);
    require(c.involution <= 1e-10 && c.commutation <= 1e-10 && c.line_product <= 1e-10, ErrorKind::Internal,
            "magic-square grid verification failed: involution " + std::to_string(c.involution) + ", commutation " +
                std::to_string(c.commutation) + ", product " + std::to_string(c.line_product));
}

std::string at(const std::string &label, int omega) { return label + "@" + std::to_string(omega); }

}  // namespace

const char *rule_kind_name(RuleKind k) {
    switch (k) {
        case RuleKind::Table: return "table";
        case RuleKind::Commutation: return "commutation";
        case RuleKind::MagicSquareLine: return "magic_square_line";
        case RuleKind::PauliX: return "pauli_x";
        case RuleKind::PauliZ: return "pauli_z";
    }
    return "unknown";
}

int line_pattern(int alpha, int k) {
    const int want = alpha < 0 ? 1 : 0;
    for (int m = 0; m < 8; ++m)
        if (parity(m) == want && k-- == 0) return m;
    fail(ErrorKind::InvalidArgument, "line answer index out of range");
}

bool Rule::accepts(int a, int b) const {
    if (transposed) std::swap(a, b);
    switch (kind) {
        case RuleKind::Table:
            return std::find(accepted.begin(), accepted.end(), std::make_pair(a, b)) != accepted.end();
        case RuleKind::Commutation:
            return param == 0 ? a == b / extra : a == b % extra;
        case RuleKind::MagicSquareLine:
            return ((line_pattern(extra, b) >> param) & 1) == a;
        case RuleKind::PauliX:
        case RuleKind::PauliZ:
            return parity(a & param) == b;
    }
    return false;
}

Rule Rule::transpose() const {
    Rule r = *this;
    r.transposed = !transposed;
    return r;
}

int PauliStructure::sub_question(int omega, int j) const {
    const int off = omega_offset[omega];
    if (j == 0) return off;
    return plus[omega] ? off + 1 : off + 4;
}

ProbMeasure PauliStructure::alpha_law() const {
    std::vector<Rational> w(group.order(), Rational(0));
    for (size_t o = 0; o < alpha.size(); ++o) w[alpha[o]] += omega_weight[o];
    return ProbMeasure(group.order(), std::move(w));
}

ProbMeasure PauliStructure::beta_law() const {
    std::vector<Rational> w(group.order(), Rational(0));
    for (size_t o = 0; o < beta.size(); ++o) w[beta[o]] += omega_weight[o];
    return ProbMeasure(group.order(), std::move(w));
}

Rational Game::marginal(int x) const {
    Rational m(0);
    for (const auto &e : entries) {
        if (e.x == x) m += e.weight / 2;
        if (e.y == x) m += e.weight / 2;
    }
    return m;
}

Rational Game::first_marginal(int x) const {
    Rational m(0);
    for (const auto &e : entries)
        if (e.x == x) m += e.weight;
    return m;
}

Rational Game::total_weight() const {
    Rational t(0);
    for (const auto &e : entries) t += e.weight;
    return t;
}

void Game::validate() const {
    const int nq = num_questions();
    require(nq > 0, ErrorKind::InvalidArgument, "game has no questions");
    for (const auto &q : questions) require(q.answers > 0, ErrorKind::InvalidArgument, "empty answer set at " + q.label);
    require(!entries.empty(), ErrorKind::InvalidArgument, "question law is empty");
    for (const auto &e : entries) {
        require(e.x >= 0 && e.x < nq && e.y >= 0 && e.y < nq, ErrorKind::InvalidArgument, "entry question out of range");
        require(e.weight > Rational(0), ErrorKind::InvalidArgument, "entry weights must be positive");
        const int na = questions[e.x].answers, nb = questions[e.y].answers;
        bool ok = true;
        for_each_accepted(e.rule, na, nb, [&](int a, int b) { ok = ok && a >= 0 && a < na && b >= 0 && b < nb; });
        require(ok, ErrorKind::InvalidArgument,
                "decision rule refers to answers outside A(" + questions[e.x].label + ") x A(" + questions[e.y].label + ")");
    }
    require(total_weight() == Rational(1), ErrorKind::InvalidArgument,
            "question law sums to " + format_rational(total_weight()) + ", not 1");

    std::map<std::pair<int, int>, std::vector<size_t>> by_pair;
    for (size_t i = 0; i < entries.size(); ++i)
        by_pair[{std::min(entries[i].x, entries[i].y), std::max(entries[i].x, entries[i].y)}].push_back(i);
    for (const auto &[key, idx] : by_pair) {
        const auto [q1, q2] = key;
        const int n1 = questions[q1].answers, n2 = questions[q2].answers;
        if (static_cast<long long>(n1) * n2 > (1 << 16)) continue;
        auto decide = [&](size_t i, int a1, int a2) {
            const auto &e = entries[i];
            return e.x == q1 ? e.rule.accepts(a1, a2) : e.rule.accepts(a2, a1);
        };
        for (int a = 0; a < n1; ++a)
            for (int b = 0; b < n2; ++b) {
                for (size_t k = 1; k < idx.size(); ++k)
                    require(decide(idx[k], a, b) == decide(idx[0], a, b), ErrorKind::InvalidArgument,
                            "decision is not symmetric on (" + questions[q1].label + ", " + questions[q2].label + ")");
                if (q1 == q2)
                    for (size_t i : idx)
                        require(decide(i, a, b) == decide(i, b, a), ErrorKind::InvalidArgument,
                                "decision is not symmetric on (" + questions[q1].label + ", " + questions[q1].label + ")");
            }
    }
}

void validate_strategy(const Game &game, const SynchronousStrategy &s) {
    require(static_cast<int>(s.pvms.size()) == game.num_questions(), ErrorKind::InvalidArgument,
            "strategy has " + std::to_string(s.pvms.size()) + " PVMs for " + std::to_string(game.num_questions()) +
                " questions");
    for (int x = 0; x < game.num_questions(); ++x) {
        const Pvm &p = s.pvms[x];
        require(static_cast<int>(p.size()) == game.questions[x].answers, ErrorKind::InvalidArgument,
                "answer-set mismatch at " + game.questions[x].label);
        require(s.algebra && *p.algebra() == *s.algebra, ErrorKind::InvalidArgument,
                "PVM at " + game.questions[x].label + " lives on another algebra");
    }
}

double value(const Game &game, const SynchronousStrategy &s) {
    const auto succ = entry_successes(game, s);
    double v = 0;
    for (size_t i = 0; i < succ.size(); ++i) v += to_double(game.entries[i].weight) * succ[i];
    return v;
}

double value_direct(const Game &game, const SynchronousStrategy &s) {
    validate_strategy(game, s);
    double v = 0;
    for (const auto &e : game.entries) {
        const Pvm &px = s.pvms[e.x], &py = s.pvms[e.y];
        double success = 0;
        for (size_t a = 0; a < px.size(); ++a)
            for (size_t b = 0; b < py.size(); ++b)
                if (e.rule.accepts(static_cast<int>(a), static_cast<int>(b))) success += trace_product(px[a], py[b]);
        v += to_double(e.weight) * success;
    }
    return v;
}

std::array<double, 4> stage_failures(const Game &game, const SynchronousStrategy &s) {
    const auto succ = entry_successes(game, s);
    std::array<double, 4> mass{}, ok{}, out{};
    for (size_t i = 0; i < succ.size(); ++i) {
        const int st = game.entries[i].stage;
        if (st < 1 || st > 3) continue;
        const double w = to_double(game.entries[i].weight);
        mass[st] += w;
        ok[st] += w * succ[i];
    }
    for (int st = 1; st <= 3; ++st) out[st] = mass[st] > 0 ? std::max(0.0, 1.0 - ok[st] / mass[st]) : 0.0;
    return out;
}

Game symmetrize(const Game &game) {
    Game out = game;
    out.entries.clear();
    auto add = [&](Entry e) {
        for (auto &f : out.entries)
            if (f.x == e.x && f.y == e.y && f.stage == e.stage && f.rule == e.rule) {
                f.weight += e.weight;
                return;
            }
        out.entries.push_back(std::move(e));
    };
    for (const auto &e : game.entries) {
        add(Entry{e.x, e.y, e.weight / 2, e.rule, e.stage});
        add(Entry{e.y, e.x, e.weight / 2, e.rule.transpose(), e.stage});
    }
    return out;
}

SynchronousStrategy deterministic_strategy(const Game &game, const std::vector<int> &answers) {
    require(static_cast<int>(answers.size()) == game.num_questions(), ErrorKind::InvalidArgument,
            "one answer per question is required");
    SynchronousStrategy s;
    s.algebra = share(TracialAlgebra::matrix(1));
    for (int x = 0; x < game.num_questions(); ++x) {
        require(answers[x] >= 0 && answers[x] < game.questions[x].answers, ErrorKind::InvalidArgument,
                "answer out of range at " + game.questions[x].label);
        std::vector<Element> proj;
        for (int a = 0; a < game.questions[x].answers; ++a)
            proj.push_back(a == answers[x] ? Element::identity(s.algebra) : Element::zero(s.algebra));
        s.pvms.emplace_back(std::move(proj), Pvm::Unchecked{});
    }
    return s;
}

Rational deterministic_value(const Game &game, const std::vector<int> &answers) {
    Rational v(0);
    for (const auto &e : game.entries)
        if (e.rule.accepts(answers[e.x], answers[e.y])) v += e.weight;
    return v;
}

Rational best_deterministic_value(const Game &game, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (const auto &q : game.questions) {
        require(total <= cap / static_cast<std::uint64_t>(q.answers), ErrorKind::Resource,
                "deterministic strategy space exceeds the cap " + std::to_string(cap));
        total *= static_cast<std::uint64_t>(q.answers);
    }
    std::vector<int> ans(game.num_questions(), 0);
    Rational best(0);
    for (std::uint64_t it = 0; it < total; ++it) {
        best = std::max(best, deterministic_value(game, ans));
        if (best == Rational(1)) break;
        for (int x = 0; x < game.num_questions(); ++x) {
            if (++ans[x] < game.questions[x].answers) break;
            ans[x] = 0;
        }
    }
    return best;
}

double ClosenessCertificate::epsilon() const {
    return std::max({isometry_trace_defect, projection_trace_defect, strategy_distance});
}

ClosenessCertificate closeness(const std::vector<Pvm> &a, const std::vector<Pvm> &b, const std::vector<double> &weights,
                               const RoundingCertificate &cert) {
    require(a.size() == b.size() && a.size() == weights.size(), ErrorKind::InvalidArgument,
            "closeness needs matching PVM lists and weights");
    ClosenessCertificate out;
    double ww = 0;
    for (size_t c = 0; c < cert.w.size(); ++c) ww += cert.corner->coeff(c) * cert.w[c].squaredNorm();
    out.isometry_trace_defect = std::max(0.0, cert.base->unit_trace() - ww);
    const double tp = cert.corner->unit_trace();
    out.projection_trace_defect = tp > 0 ? std::max(0.0, (tp - ww) / tp) : 0.0;
    for (size_t k = 0; k < a.size(); ++k) {
        require(a[k].size() == b[k].size(), ErrorKind::InvalidArgument, "closeness: answer-set mismatch");
        require(*a[k].algebra() == *cert.base && *b[k].algebra() == *cert.corner, ErrorKind::InvalidArgument,
                "closeness: PVMs must live on the base and corner algebras");
        double d = 0;
        for (size_t i = 0; i < a[k].size(); ++i) d += (a[k][i] - cert.compress(b[k][i])).norm2_squared();
        out.strategy_distance += weights[k] * d;
    }
    return out;
}

ClosenessCertificate closeness(const Game &game, const SynchronousStrategy &a, const SynchronousStrategy &b,
                               const RoundingCertificate &cert) {
    validate_strategy(game, a);
    validate_strategy(game, b);
    std::vector<double> w;
    for (int x = 0; x < game.num_questions(); ++x) w.push_back(to_double(game.marginal(x)));
    return closeness(a.pvms, b.pvms, w, cert);
}

ClosenessBridge closeness_bridge(const AbelianGroup &group, const UnitaryRep &u, const UnitaryRep &v,
                                 const RoundingCertificate &cert) {
    require(u.g().order() == group.order() && v.g().order() == group.order(), ErrorKind::InvalidArgument,
            "representations must be indexed by the group");
    ClosenessBridge out{0, 0};
    for (int h = 0; h < group.order(); ++h) out.unitary_side += (u(h) - cert.compress(v(h))).norm2_squared();
    out.unitary_side /= group.order();
    const Pvm p = pvm_from_rep(group, u), q = pvm_from_rep(group, v);
    for (size_t c = 0; c < p.size(); ++c) out.projection_side += (p[c] - cert.compress(q[c])).norm2_squared();
    return out;
}

Game commutation_game(int a1, int a2) {
    require(a1 > 0 && a2 > 0, ErrorKind::InvalidArgument, "answer sets must be nonempty");
    Game g;
    g.kind = GameKind::Commutation;
    g.questions = {{"x1", a1}, {"x2", a2}, {"y", a1 * a2}};
    g.entries.push_back(Entry{0, 2, Rational(1, 2), Rule{RuleKind::Commutation, {}, 0, a2}});
    g.entries.push_back(Entry{1, 2, Rational(1, 2), Rule{RuleKind::Commutation, {}, 1, a2}});
    g.distinguished = {0, 1};
    return g;
}

CommutationBound commutation_bound_check(const Pvm &p, const Pvm &q, double eps) {
    CommutationBound out{};
    out.eps = eps;
    for (size_t a = 0; a < p.size(); ++a)
        for (size_t b = 0; b < q.size(); ++b) out.lhs_projections += commutator_norm2_squared(p[a], q[b]);
    out.bound_projections = 16 * eps;
    out.bound_unitary = 64 * eps;
    if (p.size() == 2 && q.size() == 2) out.lhs_unitary = commutator_norm2_squared(p[0] - p[1], q[0] - q[1]);
    return out;
}

CommutationBound commutation_bound_check(const Game &game, const SynchronousStrategy &s) {
    require(game.kind == GameKind::Commutation, ErrorKind::InvalidArgument, "not a commutation game");
    const double eps = std::max(0.0, 1.0 - value(game, s));
    return commutation_bound_check(s.pvms[game.distinguished[0]], s.pvms[game.distinguished[1]], eps);
}

std::array<int, 3> magic_line_cells(int l) {
    require(l >= 0 && l < 6, ErrorKind::InvalidArgument, "line index out of range");
    if (l < 3) return {magic_cell(l, 0), magic_cell(l, 1), magic_cell(l, 2)};
    return {magic_cell(0, l - 3), magic_cell(1, l - 3), magic_cell(2, l - 3)};
}

int magic_line_sign(int l) { return l == 5 ? -1 : 1; }

Game magic_square_game() {
    Game g;
    g.kind = GameKind::MagicSquare;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) g.questions.push_back({"c" + std::to_string(r + 1) + std::to_string(c + 1), 2});
    for (int l = 0; l < 6; ++l)
        g.questions.push_back({(l < 3 ? "h" : "v") + std::to_string(l % 3 + 1), 4});
    for (int l = 0; l < 6; ++l) {
        const auto cells = magic_line_cells(l);
        for (int k = 0; k < 3; ++k)
            g.entries.push_back(
                Entry{cells[k], magic_line(l), Rational(1, 18), Rule{RuleKind::MagicSquareLine, {}, k, magic_line_sign(l)}});
    }
    g.distinguished = {magic_cell(0, 0), magic_cell(1, 1)};
    return g;
}

AnticommutationBound anticommutation_bound_check(const std::vector<Pvm> &pvms, double eps) {
    require(pvms.size() == 15, ErrorKind::InvalidArgument, "magic-square strategy needs 15 PVMs");
    for (int c = 0; c < 9; ++c) require(pvms[c].size() == 2, ErrorKind::InvalidArgument, "cell PVMs have two outcomes");
    for (int l = 0; l < 6; ++l)
        require(pvms[magic_line(l)].size() == 4, ErrorKind::InvalidArgument, "line PVMs have four outcomes");
    auto cell = [&](int c) { return pvms[c][0] - pvms[c][1]; };
    AnticommutationBound out{};
    out.eps = eps;
    const Element u = cell(magic_cell(0, 0)), v = cell(magic_cell(1, 1));
    out.lhs = (u * v + v * u).norm2_squared();
    out.bound = 432 * eps;
    for (int l = 0; l < 6; ++l) {
        const auto cells = magic_line_cells(l);
        const Pvm &lp = pvms[magic_line(l)];
        double t = 0;
        for (int k = 0; k < 3; ++k) {
            Element ul = Element::zero(lp.algebra());
            for (int b = 0; b < 4; ++b) {
                if ((line_pattern(magic_line_sign(l), b) >> k) & 1)
                    ul -= lp[b];
                else
                    ul += lp[b];
            }
            t += (cell(cells[k]) - ul).norm2_squared();
        }
        out.eta_squared[l] = t;
        out.eta_squared_sum += t;
    }
    out.eta_bound = 24 * eps;
    return out;
}

AnticommutationBound anticommutation_bound_check(const Game &game, const SynchronousStrategy &s) {
    require(game.kind == GameKind::MagicSquare, ErrorKind::InvalidArgument, "not a magic-square game");
    const double eps = std::max(0.0, 1.0 - value(game, s));
    return anticommutation_bound_check(s.pvms, eps);
}

std::array<Matrix, 9> magic_square_grid(const Matrix &p, const Matrix &q) {
    require(p.rows() == p.cols() && q.rows() == p.rows() && q.cols() == p.cols(), ErrorKind::InvalidArgument,
            "P and Q must be square of equal size");
    const Eigen::Index d = p.rows();
    Matrix x(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    const Complex i(0, 1);
    const Matrix pp = kron(p, identity(2)), qq = kron(q, identity(2));
    const Matrix xa = kron(identity(d), x), za = kron(identity(d), z);
    const Matrix r = i * pp * qq, ya = i * xa * za;
    return {pp, xa, pp * xa, za, qq, qq * za, pp * za, qq * xa, r * ya};
}

GridCheck check_grid(const std::array<Matrix, 9> &grid) {
    GridCheck out{0, 0, 0};
    const Eigen::Index d = grid[0].rows();
    for (const auto &a : grid) {
        out.involution = std::max(out.involution, operator_norm(a * a - identity(d)));
        out.involution = std::max(out.involution, operator_norm(a - a.adjoint()));
    }
    for (int l = 0; l < 6; ++l) {
        const auto c = magic_line_cells(l);
        for (int j = 0; j < 3; ++j)
            for (int k = j + 1; k < 3; ++k) {
                const Matrix &a = grid[c[j]], &b = grid[c[k]];
                out.commutation = std::max(out.commutation, operator_norm(a * b - b * a));
            }
        out.line_product = std::max(out.line_product, operator_norm(grid[c[0]] * grid[c[1]] * grid[c[2]] -
                                                                    identity(d) * double(magic_line_sign(l))));
    }
    return out;
}

Matrix pauli_translation(int n, int a) {
    const int d = 1 << n;
    Matrix m = Matrix::Zero(d, d);
    for (int b = 0; b < d; ++b) m(b ^ a, b) = 1;
    return m;
}

Matrix pauli_modulation(int n, int chi) {
    const int d = 1 << n;
    Matrix m = Matrix::Zero(d, d);
    for (int b = 0; b < d; ++b) m(b, b) = parity(chi & b) ? -1 : 1;
    return m;
}

PauliPvms pauli_pvms(int n, Eigen::Index dim_cap) {
    require(n >= 0 && n < 30, ErrorKind::InvalidArgument, "N out of range");
    const Eigen::Index d = Eigen::Index{1} << n;
    require(d <= dim_cap, ErrorKind::Resource, "2^N = " + std::to_string(d) + " exceeds the cap " + std::to_string(dim_cap));
    require(n <= 7, ErrorKind::Resource, "dense Pauli PVMs need 2^(3N+1) entries; N <= 7 supported");
    PauliPvms out;
    out.algebra = share(TracialAlgebra::matrix(d));
    std::vector<Element> x, z;
    for (int c = 0; c < d; ++c) {
        Matrix t(d, d);
        for (int b = 0; b < d; ++b)
            for (int e = 0; e < d; ++e) t(b, e) = (parity(c & (b ^ e)) ? -1.0 : 1.0) / static_cast<double>(d);
        x.push_back(Element::single(out.algebra, std::move(t)));
        Matrix p = Matrix::Zero(d, d);
        p(c, c) = 1;
        z.push_back(Element::single(out.algebra, std::move(p)));
    }
    out.x = Pvm(std::move(x));
    out.z = Pvm(std::move(z));
    return out;
}

Game combined_game(const AbelianGroup &h, const std::vector<Rational> &omega_weight, const std::vector<int> &alpha,
                   const std::vector<int> &beta) {
    for (int m : h.orders()) require(m == 2, ErrorKind::InvalidArgument, "H must be (Z/2)^N");
    const size_t no = omega_weight.size();
    require(no > 0 && alpha.size() == no && beta.size() == no, ErrorKind::InvalidArgument,
            "Omega, alpha and beta must have the same nonzero size");
    Rational total(0);
    std::vector<Rational> pa(h.order(), Rational(0)), pb(h.order(), Rational(0));
    std::map<std::pair<int, int>, Rational> joint;
    for (size_t o = 0; o < no; ++o) {
        require(omega_weight[o] > Rational(0), ErrorKind::InvalidArgument, "Omega weights must be positive");
        require(alpha[o] >= 0 && alpha[o] < h.order() && beta[o] >= 0 && beta[o] < h.order(),
                ErrorKind::InvalidArgument, "alpha or beta out of range");
        total += omega_weight[o];
        pa[alpha[o]] += omega_weight[o];
        pb[beta[o]] += omega_weight[o];
        joint[{alpha[o], beta[o]}] += omega_weight[o];
    }
    require(total == Rational(1), ErrorKind::InvalidArgument, "Omega weights must sum to 1");
    for (int a = 0; a < h.order(); ++a)
        for (int b = 0; b < h.order(); ++b) {
            if (pa[a] == Rational(0) || pb[b] == Rational(0)) continue;
            auto it = joint.find({a, b});
            const Rational j = it == joint.end() ? Rational(0) : it->second;
            require(j == pa[a] * pb[b], ErrorKind::InvalidArgument,
                    "alpha and beta are not independent (P(alpha=" + std::to_string(a) + ", beta=" + std::to_string(b) +
                        ") = " + format_rational(j) + ")");
        }

    const Game com = commutation_game(2, 2), magic = magic_square_game();
    Game g;
    g.kind = GameKind::Combined;
    g.questions = {{"PX", h.order()}, {"PZ", h.order()}};
    PauliStructure ps;
    ps.group = h;
    ps.px = 0;
    ps.pz = 1;
    ps.omega_weight = omega_weight;
    ps.alpha = alpha;
    ps.beta = beta;
    const Rational third(1, 3);
    for (size_t o = 0; o < no; ++o) {
        const int om = static_cast<int>(o);
        const bool plus = parity(alpha[o] & beta[o]) == 0;
        const Game &sub = plus ? com : magic;
        const int off = g.num_questions();
        ps.plus.push_back(plus);
        ps.omega_offset.push_back(off);
        for (const auto &q : sub.questions) g.questions.push_back({at(q.label, om), q.answers});
        const Rational pw = omega_weight[o] * third;
        g.entries.push_back(Entry{0, off + sub.distinguished[0], pw, Rule{RuleKind::PauliX, {}, alpha[o], 0}, 1});
        for (const auto &e : sub.entries) g.entries.push_back(Entry{off + e.x, off + e.y, pw * e.weight, e.rule, 2});
        g.entries.push_back(Entry{1, off + sub.distinguished[1], pw, Rule{RuleKind::PauliZ, {}, beta[o], 0}, 3});
    }
    try {
        ps.c = kappa_abelian(h, ps.alpha_law()).exact_kappa;
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::NonGenerating) throw;
    }
    try {
        ps.c_prime = kappa_abelian(h, ps.beta_law()).exact_kappa;
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::NonGenerating) throw;
    }
    g.distinguished = {0, 1};
    g.pauli = std::move(ps);
    g.validate();
    return g;
}

Game game_from_code(LinearCode &c, LinearCode &c_prime) {
    require(c.q() == 2 && c_prime.q() == 2, ErrorKind::InvalidArgument, "game_from_code needs binary codes");
    require(c.dimension() == c_prime.dimension(), ErrorKind::InvalidArgument, "codes must have equal dimension");
    const CodeMeasure m1 = measure_from_code(c), m2 = measure_from_code(c_prime);
    std::vector<Rational> w;
    std::vector<int> alpha, beta;
    for (int a : m1.measure.support())
        for (int b : m2.measure.support()) {
            w.push_back(m1.measure.weight(a) * m2.measure.weight(b));
            alpha.push_back(a);
            beta.push_back(b);
        }
    return combined_game(m1.group, w, alpha, beta);
}

LinearCode gn_code(int n, Rng &rng) {
    require(n >= 1, ErrorKind::InvalidArgument, "N must be positive");
    const int k = 4 * n;
    if (n * (k - n) <= 20) return best_binary_code(k, n);
    return random_code(2, k, n, (3 * k + 9) / 10, rng);
}

Game gn_game(LinearCode &code) {
    Game g = game_from_code(code, code);
    const double n = code.dimension();
    g.pauli->question_constant = g.num_questions() / (n * n);
    return g;
}

SynchronousStrategy honest_strategy(const Game &game) {
    SynchronousStrategy s;
    switch (game.kind) {
        case GameKind::Commutation: {
            const int n1 = game.questions[0].answers, n2 = game.questions[1].answers;
            s.algebra = share(TracialAlgebra::matrix(n1 * n2));
            auto diag = [](int n, int i) {
                Matrix m = Matrix::Zero(n, n);
                m(i, i) = 1;
                return m;
            };
            std::vector<Element> p, q, r;
            for (int a = 0; a < n1; ++a) p.push_back(Element::single(s.algebra, kron(diag(n1, a), identity(n2))));
            for (int b = 0; b < n2; ++b) q.push_back(Element::single(s.algebra, kron(identity(n1), diag(n2, b))));
            for (int ab = 0; ab < n1 * n2; ++ab) r.push_back(Element::single(s.algebra, diag(n1 * n2, ab)));
            s.pvms = {Pvm(std::move(p)), Pvm(std::move(q)), Pvm(std::move(r))};
            return s;
        }
        case GameKind::MagicSquare: {
            Matrix x(2, 2), z(2, 2);
            x << 0, 1, 1, 0;
            z << 1, 0, 0, -1;
            const auto grid = magic_square_grid(x, z);
            require_grid(grid);
            s.algebra = share(TracialAlgebra::matrix(4));
            s.pvms = magic_pvms(s.algebra, grid);
            return s;
        }
        case GameKind::Combined: {
            const PauliStructure &ps = *game.pauli;
            const int n = ps.group.rank();
            const Eigen::Index d = Eigen::Index{1} << n;
            s.algebra = share(TracialAlgebra::matrix(2 * d));
            const PauliPvms pp = pauli_pvms(n);
            s.pvms.resize(game.num_questions());
            std::vector<Element> px, pz;
            for (Eigen::Index c = 0; c < d; ++c) {
                px.push_back(Element::single(s.algebra, kron(pp.x[c].block(0), identity(2))));
                pz.push_back(Element::single(s.algebra, kron(pp.z[c].block(0), identity(2))));
            }
            s.pvms[ps.px] = Pvm(std::move(px));
            s.pvms[ps.pz] = Pvm(std::move(pz));
            for (size_t o = 0; o < ps.alpha.size(); ++o) {
                const Matrix lam = pauli_translation(n, ps.alpha[o]), mod = pauli_modulation(n, ps.beta[o]);
                const int off = ps.omega_offset[o];
                if (ps.plus[o]) {
                    const Matrix p = kron(lam, identity(2)), q = kron(mod, identity(2));
                    const Matrix id = identity(2 * d);
                    s.pvms[off] = binary_pvm(s.algebra, p);
                    s.pvms[off + 1] = binary_pvm(s.algebra, q);
                    std::vector<Element> joint;
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b)
                            joint.push_back(Element::single(
                                s.algebra, ((id + p * (a ? -1.0 : 1.0)) * (id + q * (b ? -1.0 : 1.0))) * 0.25));
                    s.pvms[off + 2] = Pvm(std::move(joint));
                } else {
                    const auto grid = magic_square_grid(lam, mod);
                    require_grid(grid);
                    auto pv = magic_pvms(s.algebra, grid);
                    for (size_t j = 0; j < pv.size(); ++j) s.pvms[off + j] = std::move(pv[j]);
                }
            }
            return s;
        }
        case GameKind::Generic:
            break;
    }
    fail(ErrorKind::InvalidArgument, "no honest strategy is known for a generic game");
}

RigidityReport pauli_rigidity_report(const Game &game, const SynchronousStrategy &s, Rng &rng,
                                     const RoundingOptions &opt) {
    require(game.kind == GameKind::Combined && game.pauli, ErrorKind::InvalidArgument,
            "rigidity report needs a combined game");
    const PauliStructure &ps = *game.pauli;
    const AbelianGroup &h = ps.group;
    RigidityReport out;
    out.value = value(game, s);
    out.eps = std::max(0.0, 1.0 - out.value);
    out.stage_eps = stage_failures(game, s);
    out.stage_sum = out.stage_eps[1] + out.stage_eps[2] + out.stage_eps[3];
    out.stage_bound = 3 * out.eps;
    out.c = ps.c ? to_double(*ps.c) : INFINITY;
    out.c_prime = ps.c_prime ? to_double(*ps.c_prime) : INFINITY;

    const UnitaryRep u = rep_from_pvm(h, s.pvms[ps.px]);
    const UnitaryRep v = rep_from_pvm(h, s.pvms[ps.pz]);
    const ProbMeasure mu = ps.alpha_law(), nu = ps.beta_law();
    for (int a = 0; a < h.order(); ++a)
        for (int chi = 0; chi < h.order(); ++chi) {
            const double t = (u(a) * v(chi) - v(chi) * u(a) * h.pairing(chi, a)).norm2_squared();
            out.rigidity_lhs += t;
            out.rigidity_weighted += mu.weight_double(a) * nu.weight_double(chi) * t;
        }
    out.rigidity_lhs /= static_cast<double>(h.order()) * h.order();
    out.rigidity_bound = 1320 * out.c * out.c_prime * out.eps;

    out.rounding = round_pauli_pair(h, u, v, mu, nu, rng, opt);
    const auto &pair = out.rounding.pair;
    auto hg = share(h.to_finite_group());
    const Pvm qx = pvm_from_rep(h, UnitaryRep(hg, pair.u_tilde, UnitaryRep::Unchecked{}));
    const Pvm qz = pvm_from_rep(h, UnitaryRep(hg, pair.v_tilde, UnitaryRep::Unchecked{}));
    out.closeness = closeness({s.pvms[ps.px], s.pvms[ps.pz]}, {qx, qz}, {0.5, 0.5}, pair.cert);
    out.bridge_distance = 0.5 * (pair.distance_u + pair.distance_v);
    out.measured_constant = out.eps > 0 ? out.closeness.epsilon() / out.eps : 0.0;
    return out;
}

SynchronousStrategy perturb_strategy(const SynchronousStrategy &s, double sigma, Rng &rng) {
    require(sigma >= 0, ErrorKind::InvalidArgument, "sigma must be nonnegative");
    if (sigma == 0) return s;
    SynchronousStrategy out;
    out.algebra = s.algebra;
    for (const auto &p : s.pvms) {
        std::vector<Matrix> us;
        for (size_t b = 0; b < s.algebra->num_blocks(); ++b)
            us.push_back(exp_i_hermitian(random_hermitian(s.algebra->dim(b), rng), sigma));
        std::vector<Element> proj;
        for (const auto &e : p.projections()) {
            std::vector<Matrix> bl;
            for (size_t b = 0; b < us.size(); ++b) bl.push_back(us[b] * e.block(b) * us[b].adjoint());
            proj.emplace_back(s.algebra, std::move(bl));
        }
        out.pvms.emplace_back(std::move(proj), Pvm::Unchecked{});
    }
    return out;
}

}  // namespace gapstab
