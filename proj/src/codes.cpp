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

#include "codes.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "error.hpp"

namespace gapstab {

int rank_over_field(const FiniteField &f, SymbolMatrix rows) {
    const int n = static_cast<int>(rows.size());
    if (n == 0) return 0;
    const int k = static_cast<int>(rows[0].size());
    int rank = 0;
    for (int col = 0; col < k && rank < n; ++col) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
            if (rows[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[rank]);
        const int s = f.inv(rows[rank][col]);
        for (int j = 0; j < k; ++j) rows[rank][j] = f.mul(rows[rank][j], s);
        for (int r = 0; r < n; ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const int c = rows[r][col];
            for (int j = 0; j < k; ++j) rows[r][j] = f.sub(rows[r][j], f.mul(c, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

LinearCode::LinearCode(FiniteField field, SymbolMatrix generator) : field_(std::move(field)), generator_(std::move(generator)) {
    require(!generator_.empty(), ErrorKind::InvalidArgument, "generator needs at least one row");
    length_ = static_cast<int>(generator_[0].size());
    require(length_ >= 1, ErrorKind::InvalidArgument, "code length must be >= 1");
    for (const auto &row : generator_) {
        require(static_cast<int>(row.size()) == length_, ErrorKind::InvalidArgument, "generator rows differ in length");
        for (int s : row)
            require(s >= 0 && s < field_.q(), ErrorKind::InvalidArgument, "generator symbol outside the field");
    }
    const int r = rank_over_field(field_, generator_);
    require(r == dimension(), ErrorKind::RankDeficient,
            "generator has rank " + std::to_string(r) + " < " + std::to_string(dimension()));
}

LinearCode code_new(int q, SymbolMatrix generator) { return LinearCode(FiniteField(q), std::move(generator)); }

std::vector<int> LinearCode::encode(const std::vector<int> &message) const {
    require(static_cast<int>(message.size()) == dimension(), ErrorKind::InvalidArgument, "message length mismatch");
    std::vector<int> word(length_, 0);
    for (int j = 0; j < dimension(); ++j) {
        if (message[j] == 0) continue;
        for (int i = 0; i < length_; ++i) word[i] = field_.add(word[i], field_.mul(message[j], generator_[j][i]));
    }
    return word;
}

int distance(const LinearCode &code, std::uint64_t cap) {
    const int n = code.dimension(), k = code.length(), q = code.q();
    const auto &f = code.field();
    long double total = 1;
    for (int j = 0; j < n; ++j) total *= q;
    require(total - 1 <= static_cast<long double>(cap), ErrorKind::Resource,
            "q^N - 1 exceeds the enumeration cap; use a randomized lower bound instead");

    // loopless reflected mixed-radix Gray code over message digits
    std::vector<int> a(n, 0), o(n, 1), focus(n + 1);
    for (int j = 0; j <= n; ++j) focus[j] = j;
    std::vector<int> word(k, 0);
    int weight = 0, best = std::numeric_limits<int>::max();
    while (true) {
        const int j = focus[0];
        focus[0] = 0;
        if (j == n) break;
        const int old = a[j];
        a[j] += o[j];
        const int delta = f.sub(a[j], old);
        for (int i = 0; i < k; ++i) {
            const int g = code.generator()[j][i];
            if (g == 0) continue;
            const int before = word[i];
            word[i] = f.add(before, f.mul(delta, g));
            weight += (word[i] != 0) - (before != 0);
        }
        best = std::min(best, weight);
        if (a[j] == 0 || a[j] == q - 1) {
            o[j] = -o[j];
            focus[j] = focus[j + 1];
            focus[j + 1] = j + 1;
        }
    }
    return best;
}

int distance(LinearCode &code, std::uint64_t cap) {
    if (!code.cached_distance()) code.set_distance(distance(static_cast<const LinearCode &>(code), cap));
    return *code.cached_distance();
}

CodeMeasure measure_from_code(LinearCode &code, DualPairing pairing, std::uint64_t cap) {
    const auto &f = code.field();
    const int p = f.p(), k = f.k(), n = code.dimension(), len = code.length();
    const int d = distance(code, cap);
    AbelianGroup group(std::vector<int>(static_cast<size_t>(k) * n, p));

    std::vector<std::vector<int>> tinv;
    if (pairing == DualPairing::Trace) tinv = inverse_mod_p(f.trace_pairing_matrix(), p);

    std::vector<std::vector<std::vector<int>>> mats(static_cast<size_t>(n) * len);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < len; ++i) mats[static_cast<size_t>(j) * len + i] = f.mul_matrix(code.generator()[j][i]);

    std::vector<int> chars;
    for (int i = 0; i < len; ++i)
        for (int c = 1; c < f.q(); ++c) {
            const auto cd = f.digits(c);
            std::vector<int> residues(static_cast<size_t>(k) * n);
            for (int j = 0; j < n; ++j) {
                const auto &m = mats[static_cast<size_t>(j) * len + i];
                // exponent block for coordinate j is M^T c over F_p
                std::vector<int> e(k, 0);
                for (int l = 0; l < k; ++l) {
                    long long s = 0;
                    for (int r = 0; r < k; ++r) s += 1LL * m[r][l] * cd[r];
                    e[l] = static_cast<int>(s % p);
                }
                if (pairing == DualPairing::Trace) {
                    std::vector<int> y(k, 0);
                    for (int l = 0; l < k; ++l) {
                        long long s = 0;
                        for (int r = 0; r < k; ++r) s += 1LL * tinv[l][r] * e[r];
                        y[l] = static_cast<int>(s % p);
                    }
                    e = std::move(y);
                }
                for (int l = 0; l < k; ++l) residues[static_cast<size_t>(j) * k + l] = e[l];
            }
            chars.push_back(group.index(residues));
        }
    ProbMeasure mu = ProbMeasure::uniform_on(group.order(), chars);
    Rational predicted(static_cast<std::int64_t>(f.q() - 1) * len, static_cast<std::int64_t>(f.q()) * d);
    return CodeMeasure{std::move(group), std::move(mu), std::move(chars), d, predicted};
}

LinearCode reed_muller_multilinear(int q, int m) {
    require(is_supported_field_size(q), ErrorKind::InvalidField, "unsupported field size");
    FiniteField f(q);
    require(f.p() == 2, ErrorKind::InvalidArgument, "Reed-Muller construction needs q = 2^k");
    require(f.k() % 2 == 1, ErrorKind::InvalidArgument, "Reed-Muller construction needs q = 2^k with k odd");
    require(m >= 1 && m <= 16, ErrorKind::InvalidArgument, "number of variables must lie in [1, 16]");
    long double points = 1;
    for (int i = 0; i < m; ++i) points *= q;
    require(points <= (1 << 20), ErrorKind::Resource, "q^m exceeds the supported code length");
    const int len = static_cast<int>(points);
    SymbolMatrix gen(1 << m, std::vector<int>(len));
    for (int x = 0; x < len; ++x) {
        std::vector<int> coords(m);
        for (int i = m - 1, r = x; i >= 0; --i, r /= q) coords[i] = r % q;
        for (int s = 0; s < (1 << m); ++s) {
            int v = 1;
            for (int i = 0; i < m; ++i)
                if (s >> i & 1) v = f.mul(v, coords[i]);
            gen[s][x] = v;
        }
    }
    return LinearCode(std::move(f), std::move(gen));
}

Rational reed_muller_distance_bound(int q, int m) {
    std::int64_t qm = 1;
    for (int i = 0; i < m; ++i) qm *= q;
    return Rational(qm) * (Rational(1) - Rational(m, q));
}

LinearCode random_code(int q, int length, int dimension, int min_distance, Rng &rng, int max_tries) {
    require(length >= 1 && dimension >= 1 && dimension <= length, ErrorKind::InvalidArgument,
            "need 1 <= N <= K for a code");
    FiniteField f(q);
    std::uniform_int_distribution<int> sym(0, q - 1);
    int best = 0;
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        SymbolMatrix gen(dimension, std::vector<int>(length));
        for (auto &row : gen)
            for (int &s : row) s = sym(rng);
        if (rank_over_field(f, gen) < dimension) continue;
        LinearCode code(f, std::move(gen));
        const int d = distance(code);
        best = std::max(best, d);
        if (d >= min_distance) return code;
    }
    throw SamplingError("no [" + std::to_string(length) + ", " + std::to_string(dimension) + "] code with distance >= " +
                            std::to_string(min_distance) + " found; best distance " + std::to_string(best),
                        best);
}

LinearCode best_binary_code(int length, int dimension) {
    require(dimension >= 1 && dimension <= length, ErrorKind::InvalidArgument, "need 1 <= N <= K");
    const int free_bits = dimension * (length - dimension);
    require(free_bits <= 24, ErrorKind::Resource, "exhaustive code search too large");
    FiniteField f(2);
    std::optional<LinearCode> best;
    int best_d = 0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << free_bits); ++mask) {
        SymbolMatrix gen(dimension, std::vector<int>(length, 0));
        for (int j = 0; j < dimension; ++j) {
            gen[j][j] = 1;
            for (int c = 0; c < length - dimension; ++c) gen[j][dimension + c] = mask >> (j * (length - dimension) + c) & 1;
        }
        LinearCode code(f, std::move(gen));
        const int d = distance(code);
        if (d > best_d) {
            best_d = d;
            code.set_distance(d);
            best = std::move(code);
        }
    }
    return *best;
}

LinearCode parse_code(const std::string &text, std::uint64_t cap) {
    std::istringstream in(text);
    int q = 0, len = 0, dim = 0;
    require(static_cast<bool>(in >> q >> len >> dim), ErrorKind::Input, "code header must be 'q K N'");
    require(q >= 2 && len >= 1 && dim >= 1, ErrorKind::Input, "code header values out of range");
    SymbolMatrix gen(dim, std::vector<int>(len));
    for (auto &row : gen)
        for (int &s : row) require(static_cast<bool>(in >> s), ErrorKind::Input, "generator matrix is truncated");
    std::optional<int> declared;
    std::string tag;
    if (in >> tag) {
        int d = 0;
        require(tag == "d" && static_cast<bool>(in >> d), ErrorKind::Input, "trailing content must be 'd <value>'");
        declared = d;
        require(!(in >> tag), ErrorKind::Input, "unexpected trailing content");
    }
    LinearCode code(FiniteField(q), std::move(gen));
    if (declared) {
        long double total = 1;
        for (int j = 0; j < dim; ++j) total *= q;
        if (total - 1 <= static_cast<long double>(cap)) {
            const int d = distance(code);
            require(d == *declared, ErrorKind::Input,
                    "declared distance " + std::to_string(*declared) + " but the code has " + std::to_string(d));
        }
        code.set_distance(*declared);
    }
    return code;
}

LinearCode read_code_file(const std::string &path, std::uint64_t cap) {
    std::ifstream f(path);
    require(f.good(), ErrorKind::Input, "cannot open code file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_code(ss.str(), cap);
}

std::string format_code(const LinearCode &code) {
    std::ostringstream out;
    out << code.q() << ' ' << code.length() << ' ' << code.dimension() << '\n';
    for (const auto &row : code.generator()) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
        out << '\n';
    }
    if (code.cached_distance()) out << "d " << *code.cached_distance() << '\n';
    return out.str();
}

}  // namespace gapstab
