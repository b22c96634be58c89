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

#include "field.hpp"

#include "error.hpp"

namespace gapstab {

namespace {

// Primitive polynomials over F_2 as bit masks (bit l = coefficient of x^l).
constexpr unsigned kBinaryModuli[17] = {
    0,      0x3,    0x7,    0xB,     0x13,    0x25,    0x43,    0x83,    0x11D,
    0x211,  0x409,  0x805,  0x1053,  0x201B,  0x4443,  0x8003,  0x1100B,
};

bool prime_power(int q, int &p, int &k) {
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = q;
    k = 0;
    int r = q;
    while (r % p == 0) {
        r /= p;
        ++k;
    }
    return r == 1;
}

std::vector<int> prime_factors(int n) {
    std::vector<int> f;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            f.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) f.push_back(n);
    return f;
}

int mod_inverse(int a, int p) {
    for (int x = 1; x < p; ++x)
        if (1LL * a * x % p == 1) return x;
    fail(ErrorKind::InvalidField, "no inverse modulo p");
}

}  // namespace

bool is_supported_field_size(int q) {
    int p = 0, k = 0;
    return q <= (1 << 16) && prime_power(q, p, k);
}

FiniteField::FiniteField(int q) {
    int p = 0, k = 0;
    require(q <= (1 << 16) && prime_power(q, p, k), ErrorKind::InvalidField,
            "unsupported field size " + std::to_string(q));
    p_ = p;
    k_ = k;
    q_ = q;
    if (k == 1) {
        build({0, 1});
        return;
    }
    if (p == 2) {
        std::vector<int> m(k + 1);
        for (int l = 0; l <= k; ++l) m[l] = (kBinaryModuli[k] >> l) & 1;
        build(std::move(m));
        return;
    }
    // first monic modulus of degree k that yields a field
    const int candidates = q;
    for (int c = 0; c < candidates; ++c) {
        std::vector<int> m(k + 1);
        int r = c;
        for (int l = 0; l < k; ++l) {
            m[l] = r % p;
            r /= p;
        }
        m[k] = 1;
        if (m[0] == 0) continue;
        try {
            build(std::move(m));
            return;
        } catch (const Error &) {
        }
    }
    fail(ErrorKind::InvalidField, "no irreducible polynomial found");
}

FiniteField::FiniteField(int p, std::vector<int> modulus) {
    int pp = 0, kk = 0;
    require(prime_power(p, pp, kk) && kk == 1, ErrorKind::InvalidField, "characteristic must be prime");
    require(modulus.size() >= 2 && modulus.back() == 1, ErrorKind::InvalidField, "modulus must be monic");
    p_ = p;
    k_ = static_cast<int>(modulus.size()) - 1;
    q_ = 1;
    for (int l = 0; l < k_; ++l) q_ *= p;
    require(q_ <= (1 << 16), ErrorKind::InvalidField, "field too large");
    for (int c : modulus) require(c >= 0 && c < p, ErrorKind::InvalidField, "modulus coefficient out of range");
    build(std::move(modulus));
}

int FiniteField::poly_mul(int a, int b) const {
    if (k_ == 1) return static_cast<int>(static_cast<long long>(a) * b % p_);
    std::vector<int> da = digits(a), db = digits(b), prod(2 * k_ - 1, 0);
    for (int i = 0; i < k_; ++i)
        if (da[i])
            for (int j = 0; j < k_; ++j) prod[i + j] = static_cast<int>((prod[i + j] + 1LL * da[i] * db[j]) % p_);
    for (int d = 2 * k_ - 2; d >= k_; --d) {
        int c = prod[d];
        if (c == 0) continue;
        for (int l = 0; l <= k_; ++l) prod[d - k_ + l] = static_cast<int>(((prod[d - k_ + l] - 1LL * c * modulus_[l]) % p_ + p_) % p_);
    }
    prod.resize(k_);
    return from_digits(prod);
}

void FiniteField::build(std::vector<int> modulus) {
    modulus_ = std::move(modulus);
    // a generator of the multiplicative group exists iff the modulus is irreducible
    const int n = q_ - 1;
    auto factors = prime_factors(n);
    auto slow_pow = [&](int a, long long e) {
        int r = 1;
        int b = a;
        while (e > 0) {
            if (e & 1) r = poly_mul(r, b);
            b = poly_mul(b, b);
            e >>= 1;
        }
        return r;
    };
    int gen = -1;
    for (int g = (q_ == 2 ? 1 : 2); g < q_ && gen < 0; ++g) {
        if (slow_pow(g, n) != 1) break;  // zero divisors: not a field
        bool primitive = true;
        for (int f : factors) primitive = primitive && slow_pow(g, n / f) != 1;
        if (primitive) gen = g;
    }
    require(gen > 0, ErrorKind::InvalidField, "modulus is not irreducible");
    exp_.assign(2 * n, 0);
    log_.assign(q_, -1);
    int x = 1;
    for (int i = 0; i < n; ++i) {
        require(log_[x] < 0, ErrorKind::InvalidField, "modulus is not irreducible");
        exp_[i] = exp_[i + n] = x;
        log_[x] = i;
        x = poly_mul(x, gen);
    }
}

int FiniteField::add(int a, int b) const {
    if (p_ == 2) return a ^ b;
    if (k_ == 1) return (a + b) % p_;
    int r = 0, scale = 1;
    for (int l = 0; l < k_; ++l, a /= p_, b /= p_, scale *= p_) r += ((a % p_ + b % p_) % p_) * scale;
    return r;
}

int FiniteField::neg(int a) const {
    if (p_ == 2) return a;
    int r = 0, scale = 1;
    for (int l = 0; l < k_; ++l, a /= p_, scale *= p_) r += ((p_ - a % p_) % p_) * scale;
    return r;
}

int FiniteField::sub(int a, int b) const { return add(a, neg(b)); }

int FiniteField::mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
}

int FiniteField::inv(int a) const {
    require(a != 0, ErrorKind::InvalidArgument, "zero has no inverse");
    const int n = q_ - 1;
    return exp_[(n - log_[a]) % n];
}

int FiniteField::pow(int a, long long e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    const long long n = q_ - 1;
    long long l = (log_[a] * (e % n)) % n;
    if (l < 0) l += n;
    return exp_[l];
}

std::vector<int> FiniteField::digits(int a) const {
    std::vector<int> d(k_);
    for (int l = 0; l < k_; ++l, a /= p_) d[l] = a % p_;
    return d;
}

int FiniteField::from_digits(const std::vector<int> &d) const {
    int r = 0;
    for (int l = k_ - 1; l >= 0; --l) r = r * p_ + d[l];
    return r;
}

int FiniteField::trace(int a) const {
    int t = 0, x = a;
    for (int i = 0; i < k_; ++i) {
        t = add(t, x);
        x = pow(x, p_);
    }
    require(t < p_, ErrorKind::Internal, "trace left the prime field");
    return t;
}

std::vector<std::vector<int>> FiniteField::mul_matrix(int a) const {
    std::vector<std::vector<int>> m(k_, std::vector<int>(k_));
    int basis = 1;
    for (int l = 0; l < k_; ++l, basis *= p_) {
        auto col = digits(mul(a, basis));
        for (int r = 0; r < k_; ++r) m[r][l] = col[r];
    }
    return m;
}

std::vector<std::vector<int>> FiniteField::trace_pairing_matrix() const {
    std::vector<std::vector<int>> t(k_, std::vector<int>(k_));
    std::vector<int> basis(k_);
    for (int l = 0, b = 1; l < k_; ++l, b *= p_) basis[l] = b;
    for (int a = 0; a < k_; ++a)
        for (int b = 0; b < k_; ++b) t[a][b] = trace(mul(basis[a], basis[b]));
    return t;
}

std::vector<std::vector<int>> inverse_mod_p(std::vector<std::vector<int>> m, int p) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<int>> inv(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] % p) {
                piv = r;
                break;
            }
        require(piv >= 0, ErrorKind::RankDeficient, "matrix is singular over F_p");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        int s = mod_inverse(m[col][col] % p, p);
        for (int j = 0; j < n; ++j) {
            m[col][j] = static_cast<int>(1LL * m[col][j] * s % p);
            inv[col][j] = static_cast<int>(1LL * inv[col][j] * s % p);
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            int f = m[r][col];
            for (int j = 0; j < n; ++j) {
                m[r][j] = static_cast<int>(((m[r][j] - 1LL * f * m[col][j]) % p + p) % p);
                inv[r][j] = static_cast<int>(((inv[r][j] - 1LL * f * inv[col][j]) % p + p) % p);
            }
        }
    }
    return inv;
}

}  // namespace gapstab
