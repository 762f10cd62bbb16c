#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

// Dense univariate polynomial arithmetic over a prime field F_p.
// Coefficients ascending, reduced to [0, p); vectors are trimmed (no trailing
// zeros).  Used for the finite bottom layer of the field towers.

namespace qnp::gfp {

using Poly = std::vector<int64_t>;

inline int64_t mod(int64_t a, int64_t p) {
    int64_t r = a % p;
    return r < 0 ? r + p : r;
}

inline int64_t inv_mod(int64_t a, int64_t p) {
    // extended Euclid on (a, p)
    int64_t t = 0, nt = 1, r = p, nr = mod(a, p);
    if (nr == 0) throw std::domain_error("inverse of zero mod p");
    while (nr != 0) {
        int64_t qt = r / nr;
        t -= qt * nt; std::swap(t, nt);
        r -= qt * nr; std::swap(r, nr);
    }
    return mod(t, p);
}

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly add(const Poly& a, const Poly& b, int64_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        int64_t v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = mod(v, p);
    }
    trim(r);
    return r;
}

inline Poly neg(const Poly& a, int64_t p) {
    Poly r(a);
    for (auto& c : r) c = mod(-c, p);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b, int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = mod(r[i + j] + a[i] * b[j], p);
    trim(r);
    return r;
}

// remainder of a modulo monic-normalizable b
inline Poly rem(Poly a, const Poly& b, int64_t p) {
    trim(a);
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    int64_t linv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        int64_t c = mod(a.back() * linv, p);
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[i + shift] = mod(a[i + shift] - c * b[i], p);
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline Poly monic(Poly a, int64_t p) {
    if (a.empty()) return a;
    int64_t linv = inv_mod(a.back(), p);
    for (auto& c : a) c = mod(c * linv, p);
    return a;
}

inline Poly gcd(Poly a, Poly b, int64_t p) {
    trim(a); trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, int64_t p) {
    return rem(mul(a, b, p), m, p);
}

inline Poly powmod(Poly a, int64_t e, const Poly& m, int64_t p) {
    Poly r{1};
    a = rem(std::move(a), m, p);
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, m, p);
        a = mulmod(a, a, m, p);
        e >>= 1;
    }
    return r;
}

// extended Euclid: inverse of a modulo m (both over F_p)
inline Poly invmod(const Poly& a, const Poly& m, int64_t p) {
    Poly r0 = m, r1 = rem(a, m, p);
    Poly s0{}, s1{1};
    if (r1.empty()) throw std::domain_error("inverse of zero poly");
    while (!r1.empty()) {
        // divide r0 by r1
        Poly quo;
        Poly rr = r0;
        int64_t linv = inv_mod(r1.back(), p);
        if (rr.size() >= r1.size()) quo.assign(rr.size() - r1.size() + 1, 0);
        while (rr.size() >= r1.size() && !rr.empty()) {
            int64_t c = mod(rr.back() * linv, p);
            size_t shift = rr.size() - r1.size();
            quo[shift] = c;
            for (size_t i = 0; i < r1.size(); ++i)
                rr[i + shift] = mod(rr[i + shift] - c * r1[i], p);
            trim(rr);
        }
        trim(quo);
        Poly s2 = add(s0, neg(mul(quo, s1, p), p), p);
        r0 = std::move(r1); r1 = std::move(rr);
        s0 = std::move(s1); s1 = std::move(s2);
    }
    if (r0.size() != 1) throw std::domain_error("element not invertible");
    int64_t linv = inv_mod(r0[0], p);
    for (auto& c : s0) c = mod(c * linv, p);
    trim(s0);
    return s0;
}

inline bool is_irreducible(const Poly& f, int64_t p) {
    if (f.size() < 2) return false;
    int n = int(f.size()) - 1;
    if (n == 1) return true;
    // x^{p^n} == x mod f, and gcd(x^{p^{n/l}} - x, f) == 1 for primes l | n
    auto ppow = [&](int k) {
        int64_t e = 1;
        for (int i = 0; i < k; ++i) e *= p;
        return e;
    };
    Poly x{0, 1};
    Poly xq = powmod(x, ppow(n), f, p);
    Poly diff = add(xq, neg(x, p), p);
    if (!rem(diff, f, p).empty()) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool lprime = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) { lprime = false; break; }
        if (!lprime) continue;
        Poly xe = powmod(x, ppow(n / l), f, p);
        Poly g = gcd(add(xe, neg(x, p), p), f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

// Lex-least monic irreducible of given degree: lower coefficients enumerated
// as base-p digits of an increasing index, least significant digit first.
inline Poly first_irreducible(int64_t p, int degree) {
    int64_t count = 1;
    for (int i = 0; i < degree; ++i) count *= p;
    for (int64_t idx = 0; idx < count; ++idx) {
        Poly f(degree + 1, 0);
        int64_t v = idx;
        for (int i = 0; i < degree; ++i) { f[i] = v % p; v /= p; }
        f[degree] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

}  // namespace qnp::gfp
