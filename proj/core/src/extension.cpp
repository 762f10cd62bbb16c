#include "qnp/extension.hpp"

#include <stdexcept>

#include "qnp/gfp.hpp"

namespace qnp {

namespace {

[[noreturn]] void bad(const char* msg) { throw std::invalid_argument(msg); }

// invert an n x n matrix over F_p (row major); throws if singular
std::vector<int64_t> invert_matrix(std::vector<int64_t> m, int n, int64_t p) {
    std::vector<int64_t> inv(size_t(n) * n, 0);
    for (int i = 0; i < n; ++i) inv[size_t(i) * n + i] = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (m[size_t(r) * n + col] != 0) { piv = r; break; }
        if (piv < 0) throw std::logic_error("singular extension matrix");
        if (piv != col)
            for (int c = 0; c < n; ++c) {
                std::swap(m[size_t(piv) * n + c], m[size_t(col) * n + c]);
                std::swap(inv[size_t(piv) * n + c], inv[size_t(col) * n + c]);
            }
        int64_t s = gfp::inv_mod(m[size_t(col) * n + col], p);
        for (int c = 0; c < n; ++c) {
            m[size_t(col) * n + c] = gfp::mod(m[size_t(col) * n + c] * s, p);
            inv[size_t(col) * n + c] = gfp::mod(inv[size_t(col) * n + c] * s, p);
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            int64_t f = m[size_t(r) * n + col];
            if (f == 0) continue;
            for (int c = 0; c < n; ++c) {
                m[size_t(r) * n + c] = gfp::mod(m[size_t(r) * n + c] - f * m[size_t(col) * n + c], p);
                inv[size_t(r) * n + c] = gfp::mod(inv[size_t(r) * n + c] - f * inv[size_t(col) * n + c], p);
            }
        }
    }
    return inv;
}

FElem eval_int_poly(const std::vector<int64_t>& coeffs, const FElem& z) {
    FElem acc = zero(z.field);
    for (size_t i = coeffs.size(); i-- > 0;)
        acc = add(mul(acc, z), from_int(z.field, coeffs[i]));
    return acc;
}

// map the coefficients of an element's Laurent data
template <typename Fn>
FElem map_coeffs(const FieldPtr& target, const FElem& x, Fn&& fn) {
    auto mapply = [&](const LPoly& pl) {
        LPoly out;
        out.lo = pl.lo;
        out.coeffs.reserve(pl.coeffs.size());
        for (const auto& c : pl.coeffs) out.coeffs.push_back(fn(c));
        return out;
    };
    return make_fraction(target, mapply(*x.num), mapply(*x.den));
}

}  // namespace

// ---------------------------------------------------------------------------
// finite constant extensions

std::shared_ptr<const FiniteExt> FiniteExt::make(const FieldPtr& K, int degree) {
    if (!K->is_finite()) bad("FiniteExt wants a finite field");
    if (degree < 2) bad("extension degree must be >= 2");
    auto e = std::make_shared<FiniteExt>();
    e->K = K;
    e->degree = degree;
    e->L = Field::finite(K->p, gfp::first_irreducible(K->p, degree * K->deg));
    // lex-least root of K's modulus in L
    FElem rho = zero(e->L);
    bool found = false;
    for (int64_t i = 0; i < e->L->q; ++i) {
        FElem z = finite_at(e->L, i);
        if (is_zero(eval_int_poly(K->modulus, z))) { rho = z; found = true; break; }
    }
    if (!found) throw std::logic_error("modulus has no root in the extension");
    e->rho_pow.push_back(one(e->L));
    for (int i = 1; i < K->deg; ++i) e->rho_pow.push_back(mul(e->rho_pow.back(), rho));

    if (degree == 2) {
        FElem u = canonical_nonsquare(K);
        FElem uim = e->embed(u);
        found = false;
        for (int64_t i = 0; i < e->L->q; ++i) {
            FElem w = finite_at(e->L, i);
            if (eq(mul(w, w), uim)) { e->root = w; found = true; break; }
        }
        if (!found) throw std::logic_error("no square root of the nonsquare in F_{q^2}");
        // basis [embed(x^i)] ++ [embed(x^i) root] as columns over F_p
        int n = 2 * K->deg;
        std::vector<int64_t> m(size_t(n) * n, 0);
        for (int j = 0; j < K->deg; ++j) {
            const FElem& col = e->rho_pow[size_t(j)];
            FElem colr = mul(col, e->root);
            for (int r = 0; r < n; ++r) {
                m[size_t(r) * n + j] = col.fin[size_t(r)];
                m[size_t(r) * n + K->deg + j] = colr.fin[size_t(r)];
            }
        }
        e->solve_matrix = invert_matrix(std::move(m), n, K->p);
    }
    return e;
}

FElem FiniteExt::embed(const FElem& x) const {
    if (!same_field(x.field, K)) bad("embed: element not in the base");
    FElem acc = zero(L);
    for (size_t i = 0; i < x.fin.size(); ++i)
        if (x.fin[i] != 0) acc = add(acc, mul(from_int(L, x.fin[i]), rho_pow[i]));
    return acc;
}

FElem FiniteExt::conj(const FElem& z) const {
    if (degree != 2) bad("conj defined for quadratic extensions");
    return pow_i(z, K->q);
}

FElem FiniteExt::norm(const FElem& z) const { return mul(z, conj(z)); }

std::pair<FElem, FElem> FiniteExt::decompose(const FElem& z) const {
    if (degree != 2) bad("decompose defined for quadratic extensions");
    int n = 2 * K->deg;
    std::vector<int64_t> sol(size_t(n), 0);
    for (int r = 0; r < n; ++r) {
        int64_t acc = 0;
        for (int c = 0; c < n; ++c) acc += solve_matrix[size_t(r) * n + c] * z.fin[size_t(c)];
        sol[size_t(r)] = gfp::mod(acc, K->p);
    }
    std::vector<int64_t> a(sol.begin(), sol.begin() + K->deg);
    std::vector<int64_t> b(sol.begin() + K->deg, sol.end());
    return {finite_elem(K, std::move(a)), finite_elem(K, std::move(b))};
}

FElem FiniteExt::section(const FElem& z) const {
    auto [a, b] = decompose(z);
    if (!is_zero(b)) throw std::domain_error("element not in the base-field image");
    return a;
}

// ---------------------------------------------------------------------------
// quadratic extensions of towers

namespace {

std::string fresh_symbol(const FieldPtr& K) {
    std::string s = K->symbol + "r";
    auto used = K->symbols();
    auto clash = [&](const std::string& c) {
        for (const auto& x : used)
            if (x == c) return true;
        return false;
    };
    while (clash(s)) s += "r";
    return s;
}

// t^e -> cinv^e theta^{2e}
LPoly subst_up(const LPoly& P, const FieldPtr& base, const FElem& c, const FElem& cinv) {
    if (P.coeffs.empty()) return P;
    LPoly out;
    out.lo = 2 * P.lo;
    out.coeffs.assign(2 * (P.coeffs.size() - 1) + 1, zero(base));
    for (size_t i = 0; i < P.coeffs.size(); ++i) {
        if (is_zero(P.coeffs[i])) continue;
        int64_t e = P.lo + int64_t(i);
        FElem scale = e >= 0 ? pow_i(cinv, e) : pow_i(c, -e);
        out.coeffs[2 * i] = mul(P.coeffs[i], scale);
    }
    return out;
}

// even part theta^{2j} -> c^j t^j; parity selects even (0) or odd (1) exponents,
// odd exponents are first divided by theta
LPoly collapse_down(const LPoly& Q, const FieldPtr& base, const FElem& c, const FElem& cinv,
                    int parity) {
    LPoly out;
    if (Q.coeffs.empty()) return out;
    std::vector<std::pair<int64_t, FElem>> terms;
    for (size_t i = 0; i < Q.coeffs.size(); ++i) {
        if (is_zero(Q.coeffs[i])) continue;
        int64_t e = Q.lo + int64_t(i);
        if (((e % 2) + 2) % 2 != parity) continue;
        int64_t j = (e - parity) / 2;
        FElem scale = j >= 0 ? pow_i(c, j) : pow_i(cinv, -j);
        terms.emplace_back(j, mul(Q.coeffs[i], scale));
    }
    if (terms.empty()) return out;
    int64_t lo = terms.front().first, hi = terms.back().first;
    out.lo = lo;
    out.coeffs.assign(size_t(hi - lo + 1), zero(base));
    for (auto& [j, v] : terms) out.coeffs[size_t(j - lo)] = v;
    return out;
}

}  // namespace

QuadExtPtr QuadExt::make(const FieldPtr& K, const SquareClass& d) {
    if (!same_field(d.field, K)) bad("class not over the given field");
    if (d.trivial()) bad("trivial class defines no field extension");
    auto e = std::make_shared<QuadExt>();
    e->K = K;
    e->d = d;
    e->delta = class_rep(d);
    if (K->is_finite()) {
        e->shape = Shape::FiniteConst;
        e->fin = FiniteExt::make(K, 2);
        e->L = e->fin->L;
        e->root = e->fin->root;
        return e;
    }
    if (d.top_bit()) {
        e->shape = Shape::Ramified;
        SquareClass cbase{K->base(), d.bits & ~(1u << K->height())};
        e->cunit = class_rep(cbase);
        e->L = Field::laurent(K->base(), fresh_symbol(K));
        e->root = uniformizer(e->L);
        return e;
    }
    e->shape = Shape::UnramTower;
    e->base_ext = QuadExt::make(K->base(), SquareClass{K->base(), d.bits});
    e->L = Field::laurent(e->base_ext->L, K->symbol);
    e->root = lift(e->L, e->base_ext->root);
    return e;
}

FElem QuadExt::embed(const FElem& x) const {
    if (!same_field(x.field, K)) bad("embed: element not in the base field");
    switch (shape) {
        case Shape::FiniteConst:
            return fin->embed(x);
        case Shape::UnramTower:
            return map_coeffs(L, x, [&](const FElem& c) { return base_ext->embed(c); });
        case Shape::Ramified: {
            FElem cinv = inv(cunit);
            LPoly n = subst_up(*x.num, L->base(), cunit, cinv);
            LPoly dn = subst_up(*x.den, L->base(), cunit, cinv);
            return make_fraction(L, std::move(n), std::move(dn));
        }
    }
    bad("unreachable");
}

namespace {
LPoly negate_odd(const LPoly& P) {
    LPoly out = P;
    for (size_t i = 0; i < out.coeffs.size(); ++i) {
        int64_t e = out.lo + int64_t(i);
        if (((e % 2) + 2) % 2 == 1) out.coeffs[i] = neg(out.coeffs[i]);
    }
    return out;
}
}  // namespace

FElem QuadExt::conj(const FElem& z) const {
    if (!same_field(z.field, L)) bad("conj: element not in the extension");
    switch (shape) {
        case Shape::FiniteConst:
            return fin->conj(z);
        case Shape::UnramTower:
            return map_coeffs(L, z, [&](const FElem& c) { return base_ext->conj(c); });
        case Shape::Ramified:
            return make_fraction(L, negate_odd(*z.num), negate_odd(*z.den));
    }
    bad("unreachable");
}

std::pair<FElem, FElem> QuadExt::decompose(const FElem& z) const {
    if (!same_field(z.field, L)) bad("decompose: element not in the extension");
    if (shape == Shape::FiniteConst) return fin->decompose(z);
    const FieldPtr& B = L->base();
    auto conj_lp = [&](const LPoly& P) {
        if (shape == Shape::Ramified) return negate_odd(P);
        LPoly out = P;
        for (auto& c : out.coeffs) c = base_ext->conj(c);
        return out;
    };
    auto lpmul = [&](const LPoly& a, const LPoly& b) {
        LPoly r;
        if (a.coeffs.empty() || b.coeffs.empty()) return r;
        r.lo = a.lo + b.lo;
        r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, zero(B));
        for (size_t i = 0; i < a.coeffs.size(); ++i)
            for (size_t j = 0; j < b.coeffs.size(); ++j)
                r.coeffs[i + j] = add(r.coeffs[i + j], mul(a.coeffs[i], b.coeffs[j]));
        return r;
    };
    LPoly cden = conj_lp(*z.den);
    LPoly nstar = lpmul(*z.num, cden);   // z * dstar
    LPoly dstar = lpmul(*z.den, cden);   // conj-invariant
    if (shape == Shape::Ramified) {
        FElem cinv = inv(cunit);
        for (size_t i = 0; i < dstar.coeffs.size(); ++i) {
            int64_t e = dstar.lo + int64_t(i);
            if (((e % 2) + 2) % 2 == 1 && !is_zero(dstar.coeffs[i]))
                throw std::logic_error("denominator not conjugation invariant");
        }
        LPoly dK = collapse_down(dstar, B, cunit, cinv, 0);
        FElem A = make_fraction(K, collapse_down(nstar, B, cunit, cinv, 0), dK);
        FElem Bv = make_fraction(K, collapse_down(nstar, B, cunit, cinv, 1), std::move(dK));
        return {A, Bv};
    }
    // UnramTower: coefficientwise split
    LPoly an, bn, dn;
    an.lo = bn.lo = nstar.lo;
    dn.lo = dstar.lo;
    for (const auto& c : nstar.coeffs) {
        auto [a, b] = base_ext->decompose(c);
        an.coeffs.push_back(a);
        bn.coeffs.push_back(b);
    }
    for (const auto& c : dstar.coeffs) dn.coeffs.push_back(base_ext->section(c));
    FElem A = make_fraction(K, std::move(an), dn);
    FElem Bv = make_fraction(K, std::move(bn), std::move(dn));
    return {A, Bv};
}

FElem QuadExt::section(const FElem& z) const {
    auto [a, b] = decompose(z);
    if (!is_zero(b)) throw std::domain_error("element not in the base-field image");
    return a;
}

FElem QuadExt::norm(const FElem& z) const {
    FElem n = section(mul(z, conj(z)));
    if (testing::corrupt_norm() && !is_zero(n)) {
        FieldPtr bf = K;
        while (bf->is_tower()) bf = bf->base();
        n = mul(n, constant(K, canonical_nonsquare(bf)));
    }
    return n;
}

FElem QuadExt::trace(const FElem& z) const { return section(add(z, conj(z))); }

SquareClass QuadExt::push_class(const SquareClass& c) const {
    if (c.trivial()) return trivial_class(L);
    return square_class(embed(class_rep(c)));
}

// ---------------------------------------------------------------------------
// constant extensions of arbitrary degree

std::shared_ptr<const ConstExt> ConstExt::make(const FieldPtr& K, int degree) {
    auto e = std::make_shared<ConstExt>();
    e->K = K;
    if (K->is_finite()) {
        e->fin = FiniteExt::make(K, degree);
        e->L = e->fin->L;
        return e;
    }
    e->below = ConstExt::make(K->base(), degree);
    e->L = Field::laurent(e->below->L, K->symbol);
    return e;
}

FElem ConstExt::embed(const FElem& x) const {
    if (!same_field(x.field, K)) bad("embed: element not in the base field");
    if (K->is_finite()) return fin->embed(x);
    return map_coeffs(L, x, [&](const FElem& c) { return below->embed(c); });
}

SquareClass ConstExt::push_class(const SquareClass& c) const {
    if (c.trivial()) return trivial_class(L);
    return square_class(embed(class_rep(c)));
}

}  // namespace qnp
