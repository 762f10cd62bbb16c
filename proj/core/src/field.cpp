#include "qnp/field.hpp"

#include <algorithm>
#include <stdexcept>

#include "qnp/gfp.hpp"

namespace qnp {

namespace {

[[noreturn]] void bad(const char* msg) { throw std::invalid_argument(msg); }

void require_same(const FElem& x, const FElem& y) {
    if (!same_field(x.field, y.field)) bad("operands belong to different fields");
}

}  // namespace

// ---------------------------------------------------------------------------
// Field descriptors

FieldPtr Field::finite(int64_t p, std::vector<int64_t> modulus) {
    if (p < 3 || p % 2 == 0) bad("finite base characteristic must be odd");
    for (int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) bad("finite base characteristic must be prime");
    gfp::trim(modulus);
    if (modulus.size() < 2 || modulus.back() != 1) bad("modulus must be monic of degree >= 1");
    for (auto& c : modulus) c = gfp::mod(c, p);
    if (modulus.back() != 1) bad("modulus must be monic");
    if (!gfp::is_irreducible(modulus, p)) bad("modulus is reducible");
    auto f = std::make_shared<Field>();
    f->kind = Kind::Finite;
    f->p = p;
    f->deg = int(modulus.size()) - 1;
    f->q = 1;
    for (int i = 0; i < f->deg; ++i) f->q *= p;
    f->modulus = std::move(modulus);
    return f;
}

FieldPtr Field::finite_q(int64_t q) {
    if (q < 3) bad("field order must be an odd prime power >= 3");
    int64_t p = 0;
    for (int64_t d = 3; d * d <= q; d += 2)
        if (q % d == 0) { p = d; break; }
    if (p == 0) p = q;  // q prime
    int degree = 0;
    int64_t v = q;
    while (v > 1) {
        if (v % p != 0) bad("field order must be a prime power");
        v /= p;
        ++degree;
    }
    return finite(p, gfp::first_irreducible(p, degree));
}

FieldPtr Field::laurent(FieldPtr base, std::string symbol) {
    if (!base) bad("null base field");
    if (symbol.empty()) bad("uniformizer symbol must be nonempty");
    for (const auto& s : base->symbols())
        if (s == symbol) bad("uniformizer symbols must be distinct across layers");
    auto f = std::make_shared<Field>();
    f->kind = Kind::Tower;
    f->base_ = std::move(base);
    f->symbol = std::move(symbol);
    return f;
}

int Field::height() const {
    return kind == Kind::Finite ? 0 : 1 + base_->height();
}

const Field& Field::bottom() const {
    return kind == Kind::Finite ? *this : base_->bottom();
}

const FieldPtr& Field::base() const {
    if (kind != Kind::Tower) bad("finite field has no tower base");
    return base_;
}

std::vector<std::string> Field::symbols() const {
    if (kind == Kind::Finite) return {};
    auto s = base_->symbols();
    s.push_back(symbol);
    return s;
}

std::string Field::name() const {
    if (kind == Kind::Finite) return "F" + std::to_string(q);
    return base_->name() + "((" + symbol + "))";
}

bool same_field(const Field& a, const Field& b) {
    if (&a == &b) return true;
    if (a.kind != b.kind) return false;
    if (a.kind == Field::Kind::Finite)
        return a.p == b.p && a.modulus == b.modulus;
    return a.symbol == b.symbol && same_field(*a.base_, *b.base_);
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return same_field(*a, *b);
}

// ---------------------------------------------------------------------------
// Laurent polynomial helpers (coefficients in the base field)

namespace {

LPoly lp_trim(LPoly a) {
    size_t begin = 0, end = a.coeffs.size();
    while (begin < end && is_zero(a.coeffs[begin])) ++begin;
    while (end > begin && is_zero(a.coeffs[end - 1])) --end;
    if (begin == end) return LPoly{};
    LPoly r;
    r.lo = a.lo + int64_t(begin);
    r.coeffs.assign(a.coeffs.begin() + begin, a.coeffs.begin() + end);
    return r;
}

bool lp_is_zero(const LPoly& a) { return a.coeffs.empty(); }

LPoly lp_const(const FElem& c) {
    LPoly r;
    if (!is_zero(c)) r.coeffs = {c};
    return r;
}

LPoly lp_add(const FieldPtr& base, const LPoly& a, const LPoly& b) {
    if (lp_is_zero(a)) return b;
    if (lp_is_zero(b)) return a;
    int64_t lo = std::min(a.lo, b.lo);
    int64_t hi = std::max(a.lo + int64_t(a.coeffs.size()), b.lo + int64_t(b.coeffs.size()));
    LPoly r;
    r.lo = lo;
    r.coeffs.assign(size_t(hi - lo), zero(base));
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        r.coeffs[size_t(a.lo - lo) + i] = a.coeffs[i];
    for (size_t i = 0; i < b.coeffs.size(); ++i) {
        auto& slot = r.coeffs[size_t(b.lo - lo) + i];
        slot = add(slot, b.coeffs[i]);
    }
    return lp_trim(std::move(r));
}

LPoly lp_neg(const LPoly& a) {
    LPoly r = a;
    for (auto& c : r.coeffs) c = neg(c);
    return r;
}

LPoly lp_mul(const FieldPtr& base, const LPoly& a, const LPoly& b) {
    if (lp_is_zero(a) || lp_is_zero(b)) return LPoly{};
    LPoly r;
    r.lo = a.lo + b.lo;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, zero(base));
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        for (size_t j = 0; j < b.coeffs.size(); ++j)
            r.coeffs[i + j] = add(r.coeffs[i + j], mul(a.coeffs[i], b.coeffs[j]));
    return lp_trim(std::move(r));
}

LPoly lp_scale(const LPoly& a, const FElem& c) {
    if (is_zero(c)) return LPoly{};
    LPoly r = a;
    for (auto& x : r.coeffs) x = mul(x, c);
    return lp_trim(std::move(r));
}

// exact division by a nonzero polynomial; remainder must vanish
bool lp_divmod(const FieldPtr& base, const LPoly& a, const LPoly& b, LPoly& quo) {
    if (lp_is_zero(b)) bad("division by zero polynomial");
    if (lp_is_zero(a)) { quo = LPoly{}; return true; }
    if (a.coeffs.size() < b.coeffs.size()) return false;
    LPoly r = a;
    FElem linv = inv(b.coeffs.back());
    LPoly qacc;
    qacc.lo = a.lo - b.lo;
    qacc.coeffs.assign(a.coeffs.size() - b.coeffs.size() + 1, zero(base));
    while (!lp_is_zero(r) && r.coeffs.size() >= b.coeffs.size()) {
        FElem c = mul(r.coeffs.back(), linv);
        int64_t shift = (r.lo + int64_t(r.coeffs.size())) - (b.lo + int64_t(b.coeffs.size()));
        int64_t qidx = shift - qacc.lo;
        if (qidx < 0 || size_t(qidx) >= qacc.coeffs.size()) return false;
        LPoly term;
        term.lo = shift;
        term.coeffs = {c};
        qacc.coeffs[size_t(qidx)] = add(qacc.coeffs[size_t(qidx)], c);
        r = lp_add(base, r, lp_neg(lp_mul(base, term, b)));
    }
    if (!lp_is_zero(r)) return false;
    quo = lp_trim(std::move(qacc));
    return true;
}

// gcd of the coefficient polynomials, ignoring t-power units
LPoly lp_gcd(const FieldPtr& base, LPoly a, LPoly b) {
    a = lp_trim(std::move(a)); a.lo = 0;
    b = lp_trim(std::move(b)); b.lo = 0;
    while (!lp_is_zero(b)) {
        LPoly r = a;
        FElem linv = inv(b.coeffs.back());
        while (!lp_is_zero(r) && r.coeffs.size() >= b.coeffs.size()) {
            FElem c = mul(r.coeffs.back(), linv);
            LPoly term;
            term.lo = (r.lo + int64_t(r.coeffs.size())) - int64_t(b.coeffs.size());
            term.coeffs = {c};
            r = lp_add(base, r, lp_neg(lp_mul(base, term, b)));
        }
        r = lp_trim(std::move(r));
        r.lo = 0;
        a = std::move(b);
        b = std::move(r);
    }
    if (!lp_is_zero(a) && !eq(a.coeffs.back(), one(base))) a = lp_scale(a, inv(a.coeffs.back()));
    return a;
}

constexpr size_t kGcdThreshold = 10;

}  // namespace

// ---------------------------------------------------------------------------
// element construction

FElem zero(const FieldPtr& F) {
    FElem e;
    e.field = F;
    if (F->is_finite()) {
        e.fin.assign(size_t(F->deg), 0);
    } else {
        e.num = std::make_shared<LPoly>();
        auto d = std::make_shared<LPoly>();
        d->coeffs = {one(F->base())};
        e.den = std::move(d);
    }
    return e;
}

FElem one(const FieldPtr& F) { return from_int(F, 1); }

FElem from_int(const FieldPtr& F, int64_t n) {
    if (F->is_finite()) {
        FElem e;
        e.field = F;
        e.fin.assign(size_t(F->deg), 0);
        e.fin[0] = gfp::mod(n, F->p);
        return e;
    }
    return lift(F, from_int(F->base(), n));
}

FElem finite_elem(const FieldPtr& F, std::vector<int64_t> coeffs) {
    if (!F->is_finite()) bad("finite_elem on tower field");
    if (coeffs.size() > size_t(F->deg)) {
        gfp::Poly r = gfp::rem(std::move(coeffs), F->modulus, F->p);
        coeffs = std::move(r);
    }
    coeffs.resize(size_t(F->deg), 0);
    for (auto& c : coeffs) c = gfp::mod(c, F->p);
    FElem e;
    e.field = F;
    e.fin = std::move(coeffs);
    return e;
}

FElem lift(const FieldPtr& tower, const FElem& base_elem) {
    if (!tower->is_tower()) bad("lift target must be a tower");
    if (!same_field(tower->base(), base_elem.field)) bad("lift: element not in tower base");
    FElem e;
    e.field = tower;
    auto n = std::make_shared<LPoly>(lp_const(base_elem));
    auto d = std::make_shared<LPoly>();
    d->coeffs = {one(tower->base())};
    e.num = std::move(n);
    e.den = std::move(d);
    return e;
}

FElem constant(const FieldPtr& F, const FElem& bottom_elem) {
    if (F->is_finite()) {
        if (!same_field(F, bottom_elem.field)) bad("constant: wrong bottom field");
        return bottom_elem;
    }
    return lift(F, constant(F->base(), bottom_elem));
}

FElem make_fraction(const FieldPtr& tower, LPoly num, LPoly den) {
    if (!tower->is_tower()) bad("make_fraction on finite field");
    const FieldPtr& B = tower->base();
    num = lp_trim(std::move(num));
    den = lp_trim(std::move(den));
    if (lp_is_zero(den)) throw std::domain_error("division by zero");
    if (lp_is_zero(num)) return zero(tower);
    // cancel the t-power of the denominator into the numerator
    num.lo -= den.lo;
    den.lo = 0;
    if (den.coeffs.size() == 1) {
        if (!eq(den.coeffs[0], one(B))) {
            FElem dinv = inv(den.coeffs[0]);
            for (auto& c : num.coeffs) c = mul(c, dinv);
        }
        den.coeffs = {one(B)};
    } else if (num.coeffs.size() + den.coeffs.size() > kGcdThreshold) {
        LPoly g = lp_gcd(B, num, den);
        if (g.coeffs.size() > 1) {
            LPoly qn, qd;
            LPoly n0 = num; n0.lo = 0;
            LPoly d0 = den; d0.lo = 0;
            if (lp_divmod(B, n0, g, qn) && lp_divmod(B, d0, g, qd)) {
                qn.lo += num.lo;
                num = std::move(qn);
                den = std::move(qd);
                num.lo -= den.lo;
                den.lo = 0;
                if (den.coeffs.size() == 1 && !eq(den.coeffs[0], one(B))) {
                    FElem dinv = inv(den.coeffs[0]);
                    for (auto& c : num.coeffs) c = mul(c, dinv);
                    den.coeffs = {one(B)};
                }
            }
        }
    }
    FElem e;
    e.field = tower;
    e.num = std::make_shared<LPoly>(std::move(num));
    e.den = std::make_shared<LPoly>(std::move(den));
    return e;
}

FElem uniformizer(const FieldPtr& tower) { return t_power(tower, 1); }

FElem t_power(const FieldPtr& tower, int64_t e) {
    if (!tower->is_tower()) bad("t_power on finite field");
    LPoly n;
    n.lo = e;
    n.coeffs = {one(tower->base())};
    LPoly d;
    d.coeffs = {one(tower->base())};
    return make_fraction(tower, std::move(n), std::move(d));
}

// ---------------------------------------------------------------------------
// arithmetic

bool is_zero(const FElem& x) {
    if (x.field->is_finite()) {
        for (auto c : x.fin)
            if (c != 0) return false;
        return true;
    }
    return lp_is_zero(*x.num);
}

bool eq(const FElem& x, const FElem& y) {
    require_same(x, y);
    if (x.field->is_finite()) return x.fin == y.fin;
    const FieldPtr& B = x.field->base();
    LPoly lhs = lp_mul(B, *x.num, *y.den);
    LPoly rhs = lp_mul(B, *y.num, *x.den);
    return lp_is_zero(lp_add(B, lhs, lp_neg(rhs)));
}

FElem add(const FElem& x, const FElem& y) {
    require_same(x, y);
    if (x.field->is_finite()) {
        FElem r;
        r.field = x.field;
        r.fin.resize(x.fin.size());
        for (size_t i = 0; i < x.fin.size(); ++i) r.fin[i] = gfp::mod(x.fin[i] + y.fin[i], x.field->p);
        return r;
    }
    const FieldPtr& B = x.field->base();
    LPoly n = lp_add(B, lp_mul(B, *x.num, *y.den), lp_mul(B, *y.num, *x.den));
    LPoly d = lp_mul(B, *x.den, *y.den);
    return make_fraction(x.field, std::move(n), std::move(d));
}

FElem sub(const FElem& x, const FElem& y) { return add(x, neg(y)); }

FElem neg(const FElem& x) {
    if (x.field->is_finite()) {
        FElem r;
        r.field = x.field;
        r.fin.resize(x.fin.size());
        for (size_t i = 0; i < x.fin.size(); ++i) r.fin[i] = gfp::mod(-x.fin[i], x.field->p);
        return r;
    }
    FElem r;
    r.field = x.field;
    r.num = std::make_shared<LPoly>(lp_neg(*x.num));
    r.den = x.den;
    return r;
}

FElem mul(const FElem& x, const FElem& y) {
    require_same(x, y);
    if (x.field->is_finite()) {
        FElem r;
        r.field = x.field;
        r.fin = gfp::mulmod(x.fin, y.fin, x.field->modulus, x.field->p);
        r.fin.resize(size_t(x.field->deg), 0);
        return r;
    }
    const FieldPtr& B = x.field->base();
    return make_fraction(x.field, lp_mul(B, *x.num, *y.num), lp_mul(B, *x.den, *y.den));
}

FElem inv(const FElem& x) {
    if (is_zero(x)) throw std::domain_error("division by zero");
    if (x.field->is_finite()) {
        FElem r;
        r.field = x.field;
        r.fin = gfp::invmod(x.fin, x.field->modulus, x.field->p);
        r.fin.resize(size_t(x.field->deg), 0);
        return r;
    }
    return make_fraction(x.field, *x.den, *x.num);
}

FElem div(const FElem& x, const FElem& y) { return mul(x, inv(y)); }

FElem pow_i(const FElem& x, int64_t e) {
    if (e < 0) return pow_i(inv(x), -e);
    FElem r = one(x.field);
    FElem b = x;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// valuation and residue

int64_t valuation(const FElem& x) {
    if (!x.field->is_tower()) bad("valuation on finite field");
    if (is_zero(x)) throw std::domain_error("valuation of zero");
    return x.num->lo - x.den->lo;
}

FElem unit_part(const FElem& x) {
    int64_t v = valuation(x);
    return mul(x, t_power(x.field, -v));
}

FElem residue(const FElem& x) {
    if (!x.field->is_tower()) bad("residue on finite field");
    if (is_zero(x)) return zero(x.field->base());
    int64_t v = valuation(x);
    if (v < 0) throw std::domain_error("residue of negative valuation element");
    if (v > 0) return zero(x.field->base());
    return div(x.num->coeffs.front(), x.den->coeffs.front());
}

std::pair<int64_t, FElem> val_res(const FElem& x) {
    int64_t v = valuation(x);
    return {v, div(x.num->coeffs.front(), x.den->coeffs.front())};
}

FElem rebase(const FieldPtr& F, const FElem& x) {
    if (x.field == F) return x;
    if (!same_field(F, x.field)) bad("rebase between different fields");
    FElem r = x;
    r.field = F;
    return r;
}

// ---------------------------------------------------------------------------
// finite field enumeration

int64_t finite_size(const Field& F) {
    if (!F.is_finite()) bad("finite_size on tower");
    return F.q;
}

FElem finite_at(const FieldPtr& F, int64_t index) {
    if (!F->is_finite()) bad("finite_at on tower");
    std::vector<int64_t> c(size_t(F->deg), 0);
    for (int i = 0; i < F->deg; ++i) { c[size_t(i)] = index % F->p; index /= F->p; }
    FElem e;
    e.field = F;
    e.fin = std::move(c);
    return e;
}

int64_t finite_index(const FElem& x) {
    if (!x.field->is_finite()) bad("finite_index on tower");
    int64_t idx = 0;
    for (size_t i = x.fin.size(); i-- > 0;) idx = idx * x.field->p + x.fin[i];
    return idx;
}

}  // namespace qnp
