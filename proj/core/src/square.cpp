#include "qnp/square.hpp"

#include <atomic>
#include <numeric>
#include <stdexcept>

namespace qnp {

namespace {

[[noreturn]] void bad(const char* msg) { throw std::invalid_argument(msg); }

// quadratic character on a finite field
bool finite_is_square(const FElem& x) {
    const Field& F = *x.field;
    FElem t = pow_i(x, (F.q - 1) / 2);
    return eq(t, one(x.field));
}

}  // namespace

bool operator==(const SquareClass& a, const SquareClass& b) {
    return a.bits == b.bits && same_field(a.field, b.field);
}

SquareClass trivial_class(const FieldPtr& F) { return SquareClass{F, 0}; }

SquareClass class_from_bits(const FieldPtr& F, uint32_t bits) {
    if (bits >> (F->height() + 1)) bad("class bits exceed basis width");
    return SquareClass{F, bits};
}

SquareClass class_mul(const SquareClass& a, const SquareClass& b) {
    if (!same_field(a.field, b.field)) bad("class product across fields");
    return SquareClass{a.field, a.bits ^ b.bits};
}

std::vector<SquareClass> all_classes(const FieldPtr& F) {
    std::vector<SquareClass> out;
    uint32_t n = 1u << (F->height() + 1);
    out.reserve(n);
    for (uint32_t m = 0; m < n; ++m) out.push_back(SquareClass{F, m});
    return out;
}

FElem canonical_nonsquare(const FieldPtr& finite) {
    if (!finite->is_finite()) bad("canonical_nonsquare wants a finite field");
    for (int64_t i = 2; i < finite->q; ++i) {
        FElem x = finite_at(finite, i);
        if (!finite_is_square(x)) return x;
    }
    throw std::logic_error("no nonsquare found");
}

bool is_square(const FElem& x) {
    if (is_zero(x)) throw std::domain_error("square test on zero");
    if (x.field->is_finite()) return finite_is_square(x);
    auto [v, r] = val_res(x);
    return v % 2 == 0 && is_square(r);
}

bool is_fourth_power(const FElem& x) {
    if (is_zero(x)) throw std::domain_error("fourth-power test on zero");
    if (x.field->is_finite()) {
        int64_t g = std::gcd<int64_t>(4, x.field->q - 1);
        return eq(pow_i(x, (x.field->q - 1) / g), one(x.field));
    }
    auto [v, r] = val_res(x);
    return v % 4 == 0 && is_fourth_power(r);
}

SquareClass square_class(const FElem& x) {
    if (is_zero(x)) throw std::domain_error("square class of zero");
    if (x.field->is_finite())
        return SquareClass{x.field, finite_is_square(x) ? 0u : 1u};
    auto [v, r] = val_res(x);
    SquareClass below = square_class(r);
    uint32_t bits = below.bits | (uint32_t(v & 1) << x.field->height());
    return SquareClass{x.field, bits};
}

FElem class_rep(const SquareClass& c) {
    const FieldPtr& F = c.field;
    if (F->is_finite())
        return (c.bits & 1) ? canonical_nonsquare(F) : one(F);
    SquareClass below{F->base(), c.bits & ~(1u << F->height())};
    FElem r = lift(F, class_rep(below));
    if (c.bits >> F->height() & 1) r = mul(r, uniformizer(F));
    return r;
}

SquareClass neg_one_class(const FieldPtr& F) {
    FElem m = from_int(F, -1);
    return square_class(m);
}

// ---------------------------------------------------------------------------
// Hilbert symbol

namespace testing {
namespace {
std::atomic<bool> g_corrupt_hilbert{false};
std::atomic<bool> g_corrupt_norm{false};
}  // namespace
void set_corrupt_hilbert(bool on) { g_corrupt_hilbert.store(on); }
void set_corrupt_norm(bool on) { g_corrupt_norm.store(on); }
bool corrupt_hilbert() { return g_corrupt_hilbert.load(); }
bool corrupt_norm() { return g_corrupt_norm.load(); }
}  // namespace testing

namespace {

int hilbert_impl(const FElem& a, const FElem& b) {
    if (is_zero(a) || is_zero(b)) throw std::domain_error("hilbert symbol of zero");
    if (a.field->is_finite()) {
        // every 3-dimensional form over a finite field is isotropic
        return +1;
    }
    auto [va, ra] = val_res(a);
    auto [vb, rb] = val_res(b);
    if (va % 2 == 0 && vb % 2 == 0) return hilbert_impl(ra, rb);
    // tame residue (-1)^{va vb} u^{vb} w^{-va}, exponents mod 2
    FElem c = one(ra.field);
    if ((va & 1) && (vb & 1)) c = neg(c);
    if (vb & 1) c = mul(c, ra);
    if (va & 1) c = mul(c, rb);  // w^{-1} ~ w modulo squares
    return is_square(c) ? +1 : -1;
}

}  // namespace

int hilbert_symbol(const FElem& a, const FElem& b) {
    int s = hilbert_impl(a, b);
    if (testing::corrupt_hilbert() && !square_class(a).trivial() && !square_class(b).trivial())
        return -s;
    return s;
}

int hilbert_symbol(const SquareClass& a, const SquareClass& b) {
    return hilbert_symbol(class_rep(a), class_rep(b));
}

// ---------------------------------------------------------------------------
// F_2 spans

namespace {

// reduce a mask against a reduced basis; returns the residual mask
uint32_t reduce_mask(const std::vector<uint32_t>& basis, uint32_t m) {
    for (uint32_t row : basis) {
        uint32_t pivot = uint32_t(31 - __builtin_clz(row));
        if (m >> pivot & 1) m ^= row;
    }
    return m;
}

}  // namespace

bool Subgroup::contains_mask(uint32_t mask) const { return reduce_mask(basis, mask) == 0; }

bool Subgroup::contains(const SquareClass& c) const {
    if (!same_field(c.field, field)) bad("membership across fields");
    return contains_mask(c.bits);
}

std::vector<SquareClass> Subgroup::elements() const {
    std::vector<SquareClass> out;
    out.reserve(order());
    for (uint32_t sel = 0; sel < (1u << basis.size()); ++sel) {
        uint32_t m = 0;
        for (size_t i = 0; i < basis.size(); ++i)
            if (sel >> i & 1) m ^= basis[i];
        out.push_back(SquareClass{field, m});
    }
    return out;
}

bool operator==(const Subgroup& a, const Subgroup& b) {
    return same_field(a.field, b.field) && a.basis == b.basis;
}

Subgroup span_subgroup(const FieldPtr& F, const std::vector<uint32_t>& gens) {
    std::vector<uint32_t> basis;
    for (uint32_t g : gens) {
        uint32_t m = reduce_mask(basis, g);
        if (m == 0) continue;
        basis.push_back(m);
        // keep rows sorted by pivot, fully reduced
        for (size_t i = basis.size(); i-- > 1;)
            if (basis[i] > basis[i - 1]) std::swap(basis[i], basis[i - 1]);
        for (size_t i = 0; i < basis.size(); ++i) {
            uint32_t pivot = uint32_t(31 - __builtin_clz(basis[i]));
            for (size_t j = 0; j < basis.size(); ++j)
                if (j != i && (basis[j] >> pivot & 1)) basis[j] ^= basis[i];
        }
    }
    return Subgroup{F, std::move(basis)};
}

Subgroup span_classes(const FieldPtr& F, const std::vector<SquareClass>& gens) {
    std::vector<uint32_t> masks;
    masks.reserve(gens.size());
    for (const auto& g : gens) {
        if (!same_field(g.field, F)) bad("span across fields");
        masks.push_back(g.bits);
    }
    return span_subgroup(F, masks);
}

Subgroup full_group(const FieldPtr& F) {
    std::vector<uint32_t> gens;
    for (int i = 0; i <= F->height(); ++i) gens.push_back(1u << i);
    return span_subgroup(F, gens);
}

Subgroup norm_group(const FieldPtr& K, const SquareClass& d) {
    if (d.trivial()) bad("norm group needs a nontrivial class");
    FElem drep = class_rep(d);
    std::vector<uint32_t> members;
    for (const auto& c : all_classes(K))
        if (hilbert_symbol(class_rep(c), drep) == +1) members.push_back(c.bits);
    return span_subgroup(K, members);
}

}  // namespace qnp
