#pragma once

#include <cstdint>
#include <vector>

#include "qnp/field.hpp"

namespace qnp {

// Square class of K*: an F_2 vector over the basis [u, t_1, ..., t_r], where u
// is the canonical lifted nonsquare unit of the bottom finite field and the
// t_i are the tower uniformizers bottom-up.  Bit 0 is u, bit i is t_i.
struct SquareClass {
    FieldPtr field;
    uint32_t bits = 0;

    int width() const { return field->height() + 1; }
    bool trivial() const { return bits == 0; }
    // set iff the top uniformizer enters the representative
    bool top_bit() const { return field->is_tower() && ((bits >> field->height()) & 1u); }
    // unit with respect to the top valuation (lower uniformizers are units)
    bool unit() const { return !top_bit(); }
};

bool operator==(const SquareClass& a, const SquareClass& b);
inline bool operator!=(const SquareClass& a, const SquareClass& b) { return !(a == b); }

SquareClass trivial_class(const FieldPtr& F);
SquareClass class_from_bits(const FieldPtr& F, uint32_t bits);
SquareClass class_mul(const SquareClass& a, const SquareClass& b);
std::vector<SquareClass> all_classes(const FieldPtr& F);

// canonical nonsquare of a finite field: least nonsquare in the enumeration of
// polynomial representatives
FElem canonical_nonsquare(const FieldPtr& finite);

bool is_square(const FElem& x);           // x != 0
bool is_fourth_power(const FElem& x);     // x != 0
SquareClass square_class(const FElem& x);
FElem class_rep(const SquareClass& c);    // canonical monomial representative
SquareClass neg_one_class(const FieldPtr& F);

// quadratic Hilbert symbol: +1 iff z^2 = a x^2 + b y^2 has a nontrivial zero
int hilbert_symbol(const FElem& a, const FElem& b);
int hilbert_symbol(const SquareClass& a, const SquareClass& b);

// Subgroup of K*/K*^2 as a row-reduced F_2 span.
struct Subgroup {
    FieldPtr field;
    std::vector<uint32_t> basis;  // reduced row echelon, decreasing pivots

    bool contains(const SquareClass& c) const;
    bool contains_mask(uint32_t mask) const;
    size_t order() const { return size_t(1) << basis.size(); }
    std::vector<SquareClass> elements() const;
    bool full() const { return basis.size() == size_t(field->height() + 1); }
};

bool operator==(const Subgroup& a, const Subgroup& b);

Subgroup span_subgroup(const FieldPtr& F, const std::vector<uint32_t>& gens);
Subgroup span_classes(const FieldPtr& F, const std::vector<SquareClass>& gens);
Subgroup full_group(const FieldPtr& F);

// {lambda : (lambda, d) = +1} = N(K(sqrt(d))^*) modulo squares
Subgroup norm_group(const FieldPtr& K, const SquareClass& d);

namespace testing {
// Test-only fault injection used by the mutation-sensitivity harness checks.
void set_corrupt_hilbert(bool on);
void set_corrupt_norm(bool on);
bool corrupt_hilbert();
bool corrupt_norm();
}  // namespace testing

}  // namespace qnp
