#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace qnp {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Descriptor of a supported coefficient field: a finite field F_q with q odd
// (as F_p[x]/(modulus)) or an iterated Laurent tower F_q((t_1))...((t_r)).
// Descriptors are immutable and shareable across threads.
class Field {
public:
    enum class Kind { Finite, Tower };

    Kind kind = Kind::Finite;

    // Finite layer
    int64_t p = 0;
    int deg = 0;
    int64_t q = 0;
    std::vector<int64_t> modulus;  // monic over F_p, ascending, size deg+1

    // Tower layer
    FieldPtr base_;
    std::string symbol;

    static FieldPtr finite(int64_t p, std::vector<int64_t> modulus);
    static FieldPtr finite_q(int64_t q);  // canonical (lex-least) modulus
    static FieldPtr laurent(FieldPtr base, std::string symbol);

    bool is_finite() const { return kind == Kind::Finite; }
    bool is_tower() const { return kind == Kind::Tower; }
    int height() const;
    const Field& bottom() const;       // finite bottom layer
    const FieldPtr& base() const;      // tower base; throws on finite fields
    std::vector<std::string> symbols() const;  // bottom-up uniformizer names
    std::string name() const;
};

bool same_field(const Field& a, const Field& b);
bool same_field(const FieldPtr& a, const FieldPtr& b);

struct FElem;

// Finitely supported Laurent polynomial in the top uniformizer.  Coefficients
// live in the base field.  Trimmed: first and last coefficient nonzero.
struct LPoly {
    int64_t lo = 0;
    std::vector<FElem> coeffs;
};

// Exact element: finite fields hold a residue polynomial over F_p, towers a
// fraction of Laurent polynomials.  Immutable once constructed.
struct FElem {
    FieldPtr field;
    std::vector<int64_t> fin;               // finite data, size deg
    std::shared_ptr<const LPoly> num, den;  // tower data, den != 0
};

// construction
FElem zero(const FieldPtr& F);
FElem one(const FieldPtr& F);
FElem from_int(const FieldPtr& F, int64_t n);
FElem finite_elem(const FieldPtr& F, std::vector<int64_t> coeffs);
FElem lift(const FieldPtr& tower, const FElem& base_elem);  // constant coefficient
FElem constant(const FieldPtr& F, const FElem& bottom_elem);  // lift through all layers
FElem make_fraction(const FieldPtr& tower, LPoly num, LPoly den);
FElem uniformizer(const FieldPtr& tower);
FElem t_power(const FieldPtr& tower, int64_t e);

// predicates / arithmetic
bool is_zero(const FElem& x);
bool eq(const FElem& x, const FElem& y);
FElem add(const FElem& x, const FElem& y);
FElem sub(const FElem& x, const FElem& y);
FElem neg(const FElem& x);
FElem mul(const FElem& x, const FElem& y);
FElem inv(const FElem& x);
FElem div(const FElem& x, const FElem& y);
FElem pow_i(const FElem& x, int64_t e);

inline FElem operator+(const FElem& a, const FElem& b) { return add(a, b); }
inline FElem operator-(const FElem& a, const FElem& b) { return sub(a, b); }
inline FElem operator-(const FElem& a) { return neg(a); }
inline FElem operator*(const FElem& a, const FElem& b) { return mul(a, b); }
inline FElem operator/(const FElem& a, const FElem& b) { return div(a, b); }

// valuation and residue (towers; exact)
int64_t valuation(const FElem& x);           // throws on zero
FElem unit_part(const FElem& x);             // x * t^{-v}
FElem residue(const FElem& x);               // image in base of a valuation >= 0 element
std::pair<int64_t, FElem> val_res(const FElem& x);

// reinterpret an element in a structurally equal field
FElem rebase(const FieldPtr& F, const FElem& x);

// enumeration of finite fields (index <-> element, lex order by digits)
int64_t finite_size(const Field& F);   // q
FElem finite_at(const FieldPtr& F, int64_t index);
int64_t finite_index(const FElem& x);

}  // namespace qnp
