#pragma once

#include <array>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "qnp/quadform.hpp"

namespace qnp {

// Etale quadratic algebra attached to the signed discriminant of an even
// dimensional form: split when the class is trivial, else K(sqrt(d)).
struct EtaleQuad {
    FieldPtr F;
    SquareClass d;
    QuadExtPtr ext;  // null iff split

    bool split() const { return ext == nullptr; }
};

EtaleQuad discriminant_algebra(const QuadForm& Q);

// One element of the finite model of H^1(F, mu).  Shape depends on the parity
// of n = dim(Q)/2 and on whether the discriminant algebra is split:
//   n even, Z field:  a square class of Z^*
//   n even, Z split:  a pair of F square classes
//   n odd,  Z field:  a pair (f, z), f in F^*, z in Z^*, f^4 = N(z)
//   n odd,  Z split:  (f, z1, z2) with z1 z2 = f^4
struct H1EvenField { SquareClass z; };
struct H1EvenSplit { SquareClass a, b; };
struct H1OddField  { FElem f, z; };
struct H1OddSplit  { FElem f, z1, z2; };

struct H1Elem {
    std::variant<H1EvenField, H1EvenSplit, H1OddField, H1OddSplit> v;
};

class H1Context;
using H1ContextPtr = std::shared_ptr<const H1Context>;

// The H^1(F, mu) model for a fixed even-dimensional form Q/F, with the maps
// i and j, the U_0-equivalence decision procedure, enumeration, and H.
class H1Context : public std::enable_shared_from_this<H1Context> {
public:
    FieldPtr F;
    QuadForm Q;
    int n = 0;
    bool odd = false;
    EtaleQuad Z;
    Subgroup G;  // similarity group of Q

    static H1ContextPtr make(const QuadForm& Q);

    H1Elem trivial() const;
    H1Elem mul(const H1Elem& x, const H1Elem& y) const;
    bool equal(const H1Elem& x, const H1Elem& y) const;
    bool is_trivial(const H1Elem& x) const { return equal(x, trivial()); }
    void validate(const H1Elem& x) const;  // exact U-membership for odd parity

    H1Elem map_i(const SquareClass& f) const;
    H1Elem map_i_elem(const FElem& f) const;  // representative level
    SquareClass map_j(const H1Elem& x) const;

    // Hilbert-90 section over Im j: j(section(lambda)) = lambda, i-part trivial
    H1Elem section(const SquareClass& lambda) const;
    FElem norm_preimage(const SquareClass& lambda) const;  // z0 in Z, [N(z0)] = lambda

    Subgroup image_j() const;                  // Im j as subgroup of F-classes
    const std::vector<H1Elem>& enumerate() const;
    std::vector<H1Elem> unit_level() const;    // classes with valuation-0 representatives
    std::vector<H1Elem> subgroup_H() const;    // {x : j(x) in G(Q)}

    // Z-side helpers (field case uses the extension, split is componentwise)
    FElem znorm(const FElem& z) const;
    FElem zconj(const FElem& z) const;

    // Strips uniformizer exponents off a class with unit j; returns the
    // unit-level class and the exponent, with the recomposition verified.
    std::pair<H1Elem, int64_t> decompose_unramified(const H1Elem& u) const;

private:
    mutable std::vector<H1Elem> classes_;  // filled at construction
};

// Residue-field specialization of a unit-level class (Z unramified or split).
std::pair<H1ContextPtr, H1Elem> specialize(const H1Context& ctx, const H1Elem& x);

// Everything attached to one (K, Q, L/K) cell: the models at both levels and
// the exact norm (corestriction) and restriction maps between them.
class NormContext {
public:
    enum class ZShape { BothSplit, SplitOverL, FieldField };

    H1ContextPtr ctxK, ctxL;
    QuadExtPtr ext;  // L/K
    ZShape zshape = ZShape::BothSplit;

    static std::shared_ptr<const NormContext> make(const QuadForm& Q, const SquareClass& e);

    H1Elem h1_norm(const H1Elem& xL) const;
    H1Elem res(const H1Elem& xK) const;

    // N_{Z_L/Z} on elements of the Z_L tower (FieldField shape)
    FElem norm_ZLZ(const FElem& z) const;

private:
    FElem s_;       // in L: s^2 = embed(delta_K) / delta_{Z_L}
    FElem deltaK_;  // radicand of Z over K
};
using NormContextPtr = std::shared_ptr<const NormContext>;

// monomial square root of an exact single-term fraction with trivial class
FElem monomial_sqrt(const FElem& x);

}  // namespace qnp
