#pragma once

#include <memory>
#include <utility>

#include "qnp/field.hpp"
#include "qnp/square.hpp"

namespace qnp {

class QuadExt;
using QuadExtPtr = std::shared_ptr<const QuadExt>;

// Degree-[L:K] constant extension data for finite fields F_q -> F_{q^k}:
// canonical modulus (lex-least irreducible over F_p) and lex-least root
// embedding, with exact two-way linear algebra over F_p.
struct FiniteExt {
    FieldPtr K, L;
    int degree = 2;
    std::vector<FElem> rho_pow;           // images of x^0..x^{deg_K-1} in L
    std::vector<int64_t> solve_matrix;    // row-major inverse for decompose (quadratic case)
    FElem root;                           // quadratic case: sqrt of embed(u_K)

    static std::shared_ptr<const FiniteExt> make(const FieldPtr& K, int degree);

    FElem embed(const FElem& x) const;
    FElem conj(const FElem& z) const;     // Frobenius z -> z^q (quadratic case)
    FElem norm(const FElem& z) const;     // into L; use section for K value
    std::pair<FElem, FElem> decompose(const FElem& z) const;  // z = embed(a) + embed(b)*root
    FElem section(const FElem& z) const;
};

// Quadratic extension L = K(sqrt(d)) re-normalized to tower shape, with exact
// embedding, Galois conjugation, and the decomposition z = a + b*root where
// root^2 = embed(rep(d)).  Ramified extensions introduce a fresh uniformizer
// theta with theta^2 = c*t; unramified ones extend the coefficient field.
class QuadExt {
public:
    enum class Shape { Ramified, UnramTower, FiniteConst };

    FieldPtr K, L;
    SquareClass d;
    FElem delta;   // canonical radicand rep_K(d)
    FElem root;    // in L, root^2 == embed(delta)
    Shape shape = Shape::Ramified;

    // Ramified: theta^2 = cunit * t with cunit in the base of K
    FElem cunit;
    // UnramTower: extension happens in the coefficient field
    QuadExtPtr base_ext;
    // FiniteConst
    std::shared_ptr<const FiniteExt> fin;

    static QuadExtPtr make(const FieldPtr& K, const SquareClass& d);

    bool ramified() const { return shape == Shape::Ramified; }

    FElem embed(const FElem& x) const;
    FElem conj(const FElem& z) const;
    FElem section(const FElem& z) const;               // inverse of embed on its image
    std::pair<FElem, FElem> decompose(const FElem& z) const;
    FElem norm(const FElem& z) const;                  // N_{L/K}(z) as a K element
    FElem trace(const FElem& z) const;

    SquareClass push_class(const SquareClass& c) const;  // class of embed(rep(c)) in L
};

// Constant extension of the bottom finite field by a given degree (used for
// the unramified cubic in the odd-degree checks).  Embedding only.
struct ConstExt {
    FieldPtr K, L;
    std::shared_ptr<const FiniteExt> fin;
    std::shared_ptr<const ConstExt> below;

    static std::shared_ptr<const ConstExt> make(const FieldPtr& K, int degree);
    FElem embed(const FElem& x) const;
    SquareClass push_class(const SquareClass& c) const;
};

}  // namespace qnp
