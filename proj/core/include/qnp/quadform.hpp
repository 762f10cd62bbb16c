#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qnp/extension.hpp"
#include "qnp/square.hpp"

namespace qnp {

// Diagonal quadratic form; entries are stored as canonical square classes.
struct QuadForm {
    FieldPtr field;
    std::vector<SquareClass> entries;

    int dim() const { return int(entries.size()); }
};

QuadForm make_form(const FieldPtr& F, const std::vector<uint32_t>& entry_masks);
QuadForm scale(const QuadForm& Q, const SquareClass& lambda);
QuadForm perp(const QuadForm& a, const QuadForm& b);
QuadForm neg_form(const QuadForm& Q);
SquareClass det_class(const QuadForm& Q);
SquareClass disc_class(const QuadForm& Q);  // signed: (-1)^{n(n-1)/2} det

// Springer decomposition with respect to the top uniformizer: Q ~ q1 + t q2
// with unit residue forms over the base field.
std::pair<QuadForm, QuadForm> springer_split(const QuadForm& Q);

// Canonical Witt class: finite base case in {0, <1>, <u>, <1,-u>}, towers
// recurse on the two residue forms.
struct WittClass {
    FieldPtr field;
    int base_rep = 0;              // 0 zero, 1 <1>, 2 <u>, 3 <1,-u>
    std::vector<WittClass> parts;  // towers: [w1, w2]

    int aniso_dim() const;
    std::vector<SquareClass> diagonal() const;  // anisotropic kernel, canonical entries
};

bool operator==(const WittClass& a, const WittClass& b);
inline bool operator!=(const WittClass& a, const WittClass& b) { return !(a == b); }

WittClass witt(const QuadForm& Q);
bool is_isotropic(const QuadForm& Q);
bool is_hyperbolic(const QuadForm& Q);
int witt_index(const QuadForm& Q);
bool is_isometric(const QuadForm& a, const QuadForm& b);

// diagonal form of the given dimension with the given Witt class
QuadForm canonical_diagonal(const WittClass& w, int dim);

// D(Q): classes c with Q + <-c> isotropic
std::vector<SquareClass> represented_classes(const QuadForm& Q);

Subgroup spinor_norm_group(const QuadForm& Q);  // Sn(Q), dim >= 2
Subgroup similarity_group(const QuadForm& Q);   // G(Q)

QuadForm base_change(const QuadForm& Q, const QuadExt& ext);
QuadForm base_change(const QuadForm& Q, const ConstExt& ext);

// span of the quadratic-extension norm groups that split Q; a certified lower
// bound for the hyperbolicity norm subgroup
Subgroup hyp2_subgroup(const QuadForm& Q);

struct LambdaSplit {
    QuadForm f;  // binary piece with lambda f ~ f
    QuadForm g;  // Witt complement, lambda g_L ~ g_L
};

// Constructive splitting Q ~ f + g for a unit similarity factor lambda of Q_L:
// searches square-class pairs and verifies every postcondition.
std::optional<LambdaSplit> find_lambda_splitting(const QuadForm& Q, const SquareClass& lambda,
                                                 const QuadExtPtr& ext);

}  // namespace qnp
