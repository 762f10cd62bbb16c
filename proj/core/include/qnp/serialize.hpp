#pragma once

#include <json.hpp>

#include "qnp/h1.hpp"

namespace qnp {

using json = nlohmann::ordered_json;

// field descriptor: {"base": {"q": 3, "modulus": [0,1]}, "towers": ["t"]}
json field_to_json(const Field& F);
FieldPtr field_from_json(const json& j);

// elements: finite fields as coefficient arrays, towers as fractions of
// Laurent polynomials with explicit lowest exponents; bit-exact round trip
json elem_to_json(const FElem& x);
FElem elem_from_json(const FieldPtr& F, const json& j);

// square classes as 0/1 arrays over the basis [u, t_1, ..., t_r]
json class_to_json(const SquareClass& c);
SquareClass class_from_json(const FieldPtr& F, const json& j);

// forms: {"field": ..., "entries": [[bits...], ...]}
json form_to_json(const QuadForm& Q);
QuadForm form_from_json(const json& j);
json form_entries_json(const QuadForm& Q);
QuadForm form_from_entries(const FieldPtr& F, const json& entries);

// H^1 classes: {"parity": "even"|"odd", "shape": ..., representatives}
json h1_to_json(const H1Elem& x);
H1Elem h1_from_json(const H1Context& ctx, const json& j);

uint64_t fnv1a(const std::string& bytes);
std::string hex64(uint64_t v);

}  // namespace qnp
