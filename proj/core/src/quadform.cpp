#include "qnp/quadform.hpp"

#include <stdexcept>

namespace qnp {

namespace {

[[noreturn]] void bad(const char* msg) { throw std::invalid_argument(msg); }

uint32_t neg_bits(const FieldPtr& F) { return neg_one_class(F).bits; }

}  // namespace

QuadForm make_form(const FieldPtr& F, const std::vector<uint32_t>& entry_masks) {
    QuadForm Q;
    Q.field = F;
    Q.entries.reserve(entry_masks.size());
    for (uint32_t m : entry_masks) Q.entries.push_back(class_from_bits(F, m));
    return Q;
}

QuadForm scale(const QuadForm& Q, const SquareClass& lambda) {
    if (!same_field(Q.field, lambda.field)) bad("scaling class over a different field");
    QuadForm R = Q;
    for (auto& e : R.entries) e.bits ^= lambda.bits;
    return R;
}

QuadForm perp(const QuadForm& a, const QuadForm& b) {
    if (!same_field(a.field, b.field)) bad("orthogonal sum across fields");
    QuadForm R = a;
    R.entries.insert(R.entries.end(), b.entries.begin(), b.entries.end());
    return R;
}

QuadForm neg_form(const QuadForm& Q) { return scale(Q, neg_one_class(Q.field)); }

SquareClass det_class(const QuadForm& Q) {
    uint32_t m = 0;
    for (const auto& e : Q.entries) m ^= e.bits;
    return class_from_bits(Q.field, m);
}

SquareClass disc_class(const QuadForm& Q) {
    int n = Q.dim();
    uint32_t m = det_class(Q).bits;
    if ((int64_t(n) * (n - 1) / 2) % 2 == 1) m ^= neg_bits(Q.field);
    return class_from_bits(Q.field, m);
}

std::pair<QuadForm, QuadForm> springer_split(const QuadForm& Q) {
    if (!Q.field->is_tower()) bad("Springer decomposition needs a tower field");
    const FieldPtr& B = Q.field->base();
    int top = Q.field->height();
    QuadForm q1{B, {}}, q2{B, {}};
    for (const auto& e : Q.entries) {
        uint32_t lower = e.bits & ~(1u << top);
        if (e.bits >> top & 1)
            q2.entries.push_back(class_from_bits(B, lower));
        else
            q1.entries.push_back(class_from_bits(B, lower));
    }
    return {q1, q2};
}

// ---------------------------------------------------------------------------
// Witt classification

int WittClass::aniso_dim() const {
    if (field->is_finite()) {
        static constexpr int d[4] = {0, 1, 1, 2};
        return d[base_rep];
    }
    return parts[0].aniso_dim() + parts[1].aniso_dim();
}

std::vector<SquareClass> WittClass::diagonal() const {
    if (field->is_finite()) {
        switch (base_rep) {
            case 0: return {};
            case 1: return {trivial_class(field)};
            case 2: return {class_from_bits(field, 1)};
            default:
                return {trivial_class(field), class_from_bits(field, neg_bits(field) ^ 1u)};
        }
    }
    std::vector<SquareClass> out;
    int top = field->height();
    for (const auto& c : parts[0].diagonal()) out.push_back(class_from_bits(field, c.bits));
    for (const auto& c : parts[1].diagonal())
        out.push_back(class_from_bits(field, c.bits | (1u << top)));
    return out;
}

bool operator==(const WittClass& a, const WittClass& b) {
    if (!same_field(a.field, b.field)) return false;
    if (a.field->is_finite()) return a.base_rep == b.base_rep;
    return a.parts[0] == b.parts[0] && a.parts[1] == b.parts[1];
}

WittClass witt(const QuadForm& Q) {
    WittClass w;
    w.field = Q.field;
    if (Q.field->is_finite()) {
        int n = Q.dim();
        if (n == 0) { w.base_rep = 0; return w; }
        uint32_t det = det_class(Q).bits;
        uint32_t nb = neg_bits(Q.field);
        if (n % 2 == 0) {
            uint32_t disc = det ^ (((n / 2) % 2) ? nb : 0u);
            w.base_rep = disc ? 3 : 0;
        } else {
            uint32_t c = det ^ ((((n - 1) / 2) % 2) ? nb : 0u);
            w.base_rep = c ? 2 : 1;
        }
        return w;
    }
    auto [q1, q2] = springer_split(Q);
    w.parts = {witt(q1), witt(q2)};
    return w;
}

bool is_isotropic(const QuadForm& Q) { return witt(Q).aniso_dim() < Q.dim(); }

bool is_hyperbolic(const QuadForm& Q) { return Q.dim() % 2 == 0 && witt(Q).aniso_dim() == 0; }

int witt_index(const QuadForm& Q) { return (Q.dim() - witt(Q).aniso_dim()) / 2; }

bool is_isometric(const QuadForm& a, const QuadForm& b) {
    if (!same_field(a.field, b.field)) bad("isometry across fields");
    return a.dim() == b.dim() && witt(a) == witt(b);
}

QuadForm canonical_diagonal(const WittClass& w, int dim) {
    std::vector<SquareClass> entries = w.diagonal();
    int pad = dim - int(entries.size());
    if (pad < 0 || pad % 2 != 0) bad("dimension incompatible with the Witt class");
    QuadForm Q;
    Q.field = w.field;
    Q.entries = std::move(entries);
    for (int i = 0; i < pad / 2; ++i) {
        Q.entries.push_back(trivial_class(w.field));
        Q.entries.push_back(class_from_bits(w.field, neg_bits(w.field)));
    }
    return Q;
}

// ---------------------------------------------------------------------------
// represented classes and the classical subgroups

std::vector<SquareClass> represented_classes(const QuadForm& Q) {
    if (Q.dim() < 1) bad("represented classes of the zero form");
    std::vector<SquareClass> out;
    uint32_t nb = neg_bits(Q.field);
    for (const auto& c : all_classes(Q.field)) {
        QuadForm probe = Q;
        probe.entries.push_back(class_from_bits(Q.field, c.bits ^ nb));
        if (is_isotropic(probe)) out.push_back(c);
    }
    return out;
}

Subgroup spinor_norm_group(const QuadForm& Q) {
    if (Q.dim() < 2) bad("spinor norms need dim >= 2");
    auto D = represented_classes(Q);
    std::vector<uint32_t> gens;
    for (const auto& d : D) gens.push_back(d.bits ^ D.front().bits);
    return span_subgroup(Q.field, gens);
}

Subgroup similarity_group(const QuadForm& Q) {
    std::vector<uint32_t> member;
    for (const auto& c : all_classes(Q.field))
        if (is_isometric(scale(Q, c), Q)) member.push_back(c.bits);
    return span_subgroup(Q.field, member);
}

QuadForm base_change(const QuadForm& Q, const QuadExt& ext) {
    if (!same_field(Q.field, ext.K)) bad("base change along an extension of a different field");
    QuadForm R;
    R.field = ext.L;
    R.entries.reserve(Q.entries.size());
    for (const auto& e : Q.entries) R.entries.push_back(ext.push_class(e));
    return R;
}

QuadForm base_change(const QuadForm& Q, const ConstExt& ext) {
    if (!same_field(Q.field, ext.K)) bad("base change along an extension of a different field");
    QuadForm R;
    R.field = ext.L;
    R.entries.reserve(Q.entries.size());
    for (const auto& e : Q.entries) R.entries.push_back(ext.push_class(e));
    return R;
}

Subgroup hyp2_subgroup(const QuadForm& Q) {
    if (Q.dim() % 2 != 0) bad("hyperbolicity subgroup needs even dimension");
    std::vector<uint32_t> gens;
    for (const auto& d : all_classes(Q.field)) {
        if (d.trivial()) continue;
        auto ext = QuadExt::make(Q.field, d);
        if (is_hyperbolic(base_change(Q, *ext)))
            for (uint32_t b : norm_group(Q.field, d).basis) gens.push_back(b);
    }
    return span_subgroup(Q.field, gens);
}

// ---------------------------------------------------------------------------
// constructive lambda splitting

std::optional<LambdaSplit> find_lambda_splitting(const QuadForm& Q, const SquareClass& lambda,
                                                 const QuadExtPtr& ext) {
    if (!same_field(lambda.field, Q.field)) bad("lambda over a different field");
    if (lambda.trivial()) bad("lambda must be a nonsquare class");
    if (!lambda.unit()) bad("lambda must be a unit class");
    if (ext && !same_field(ext->K, Q.field)) bad("extension of a different field");
    // lambda must be a similarity factor at the extension level
    if (ext) {
        QuadForm QL = base_change(Q, *ext);
        if (!similarity_group(QL).contains(ext->push_class(lambda)))
            bad("lambda is not a similarity factor of Q over L");
    } else if (!similarity_group(Q).contains(lambda)) {
        bad("lambda is not a similarity factor of Q");
    }
    if (Q.field->is_tower()) {
        auto [q1, q2] = springer_split(Q);
        if (q1.dim() == q2.dim()) bad("splitting requires dim q != dim p");
    }
    SquareClass lam_L = ext ? ext->push_class(lambda) : lambda;
    for (const auto& a : all_classes(Q.field)) {
        for (const auto& b : all_classes(Q.field)) {
            QuadForm f = make_form(Q.field, {a.bits, b.bits});
            QuadForm rest = perp(Q, neg_form(f));
            if (witt_index(rest) < 2) continue;            // f embeds into Q
            if (!is_isometric(scale(f, lambda), f)) continue;
            QuadForm g = canonical_diagonal(witt(rest), Q.dim() - 2);
            if (ext) {
                QuadForm gL = base_change(g, *ext);
                if (!is_isometric(scale(gL, lam_L), gL)) continue;
            } else if (!is_isometric(scale(g, lambda), g)) {
                continue;
            }
            if (!is_isometric(perp(f, g), Q)) continue;    // verified reassembly
            return LambdaSplit{f, g};
        }
    }
    return std::nullopt;
}

}  // namespace qnp
