#include "qnp/h1.hpp"

#include <stdexcept>

namespace qnp {

namespace {

[[noreturn]] void bad(const char* msg) { throw std::invalid_argument(msg); }

// Decide whether some r in E.L satisfies r^4 = A and N_{E}(r) = B.  All
// decisions reduce to valuations and residues; no roots are materialized.
bool fourth_root_with_norm(const QuadExt& E, const FElem& A, const FElem& B) {
    if (is_zero(A) || is_zero(B)) throw std::domain_error("fourth-root test on zero");
    if (E.shape == QuadExt::Shape::FiniteConst) {
        FElem target = E.fin->embed(B);
        for (int64_t i = 1; i < E.L->q; ++i) {
            FElem w = finite_at(E.L, i);
            if (eq(mul(mul(w, w), mul(w, w)), A) && eq(E.fin->norm(w), target)) return true;
        }
        return false;
    }
    int64_t m = valuation(A);
    if (((m % 4) + 4) % 4 != 0) return false;
    int64_t a4 = m / 4;
    FElem Au = unit_part(A);
    if (E.shape == QuadExt::Shape::Ramified) {
        FElem Ntheta = E.norm(E.root);  // -c t, valuation 1
        FElem B1 = div(B, pow_i(Ntheta, a4));
        if (valuation(B1) != 0) return false;
        if (!eq(E.norm(Au), pow_i(B1, 4))) return false;
        FElem rA = residue(Au);  // residue fields of K and L agree
        FElem rB = residue(B1);
        return eq(mul(rB, rB), rA) && is_square(rB);
    }
    // unramified: push the question to the residue extension
    FElem B1 = div(B, t_power(E.K, 2 * a4));
    if (valuation(B1) != 0) return false;
    if (!eq(E.norm(Au), pow_i(B1, 4))) return false;
    return fourth_root_with_norm(*E.base_ext, residue(Au), residue(B1));
}

}  // namespace

EtaleQuad discriminant_algebra(const QuadForm& Q) {
    if (Q.dim() % 2 != 0) bad("discriminant algebra needs even dimension");
    EtaleQuad Z;
    Z.F = Q.field;
    Z.d = disc_class(Q);
    if (!Z.d.trivial()) Z.ext = QuadExt::make(Q.field, Z.d);
    return Z;
}

FElem monomial_sqrt(const FElem& x) {
    if (is_zero(x)) throw std::domain_error("square root of zero");
    if (x.field->is_finite()) {
        for (int64_t i = 1; i < x.field->q; ++i) {
            FElem w = finite_at(x.field, i);
            if (eq(mul(w, w), x)) return w;
        }
        throw std::logic_error("element is not a square");
    }
    if (x.num->coeffs.size() != 1 || x.den->coeffs.size() != 1 || !eq(x.den->coeffs[0], one(x.field->base())))
        throw std::logic_error("monomial square root of a non-monomial");
    int64_t e = x.num->lo - x.den->lo;
    if (((e % 2) + 2) % 2 != 0) throw std::logic_error("monomial square root of odd valuation");
    FElem c = monomial_sqrt(x.num->coeffs[0]);
    return mul(lift(x.field, c), t_power(x.field, e / 2));
}

// ---------------------------------------------------------------------------
// H1Context

H1ContextPtr H1Context::make(const QuadForm& Q) {
    if (Q.dim() < 2 || Q.dim() % 2 != 0) bad("H^1 model needs even dimension >= 2");
    auto ctx = std::make_shared<H1Context>();
    ctx->F = Q.field;
    ctx->Q = Q;
    ctx->n = Q.dim() / 2;
    ctx->odd = ctx->n % 2 == 1;
    ctx->Z = discriminant_algebra(Q);
    ctx->G = similarity_group(Q);
    // enumerate all classes once
    auto& out = ctx->classes_;
    if (!ctx->odd) {
        if (ctx->Z.split()) {
            for (const auto& a : all_classes(ctx->F))
                for (const auto& b : all_classes(ctx->F))
                    out.push_back(H1Elem{H1EvenSplit{a, b}});
        } else {
            for (const auto& z : all_classes(ctx->Z.ext->L)) out.push_back(H1Elem{H1EvenField{z}});
        }
    } else {
        std::vector<SquareClass> lambdas;
        if (ctx->Z.split()) {
            lambdas = all_classes(ctx->F);
        } else {
            for (const auto& l : norm_group(ctx->F, ctx->Z.d).elements()) lambdas.push_back(l);
        }
        for (const auto& lam : lambdas) {
            H1Elem sec = ctx->section(lam);
            for (const auto& f : all_classes(ctx->F)) {
                H1Elem x = ctx->mul(sec, ctx->map_i(f));
                bool seen = false;
                for (const auto& y : out)
                    if (ctx->equal(x, y)) { seen = true; break; }
                if (!seen) out.push_back(std::move(x));
            }
        }
    }
    return ctx;
}

H1Elem H1Context::trivial() const {
    if (!odd) {
        if (Z.split()) return H1Elem{H1EvenSplit{trivial_class(F), trivial_class(F)}};
        return H1Elem{H1EvenField{trivial_class(Z.ext->L)}};
    }
    if (Z.split()) return H1Elem{H1OddSplit{one(F), one(F), one(F)}};
    return H1Elem{H1OddField{one(F), one(Z.ext->L)}};
}

H1Elem H1Context::mul(const H1Elem& x, const H1Elem& y) const {
    if (x.v.index() != y.v.index()) bad("H^1 product across shapes");
    if (auto* a = std::get_if<H1EvenField>(&x.v))
        return H1Elem{H1EvenField{class_mul(a->z, std::get<H1EvenField>(y.v).z)}};
    if (auto* a = std::get_if<H1EvenSplit>(&x.v)) {
        const auto& b = std::get<H1EvenSplit>(y.v);
        return H1Elem{H1EvenSplit{class_mul(a->a, b.a), class_mul(a->b, b.b)}};
    }
    if (auto* a = std::get_if<H1OddField>(&x.v)) {
        const auto& b = std::get<H1OddField>(y.v);
        return H1Elem{H1OddField{qnp::mul(a->f, b.f), qnp::mul(a->z, b.z)}};
    }
    const auto& a = std::get<H1OddSplit>(x.v);
    const auto& b = std::get<H1OddSplit>(y.v);
    return H1Elem{H1OddSplit{qnp::mul(a.f, b.f), qnp::mul(a.z1, b.z1), qnp::mul(a.z2, b.z2)}};
}

bool H1Context::equal(const H1Elem& x, const H1Elem& y) const {
    if (x.v.index() != y.v.index()) bad("H^1 comparison across shapes");
    if (auto* a = std::get_if<H1EvenField>(&x.v)) return a->z == std::get<H1EvenField>(y.v).z;
    if (auto* a = std::get_if<H1EvenSplit>(&x.v)) {
        const auto& b = std::get<H1EvenSplit>(y.v);
        return a->a == b.a && a->b == b.b;
    }
    if (auto* a = std::get_if<H1OddField>(&x.v)) {
        const auto& b = std::get<H1OddField>(y.v);
        FElem g = div(b.f, a->f);
        FElem c = div(b.z, a->z);
        return fourth_root_with_norm(*Z.ext, c, g);
    }
    const auto& a = std::get<H1OddSplit>(x.v);
    const auto& b = std::get<H1OddSplit>(y.v);
    return is_fourth_power(div(b.z1, a.z1));
}

void H1Context::validate(const H1Elem& x) const {
    if (auto* a = std::get_if<H1OddField>(&x.v)) {
        if (!eq(znorm(a->z), pow_i(a->f, 4)))
            throw std::logic_error("malformed representative: f^4 != N(z)");
    } else if (auto* a = std::get_if<H1OddSplit>(&x.v)) {
        if (!eq(qnp::mul(a->z1, a->z2), pow_i(a->f, 4)))
            throw std::logic_error("malformed representative: f^4 != z1 z2");
    }
}

H1Elem H1Context::map_i(const SquareClass& f) const { return map_i_elem(class_rep(f)); }

H1Elem H1Context::map_i_elem(const FElem& f) const {
    if (!same_field(f.field, F)) bad("map_i of a foreign element");
    if (is_zero(f)) throw std::domain_error("map_i of zero");
    if (!odd) {
        if (Z.split()) {
            SquareClass c = square_class(f);
            return H1Elem{H1EvenSplit{c, c}};
        }
        return H1Elem{H1EvenField{square_class(Z.ext->embed(f))}};
    }
    if (Z.split()) {
        FElem f2 = qnp::mul(f, f);
        return H1Elem{H1OddSplit{f, f2, f2}};
    }
    FElem fz = Z.ext->embed(f);
    return H1Elem{H1OddField{f, qnp::mul(fz, fz)}};
}

SquareClass H1Context::map_j(const H1Elem& x) const {
    if (auto* a = std::get_if<H1EvenField>(&x.v))
        return square_class(Z.ext->norm(class_rep(a->z)));
    if (auto* a = std::get_if<H1EvenSplit>(&x.v)) return class_mul(a->a, a->b);
    if (auto* a = std::get_if<H1OddField>(&x.v)) {
        FElem c = div(a->z, Z.ext->embed(qnp::mul(a->f, a->f)));
        FElem z0;
        if (eq(c, neg(one(Z.ext->L))))
            z0 = Z.ext->root;
        else
            z0 = add(one(Z.ext->L), c);
        return square_class(Z.ext->norm(z0));
    }
    const auto& a = std::get<H1OddSplit>(x.v);
    return square_class(div(a.z1, qnp::mul(a.f, a.f)));
}

H1Elem H1Context::section(const SquareClass& lambda) const {
    if (!same_field(lambda.field, F)) bad("section of a foreign class");
    if (!odd) {
        if (Z.split()) return H1Elem{H1EvenSplit{lambda, trivial_class(F)}};
        return H1Elem{H1EvenField{square_class(norm_preimage(lambda))}};
    }
    if (Z.split()) {
        FElem rep = class_rep(lambda);
        return H1Elem{H1OddSplit{one(F), rep, inv(rep)}};
    }
    FElem z0 = norm_preimage(lambda);
    return H1Elem{H1OddField{one(F), div(z0, zconj(z0))}};
}

FElem H1Context::norm_preimage(const SquareClass& lambda) const {
    if (Z.split()) bad("norm_preimage needs a field discriminant algebra");
    const QuadExt& E = *Z.ext;
    if (lambda.trivial()) return one(E.L);
    // known witnesses: the defining root, and the constant norm witness when
    // the extension has a constant layer at the bottom
    std::vector<std::pair<uint32_t, FElem>> wit;
    wit.emplace_back(square_class(E.norm(E.root)).bits, E.root);
    {
        const QuadExt* e = &E;
        while (e->shape == QuadExt::Shape::UnramTower) e = e->base_ext.get();
        if (e->shape == QuadExt::Shape::FiniteConst) {
            const FiniteExt& fe = *e->fin;
            FElem u = canonical_nonsquare(fe.K);
            FElem target = fe.embed(u);
            for (int64_t i = 1; i < fe.L->q; ++i) {
                FElem w = finite_at(fe.L, i);
                if (eq(fe.norm(w), target)) {
                    wit.emplace_back(square_class(constant(F, u)).bits, constant(E.L, w));
                    break;
                }
            }
        }
    }
    for (uint32_t sel = 0; sel < (1u << wit.size()); ++sel) {
        uint32_t bits = 0;
        FElem z0 = one(E.L);
        for (size_t i = 0; i < wit.size(); ++i)
            if (sel >> i & 1) {
                bits ^= wit[i].first;
                z0 = qnp::mul(z0, wit[i].second);
            }
        if (bits == lambda.bits) return z0;
    }
    // bounded fallback search over small elements a + b root
    std::vector<FElem> pool = {zero(F), one(F), from_int(F, -1)};
    {
        std::vector<FElem> units = {one(F), from_int(F, -1)};
        FieldPtr bottom = F;
        while (bottom->is_tower()) bottom = bottom->base();
        units.push_back(constant(F, canonical_nonsquare(bottom)));
        if (F->is_tower())
            for (int64_t e2 = -1; e2 <= 1; ++e2)
                for (const auto& uu : units) pool.push_back(qnp::mul(uu, t_power(F, e2)));
        for (const auto& uu : units)
            if (F->is_tower()) pool.push_back(add(uu, uniformizer(F)));
    }
    for (const auto& x : pool)
        for (const auto& y : pool) {
            FElem z0 = add(E.embed(x), qnp::mul(E.embed(y), E.root));
            if (is_zero(z0)) continue;
            if (square_class(E.norm(z0)) == lambda) return z0;
        }
    throw std::logic_error("no norm preimage found for the class");
}

Subgroup H1Context::image_j() const {
    std::vector<SquareClass> js;
    for (const auto& x : classes_) js.push_back(map_j(x));
    return span_classes(F, js);
}

const std::vector<H1Elem>& H1Context::enumerate() const { return classes_; }

std::vector<H1Elem> H1Context::unit_level() const {
    std::vector<H1Elem> out;
    auto push_unique = [&](H1Elem x) {
        for (const auto& y : out)
            if (equal(x, y)) return;
        out.push_back(std::move(x));
    };
    if (!odd) {
        for (const auto& x : classes_) {
            if (auto* a = std::get_if<H1EvenField>(&x.v)) {
                if (a->z.unit()) push_unique(x);
            } else {
                const auto& a2 = std::get<H1EvenSplit>(x.v);
                if (a2.a.unit() && a2.b.unit()) push_unique(x);
            }
        }
        return out;
    }
    std::vector<SquareClass> lambdas;
    if (Z.split()) {
        for (const auto& l : all_classes(F))
            if (l.unit()) lambdas.push_back(l);
    } else {
        for (const auto& l : norm_group(F, Z.d).elements()) lambdas.push_back(l);
    }
    for (const auto& lam : lambdas) {
        H1Elem sec = section(lam);
        for (const auto& f : all_classes(F)) {
            if (!f.unit()) continue;
            push_unique(mul(sec, map_i(f)));
        }
    }
    return out;
}

std::vector<H1Elem> H1Context::subgroup_H() const {
    std::vector<H1Elem> out;
    for (const auto& x : classes_)
        if (G.contains(map_j(x))) out.push_back(x);
    return out;
}

FElem H1Context::znorm(const FElem& z) const {
    if (Z.split()) bad("znorm on a split algebra");
    return Z.ext->norm(z);
}

FElem H1Context::zconj(const FElem& z) const {
    if (Z.split()) bad("zconj on a split algebra");
    return Z.ext->conj(z);
}

std::pair<H1Elem, int64_t> H1Context::decompose_unramified(const H1Elem& u) const {
    if (!F->is_tower()) bad("unramified decomposition needs a tower field");
    if (!Z.split() && Z.ext->ramified()) bad("discriminant algebra is ramified");
    if (!map_j(u).unit()) bad("j(u) is not a unit class");
    H1Elem uprime = u;
    int64_t eps = 0;
    if (auto* a = std::get_if<H1EvenField>(&u.v)) {
        int top = Z.ext->L->height();
        eps = (a->z.bits >> top) & 1;
        uprime = H1Elem{H1EvenField{class_from_bits(Z.ext->L, a->z.bits & ~(1u << top))}};
    } else if (auto* a = std::get_if<H1EvenSplit>(&u.v)) {
        int top = F->height();
        int64_t ea = (a->a.bits >> top) & 1, eb = (a->b.bits >> top) & 1;
        if (ea != eb) throw std::logic_error("split components with mismatched parity");
        eps = ea;
        uprime = H1Elem{H1EvenSplit{class_from_bits(F, a->a.bits & ~(1u << top)),
                                    class_from_bits(F, a->b.bits & ~(1u << top))}};
    } else if (auto* a = std::get_if<H1OddField>(&u.v)) {
        eps = valuation(a->f);
        if (valuation(a->z) != 2 * eps) throw std::logic_error("z valuation is not 2 val(f)");
        uprime = H1Elem{H1OddField{unit_part(a->f), qnp::mul(a->z, t_power(Z.ext->L, -2 * eps))}};
    } else {
        const auto& s4 = std::get<H1OddSplit>(u.v);
        int64_t e = valuation(s4.f);
        int64_t e1 = valuation(s4.z1);
        int64_t e2 = valuation(s4.z2);
        if (((e1 % 2) + 2) % 2 != 0) throw std::logic_error("odd z1 valuation with unit j");
        if (e2 != 4 * e - e1) throw std::logic_error("valuations violate z1 z2 = f^4");
        uprime = H1Elem{H1OddSplit{unit_part(s4.f), unit_part(s4.z1), unit_part(s4.z2)}};
        eps = (((e1 % 4) + 4) % 4 == 2) ? 1 : 0;
    }
    // verified recomposition u = u' i(theta^eps)
    H1Elem recomposed = mul(uprime, map_i_elem(t_power(F, eps)));
    if (!equal(u, recomposed)) throw std::logic_error("recomposition u = u' i(theta^eps) failed");
    return {uprime, eps};
}

// ---------------------------------------------------------------------------
// specialization to the residue field

std::pair<H1ContextPtr, H1Elem> specialize(const H1Context& ctx, const H1Elem& x) {
    if (!ctx.F->is_tower()) bad("specialization needs a tower field");
    if (!ctx.Z.split() && ctx.Z.ext->ramified()) bad("specialization needs unramified Z");
    for (const auto& e : ctx.Q.entries)
        if (!e.unit()) bad("specialization needs a unit-diagonal form");
    const FieldPtr& k = ctx.F->base();
    std::vector<uint32_t> masks;
    for (const auto& e : ctx.Q.entries) masks.push_back(e.bits);
    auto res_ctx = H1Context::make(make_form(k, masks));
    H1Elem img;
    if (auto* a = std::get_if<H1EvenField>(&x.v)) {
        if (!a->z.unit()) bad("specialization of a non-unit class");
        img = H1Elem{H1EvenField{class_from_bits(res_ctx->Z.ext->L, a->z.bits)}};
    } else if (auto* a = std::get_if<H1EvenSplit>(&x.v)) {
        if (!a->a.unit() || !a->b.unit()) bad("specialization of a non-unit class");
        img = H1Elem{H1EvenSplit{class_from_bits(k, a->a.bits), class_from_bits(k, a->b.bits)}};
    } else if (auto* a = std::get_if<H1OddField>(&x.v)) {
        if (valuation(a->f) != 0 || valuation(a->z) != 0) bad("specialization of non-unit data");
        FElem zr = residue(a->z);
        img = H1Elem{H1OddField{residue(a->f), rebase(res_ctx->Z.ext->L, zr)}};
    } else {
        const auto& s4 = std::get<H1OddSplit>(x.v);
        if (valuation(s4.f) != 0 || valuation(s4.z1) != 0 || valuation(s4.z2) != 0)
            bad("specialization of non-unit data");
        img = H1Elem{H1OddSplit{residue(s4.f), residue(s4.z1), residue(s4.z2)}};
    }
    res_ctx->validate(img);
    return {res_ctx, img};
}

// ---------------------------------------------------------------------------
// NormContext

std::shared_ptr<const NormContext> NormContext::make(const QuadForm& Q, const SquareClass& e) {
    if (e.trivial()) bad("extension class must be nontrivial");
    auto nc = std::make_shared<NormContext>();
    nc->ctxK = H1Context::make(Q);
    nc->ext = QuadExt::make(Q.field, e);
    nc->ctxL = H1Context::make(base_change(Q, *nc->ext));
    if (nc->ctxK->Z.split()) {
        nc->zshape = ZShape::BothSplit;
        if (!nc->ctxL->Z.split()) throw std::logic_error("split algebra stayed a field");
    } else if (nc->ctxL->Z.split()) {
        nc->zshape = ZShape::SplitOverL;
        if (!(nc->ctxK->Z.d == e)) throw std::logic_error("Z_L split without Z = L");
    } else {
        nc->zshape = ZShape::FieldField;
        nc->deltaK_ = nc->ctxK->Z.ext->delta;
        FElem dL = nc->ext->embed(nc->deltaK_);
        nc->s_ = monomial_sqrt(div(dL, nc->ctxL->Z.ext->delta));
    }
    return nc;
}

FElem NormContext::norm_ZLZ(const FElem& z) const {
    if (zshape != ZShape::FieldField) bad("norm_ZLZ needs field algebras on both levels");
    const QuadExt& ZL = *ctxL->Z.ext;
    const QuadExt& ZK = *ctxK->Z.ext;
    auto [A, Bp] = ZL.decompose(z);
    FElem B = div(Bp, s_);
    FElem X = add(ext->norm(A), qnp::mul(ext->norm(B), deltaK_));
    FElem Y = ext->trace(qnp::mul(A, ext->conj(B)));
    return add(ZK.embed(X), qnp::mul(ZK.embed(Y), ZK.root));
}

H1Elem NormContext::h1_norm(const H1Elem& xL) const {
    const H1Context& K = *ctxK;
    H1Elem out;
    if (auto* a = std::get_if<H1EvenSplit>(&xL.v)) {
        if (zshape == ZShape::BothSplit) {
            out = H1Elem{H1EvenSplit{square_class(ext->norm(class_rep(a->a))),
                                     square_class(ext->norm(class_rep(a->b)))}};
        } else {
            // Z_L = L x L over Z = L: the norm is a psi-twisted product
            FElem z = qnp::mul(class_rep(a->a), ext->conj(class_rep(a->b)));
            out = H1Elem{H1EvenField{square_class(rebase(K.Z.ext->L, z))}};
        }
    } else if (auto* a = std::get_if<H1EvenField>(&xL.v)) {
        out = H1Elem{H1EvenField{square_class(norm_ZLZ(class_rep(a->z)))}};
    } else if (auto* a = std::get_if<H1OddSplit>(&xL.v)) {
        if (zshape == ZShape::BothSplit) {
            out = H1Elem{H1OddSplit{ext->norm(a->f), ext->norm(a->z1), ext->norm(a->z2)}};
        } else {
            FElem z = qnp::mul(a->z1, ext->conj(a->z2));
            out = H1Elem{H1OddField{ext->norm(a->f), rebase(K.Z.ext->L, z)}};
        }
    } else {
        const auto& of = std::get<H1OddField>(xL.v);
        out = H1Elem{H1OddField{ext->norm(of.f), norm_ZLZ(of.z)}};
    }
    K.validate(out);
    return out;
}

H1Elem NormContext::res(const H1Elem& xK) const {
    const H1Context& L = *ctxL;
    if (auto* a = std::get_if<H1EvenSplit>(&xK.v))
        return H1Elem{H1EvenSplit{ext->push_class(a->a), ext->push_class(a->b)}};
    if (auto* a = std::get_if<H1EvenField>(&xK.v)) {
        FElem zrep = class_rep(a->z);
        if (zshape == ZShape::SplitOverL) {
            FElem z1 = rebase(ext->L, zrep);
            FElem z2 = rebase(ext->L, ctxK->Z.ext->conj(zrep));
            return H1Elem{H1EvenSplit{square_class(z1), square_class(z2)}};
        }
        const QuadExt& ZL = *L.Z.ext;
        auto [x1, y1] = ctxK->Z.ext->decompose(zrep);
        FElem img = add(ZL.embed(ext->embed(x1)),
                        qnp::mul(ZL.embed(qnp::mul(ext->embed(y1), s_)), ZL.root));
        return H1Elem{H1EvenField{square_class(img)}};
    }
    if (auto* a = std::get_if<H1OddSplit>(&xK.v))
        return H1Elem{H1OddSplit{ext->embed(a->f), ext->embed(a->z1), ext->embed(a->z2)}};
    const auto& a = std::get<H1OddField>(xK.v);
    if (zshape == ZShape::SplitOverL) {
        FElem z1 = rebase(ext->L, a.z);
        FElem z2 = rebase(ext->L, ctxK->Z.ext->conj(a.z));
        H1Elem out{H1OddSplit{ext->embed(a.f), z1, z2}};
        L.validate(out);
        return out;
    }
    const QuadExt& ZL = *L.Z.ext;
    auto [x1, y1] = ctxK->Z.ext->decompose(a.z);
    FElem img = add(ZL.embed(ext->embed(x1)),
                    qnp::mul(ZL.embed(qnp::mul(ext->embed(y1), s_)), ZL.root));
    H1Elem out{H1OddField{ext->embed(a.f), img}};
    L.validate(out);
    return out;
}

}  // namespace qnp
