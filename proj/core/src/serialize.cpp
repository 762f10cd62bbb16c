#include "qnp/serialize.hpp"

#include <stdexcept>

namespace qnp {

namespace {
[[noreturn]] void bad(const char* msg) { throw std::invalid_argument(msg); }
}

json field_to_json(const Field& F) {
    const Field& bot = F.bottom();
    json base;
    base["q"] = bot.q;
    base["modulus"] = bot.modulus;
    json out;
    out["base"] = std::move(base);
    out["towers"] = F.symbols();
    return out;
}

FieldPtr field_from_json(const json& j) {
    if (!j.contains("base")) bad("field json needs a base");
    const json& b = j.at("base");
    int64_t q = b.at("q").get<int64_t>();
    FieldPtr F;
    if (b.contains("modulus")) {
        std::vector<int64_t> mod = b.at("modulus").get<std::vector<int64_t>>();
        int64_t p = q;
        for (int64_t d = 3; d * d <= q; d += 2)
            if (q % d == 0) { p = d; break; }
        int deg = int(mod.size()) - 1;
        int64_t check = 1;
        for (int i = 0; i < deg; ++i) check *= p;
        if (check != q) bad("field json: q does not match the modulus degree");
        F = Field::finite(p, std::move(mod));
    } else {
        F = Field::finite_q(q);
    }
    if (j.contains("towers"))
        for (const auto& s : j.at("towers")) F = Field::laurent(F, s.get<std::string>());
    return F;
}

json elem_to_json(const FElem& x) {
    if (x.field->is_finite()) return json(x.fin);
    auto poly = [](const LPoly& p) {
        json out;
        out["lo"] = p.lo;
        json cs = json::array();
        for (const auto& c : p.coeffs) cs.push_back(elem_to_json(c));
        out["coeffs"] = std::move(cs);
        return out;
    };
    json out;
    out["num"] = poly(*x.num);
    out["den"] = poly(*x.den);
    return out;
}

FElem elem_from_json(const FieldPtr& F, const json& j) {
    if (F->is_finite()) {
        if (!j.is_array()) bad("finite element json must be an array");
        return finite_elem(F, j.get<std::vector<int64_t>>());
    }
    auto poly = [&](const json& pj) {
        LPoly p;
        p.lo = pj.at("lo").get<int64_t>();
        for (const auto& c : pj.at("coeffs")) p.coeffs.push_back(elem_from_json(F->base(), c));
        return p;
    };
    LPoly num = poly(j.at("num"));
    LPoly den = poly(j.at("den"));
    bool dz = true;
    for (const auto& c : den.coeffs)
        if (!is_zero(c)) dz = false;
    if (dz) bad("element json with zero denominator");
    // raw construction: round trips are bit-exact, no normalization
    FElem e;
    e.field = F;
    e.num = std::make_shared<LPoly>(std::move(num));
    e.den = std::make_shared<LPoly>(std::move(den));
    return e;
}

json class_to_json(const SquareClass& c) {
    json out = json::array();
    for (int i = 0; i < c.width(); ++i) out.push_back((c.bits >> i) & 1u);
    return out;
}

SquareClass class_from_json(const FieldPtr& F, const json& j) {
    if (!j.is_array() || int(j.size()) != F->height() + 1)
        bad("class json must list one bit per basis element");
    uint32_t bits = 0;
    for (size_t i = 0; i < j.size(); ++i) {
        int v = j[i].get<int>();
        if (v != 0 && v != 1) bad("class bits must be 0 or 1");
        bits |= uint32_t(v) << i;
    }
    return class_from_bits(F, bits);
}

json form_entries_json(const QuadForm& Q) {
    json out = json::array();
    for (const auto& e : Q.entries) out.push_back(class_to_json(e));
    return out;
}

QuadForm form_from_entries(const FieldPtr& F, const json& entries) {
    QuadForm Q;
    Q.field = F;
    for (const auto& e : entries) Q.entries.push_back(class_from_json(F, e));
    return Q;
}

json form_to_json(const QuadForm& Q) {
    json out;
    out["field"] = field_to_json(*Q.field);
    out["entries"] = form_entries_json(Q);
    return out;
}

QuadForm form_from_json(const json& j) {
    FieldPtr F = field_from_json(j.at("field"));
    return form_from_entries(F, j.at("entries"));
}

json h1_to_json(const H1Elem& x) {
    json out;
    if (auto* a = std::get_if<H1EvenField>(&x.v)) {
        out["parity"] = "even";
        out["shape"] = "field";
        out["z_class"] = class_to_json(a->z);
    } else if (auto* a = std::get_if<H1EvenSplit>(&x.v)) {
        out["parity"] = "even";
        out["shape"] = "split";
        out["a"] = class_to_json(a->a);
        out["b"] = class_to_json(a->b);
    } else if (auto* a = std::get_if<H1OddField>(&x.v)) {
        out["parity"] = "odd";
        out["shape"] = "field";
        out["f"] = elem_to_json(a->f);
        out["z"] = elem_to_json(a->z);
    } else {
        const auto& a = std::get<H1OddSplit>(x.v);
        out["parity"] = "odd";
        out["shape"] = "split";
        out["f"] = elem_to_json(a.f);
        out["z1"] = elem_to_json(a.z1);
        out["z2"] = elem_to_json(a.z2);
    }
    return out;
}

H1Elem h1_from_json(const H1Context& ctx, const json& j) {
    std::string parity = j.at("parity").get<std::string>();
    std::string shape = j.at("shape").get<std::string>();
    if ((parity == "odd") != ctx.odd || (shape == "split") != ctx.Z.split())
        bad("H^1 json does not match the context shape");
    H1Elem out;
    if (!ctx.odd) {
        if (ctx.Z.split())
            out = H1Elem{H1EvenSplit{class_from_json(ctx.F, j.at("a")),
                                     class_from_json(ctx.F, j.at("b"))}};
        else
            out = H1Elem{H1EvenField{class_from_json(ctx.Z.ext->L, j.at("z_class"))}};
    } else if (ctx.Z.split()) {
        out = H1Elem{H1OddSplit{elem_from_json(ctx.F, j.at("f")), elem_from_json(ctx.F, j.at("z1")),
                                elem_from_json(ctx.F, j.at("z2"))}};
    } else {
        out = H1Elem{H1OddField{elem_from_json(ctx.F, j.at("f")),
                                elem_from_json(ctx.Z.ext->L, j.at("z"))}};
    }
    ctx.validate(out);
    return out;
}

uint64_t fnv1a(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[size_t(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

}  // namespace qnp
