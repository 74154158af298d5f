#include "dirtt/derived.hpp"

#include "dirtt/equality.hpp"

namespace dirtt {

namespace {

// Index maps from a one-sided zone into the private J zone x, z, u, v
// (indices 3, 2, 1, 0).
const std::vector<std::size_t> kPlusIntoJ = {0, 2};   // v, z
const std::vector<std::size_t> kMinusIntoJ = {1, 3};  // u, x

// The J instance for a context ending in y :: A | <one-sided zone>.
// `a` is scoped over the neutral prefix before y.
Term one_sided_term(const Type& a, const Type& motive, const Term& base, Side side) {
    const Term y = var_n(0);
    const Type two_sided =
        weaken_neutral(rename_polar(motive, side == Side::Plus ? kPlusIntoJ : kMinusIntoJ), 1, 1);
    const Type carrier = weaken_neutral(a, 1, 0);
    const Term b = weaken_neutral(base, 1, 1);
    if (side == Side::Plus)
        return jpm(carrier, two_sided, b, y, coe_minus(y), var_p(1), refl(y), var_p(0));
    return jpm(carrier, two_sided, b, y, var_p(1), coe_plus(y), var_p(0), refl(y));
}

Context neutral_prefix(const Context& ctx) {
    Context c = ctx.without_polar();
    c.neutral.pop_back();
    if (!c.neutral_names.empty()) c.neutral_names.pop_back();
    return c;
}

// The hom type of a term, preferring the unnormalized form (which keeps
// endpoint coercions visible) when it is already a plain hom.
Type hom_type_of(const Checker& ck, const Context& ctx, const Term& t, const char* what) {
    const Type raw = ck.infer(ctx, t);
    if (raw->kind == TypeKind::Hom && !raw->mod.neg) return raw;
    const Type nf = normalize_type(&ck.signature(), raw);
    if (nf->kind != TypeKind::Hom || nf->mod.neg)
        throw CheckError(ErrorKind::TypeMismatch,
                         std::string(what) + " needs a hom-term, got " + debug_string(nf),
                         t->span);
    return nf;
}

Term need_anchor(std::optional<Term> e, const char* what, const Term& at) {
    if (!e)
        throw CheckError(ErrorKind::NotPolarClosed,
                         std::string(what) + ": the middle point must be polar-closed", at->span);
    return *e;
}

void check_tail(const Checker& ck, const Context& ctx, const Context& want, std::size_t n) {
    if (ctx.neutral.empty() || ctx.polar.size() < n)
        throw CheckError(ErrorKind::MalformedJTelescope,
                         "context does not end in a J telescope");
    const Signature* sig = &ck.signature();
    for (std::size_t i = 0; i < n; ++i) {
        const Type& got = ctx.polar[ctx.polar.size() - n + i];
        if (!type_equal(sig, got, want.polar[i]))
            throw CheckError(ErrorKind::MalformedJTelescope,
                             "J telescope entry " + std::to_string(i) + " has type " +
                                 debug_string(got) + ", expected " +
                                 debug_string(want.polar[i]));
    }
}

}  // namespace

Context one_sided_telescope(const Context& ambient, const Type& a, Side side) {
    Context c = ambient.without_polar().with_neutral(a, "y");
    const Type up = weaken_neutral(a, 1, 0);
    if (side == Side::Plus) {
        c = c.with_polar(up, "z");
        return c.with_polar(hom(up, coe_minus(var_n(0)), var_p(0)), "v");
    }
    c = c.with_polar(raw_neg(up), "x");
    return c.with_polar(hom(up, var_p(0), coe_plus(var_n(0))), "u");
}

DerivedDecl derive_one_sided(const Context& ambient, const Type& a, const Type& motive,
                             const Term& base, Side side) {
    return {side == Side::Plus ? "J+" : "J-", one_sided_telescope(ambient, a, side),
            one_sided_term(a, motive, base, side), motive};
}

Term compose_at(const Type& a, const Term& anchor, const Term& x, const Term& z, const Term& f,
                const Term& g) {
    const Type motive = hom(weaken_neutral(a, 1, 0), var_p(3), var_p(2));
    return jpm(a, motive, refl(var_n(0)), anchor, x, z, f, g);
}

DerivedDecl make_compose(const Context& ambient, const Type& a) {
    const Context tele = Checker::j_telescope(ambient, a);
    const Type up = weaken_neutral(a, 1, 0);
    return {"compose", tele,
            compose_at(up, var_n(0), var_p(3), var_p(2), var_p(1), var_p(0)),
            hom(up, var_p(3), var_p(2))};
}

Term transport_plus_at(const Type& a, const Type& family, const Term& base, const Term& anchor,
                       const Term& target, const Term& f) {
    const Type motive = rename_polar(weaken_neutral(family, 1, 0), {2});
    return jpm(a, motive, base, anchor, coe_minus(anchor), target, refl(anchor), f);
}

DerivedDecl make_transport_plus(const Context& ambient, const Type& a, const Type& family,
                                const Term& base) {
    const Type motive = rename_polar(weaken_neutral(family, 1, 0), {1});
    DerivedDecl d = derive_one_sided(ambient, a, motive, base, Side::Plus);
    d.name = "tr+";
    return d;
}

Type symmetry_motive_x(const Type& carrier) {
    return hom(weaken_neutral(carrier, 1, 0), coe_minus(var_n(0)), coe_plus(var_p(3)));
}

Type symmetry_motive_z(const Type& carrier) {
    return hom(weaken_neutral(carrier, 1, 0), coe_minus(var_p(2)), coe_plus(var_n(0)));
}

Term core_symmetry_term(const Type& carrier, const Term& anchor, const Term& target,
                        const Term& v) {
    return jpm(carrier, symmetry_motive_z(carrier), refl(var_n(0)), anchor, coe_minus(anchor),
               target, refl(anchor), v);
}

DerivedDecl core_symmetry_at(const Context& ambient, const Type& carrier) {
    const Type up = weaken_neutral(carrier, 1, 0);
    const Type motive = hom(up, coe_minus(var_p(1)), coe_plus(var_n(0)));
    DerivedDecl d = derive_one_sided(ambient, carrier, motive, refl(var_n(0)), Side::Plus);
    d.name = "symCore";
    return d;
}

DerivedDecl make_core_symmetry(const Context& ambient, const Type& b) {
    return core_symmetry_at(ambient, raw_flat(b));
}

Type make_id_flat(const Type& a, const Term& s, const Term& t) {
    if (!is_polar_closed(s) || !is_polar_closed(t))
        throw CheckError(ErrorKind::NotPolarClosed, "IdFlat endpoints must be polar-closed");
    return hom(raw_flat(a), coe_minus(inj_plus(s)), inj_plus(t));
}

DerivedDecl make_unit_law(const Context& ambient, const Type& a, UnitSide side) {
    Context c = ambient.without_polar().with_neutral(a, "e");
    const Type up = weaken_neutral(a, 1, 0);
    const Term e = var_n(0);
    Term p;
    Type h;
    if (side == UnitSide::Left) {
        c = c.with_polar(up, "z");
        h = hom(up, coe_minus(e), var_p(0));
        c = c.with_polar(h, "g");
        p = compose_at(up, e, coe_minus(e), var_p(1), refl(e), var_p(0));
        h = weaken_polar(h, 1, 0);
    } else {
        c = c.with_polar(raw_neg(up), "x");
        h = hom(up, var_p(0), coe_plus(e));
        c = c.with_polar(h, "f");
        p = compose_at(up, e, var_p(1), coe_plus(e), var_p(0), refl(e));
        h = weaken_polar(h, 1, 0);
    }
    const Term q = var_p(0);
    return {side == UnitSide::Left ? "unitL" : "unitR", c, uhp(p, q),
            hom(h, coe_minus(p), coe_plus(q))};
}

std::optional<Term> anchor_from_cod(const Term& cod) {
    if (cod->kind == TermKind::CoePlus && is_polar_closed(cod->args[0])) return cod->args[0];
    if (is_polar_closed(cod)) return inj_plus(cod);
    return std::nullopt;
}

std::optional<Term> anchor_from_dom(const Term& dom) {
    if (dom->kind == TermKind::CoeMinus && is_polar_closed(dom->args[0])) return dom->args[0];
    if (is_polar_closed(dom)) return inj_minus(dom);
    return std::nullopt;
}

Term build_compose(const Checker& ck, const Context& ctx, const Term& f, const Term& g) {
    const Type hf = hom_type_of(ck, ctx, f, "compose");
    const Type hg = hom_type_of(ck, ctx, g, "compose");
    std::optional<Term> e = anchor_from_cod(hf->cod);
    if (!e) e = anchor_from_dom(hg->dom);
    const Term t = compose_at(hf->inner, need_anchor(e, "compose", f), hf->dom, hg->cod, f, g);
    ck.infer(ctx, t);
    return t;
}

Term build_core_symmetry(const Checker& ck, const Context& ctx, const Term& v) {
    Type hv = hom_type_of(ck, ctx, v, "symCore");
    // refl infers the underlying carrier; retry at its core
    if (!is_core(normalize_type(&ck.signature(), hv->inner))) {
        const Type at_core = hom(raw_flat(hv->inner), hv->dom, hv->cod);
        ck.check(ctx, v, at_core);
        hv = at_core;
    }
    const Term e = need_anchor(anchor_from_dom(hv->dom), "symCore", v);
    const Term t = core_symmetry_term(hv->inner, e, hv->cod, v);
    ck.infer(ctx, t);
    return t;
}

Term build_unit(const Checker& ck, const Context& ctx, const Term& f, UnitSide side) {
    const Type h = hom_type_of(ck, ctx, f, side == UnitSide::Left ? "unitL" : "unitR");
    Term p;
    if (side == UnitSide::Left) {
        const Term e = need_anchor(anchor_from_dom(h->dom), "unitL", f);
        p = compose_at(h->inner, e, coe_minus(e), h->cod, refl(e), f);
    } else {
        const Term e = need_anchor(anchor_from_cod(h->cod), "unitR", f);
        p = compose_at(h->inner, e, h->dom, coe_plus(e), f, refl(e));
    }
    const Term t = uhp(p, f);
    ck.infer(ctx, t);
    return t;
}

Term build_canonical_j(const Checker& ck, const Context& ctx, const Type& motive,
                       const Term& base) {
    if (ctx.neutral.empty())
        throw CheckError(ErrorKind::MalformedJTelescope, "context has no anchor variable");
    const Type& a = ctx.neutral.back();
    check_tail(ck, ctx, Checker::j_telescope(neutral_prefix(ctx), a), 4);
    return jpm(weaken_neutral(a, 1, 0), weaken_neutral(motive, 1, 1), weaken_neutral(base, 1, 1),
               var_n(0), var_p(3), var_p(2), var_p(1), var_p(0));
}

Term build_canonical_one_sided(const Checker& ck, const Context& ctx, Side side,
                               const Type& motive, const Term& base) {
    if (ctx.neutral.empty())
        throw CheckError(ErrorKind::MalformedJTelescope, "context has no anchor variable");
    const Type& a = ctx.neutral.back();
    check_tail(ck, ctx, one_sided_telescope(neutral_prefix(ctx), a, side), 2);
    return one_sided_term(a, motive, base, side);
}

}  // namespace dirtt
