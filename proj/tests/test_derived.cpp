#include "doctest.h"

#include "dirtt/derived.hpp"
#include "dirtt/equality.hpp"

using namespace dirtt;

namespace {

const Type A = base("A");

Signature sig_a() {
    Signature s;
    s.base_types = {"A"};
    s.symbols = {{"c", {}, "A", {}}, {"f", {"A"}, "A", {}}};
    return s;
}

const Signature kSig = sig_a();
const Checker ck(kSig);

void recheck(const DerivedDecl& d) {
    ck.check_context(d.context);
    ck.check_type(d.context, d.type);
    ck.check(d.context, d.term, d.type);
}

ErrorKind kind_of(const DerivedDecl& d) {
    try {
        recheck(d);
    } catch (const CheckError& e) {
        return e.kind();
    }
    FAIL("expected a CheckError");
    return ErrorKind::TypeMismatch;
}

const Term y = var_n(0);

}  // namespace

TEST_CASE("one-sided J") {
    const Term m = sym_app("f", {coe_plus(var_n(0))});
    for (Side side : {Side::Plus, Side::Minus}) {
        const DerivedDecl d = derive_one_sided(Context{}, A, A, m, side);
        CHECK_NOTHROW(recheck(d));
        const std::vector<Term> at_refl = side == Side::Plus
                                              ? std::vector<Term>{coe_plus(y), refl(y)}
                                              : std::vector<Term>{coe_minus(y), refl(y)};
        CHECK(term_equal(&kSig, subst_polar(d.term, at_refl), m));
    }
    // a motive that uses the remaining variables
    const Type up = weaken_neutral(A, 1, 0);
    const DerivedDecl plus = derive_one_sided(Context{}, A, hom(up, coe_minus(y), var_p(1)),
                                              refl(y), Side::Plus);
    CHECK_NOTHROW(recheck(plus));
    const DerivedDecl minus = derive_one_sided(Context{}, A, hom(up, var_p(1), coe_plus(y)),
                                               refl(y), Side::Minus);
    CHECK_NOTHROW(recheck(minus));
    CHECK(term_equal(&kSig, subst_polar(minus.term, {coe_minus(y), refl(y)}), refl(y)));
    // a base at the wrong refl instance
    CHECK(kind_of(derive_one_sided(Context{}, A, hom(up, coe_minus(y), var_p(1)),
                                   sym_app("c", {}), Side::Plus)) == ErrorKind::TypeMismatch);
}

TEST_CASE("composition") {
    const DerivedDecl d = make_compose(Context{}, A);
    CHECK_NOTHROW(recheck(d));
    CHECK(term_equal(&kSig, subst_polar(d.term, {coe_minus(y), coe_plus(y), refl(y), refl(y)}),
                     refl(y)));
    // no judgmental unit law: f·refl stays a J term
    const Term half = subst_polar(d.term, {var_p(1), coe_plus(y), var_p(0), refl(y)});
    CHECK(normalize_term(&kSig, half)->kind == TermKind::Jpm);
}

TEST_CASE("composition is stable under an unused neutral entry") {
    Context g = Context{}.with_neutral(A, "a").with_neutral(A, "b");
    const Type carrier = hom(A, coe_minus(var_n(1)), coe_plus(var_n(0)));
    const DerivedDecl d = make_compose(g, carrier);
    CHECK_NOTHROW(recheck(d));
    const DerivedDecl wide = make_compose(g.with_neutral(A, "w"), weaken_neutral(carrier, 1, 0));
    CHECK_NOTHROW(recheck(wide));
    CHECK(equal(weaken_neutral(d.term, 1, 1), wide.term));
}

TEST_CASE("transport") {
    // constant family: transport returns the base
    const Term m = sym_app("f", {coe_plus(var_n(0))});
    const DerivedDecl d = make_transport_plus(Context{}, A, A, m);
    CHECK_NOTHROW(recheck(d));
    CHECK(term_equal(&kSig, subst_polar(d.term, {coe_plus(y), refl(y)}), m));
    // transport of refl along v, against refl·v
    const Type up = weaken_neutral(A, 1, 0);
    const DerivedDecl tr =
        derive_one_sided(Context{}, A, hom(up, coe_minus(y), var_p(1)), refl(y), Side::Plus);
    const Term comp = compose_at(up, y, coe_minus(y), var_p(1), refl(y), var_p(0));
    CHECK_NOTHROW(ck.check(tr.context, comp, tr.type));
    const std::vector<Term> at_refl = {coe_plus(y), refl(y)};
    CHECK(term_equal(&kSig, subst_polar(tr.term, at_refl), subst_polar(comp, at_refl)));
    // in general only propositionally equal
    CHECK_FALSE(term_equal(&kSig, tr.term, comp));
    CHECK_NOTHROW(ck.infer(tr.context, uhp(tr.term, comp)));
}

TEST_CASE("core symmetry") {
    const DerivedDecl d = make_core_symmetry(Context{}, A);
    CHECK_NOTHROW(recheck(d));
    CHECK(term_equal(&kSig, subst_polar(d.term, {coe_plus(y), refl(y)}), refl(y)));
    CHECK(kind_of(core_symmetry_at(Context{}, A)) == ErrorKind::PolarityViolation);
    // twice flat is still core
    CHECK_NOTHROW(recheck(make_core_symmetry(Context{}, raw_flat(A))));
}

TEST_CASE("Id flat") {
    const Term t = sym_app("c", {});
    const Term s = sym_app("f", {t});
    CHECK_NOTHROW(ck.check_type({}, make_id_flat(A, s, t)));
    CHECK_NOTHROW(ck.check({}, refl(inj_plus(t)), make_id_flat(A, t, t)));
    CHECK_THROWS_AS(ck.check({}, refl(inj_plus(t)), make_id_flat(A, s, t)), CheckError);
    CHECK(type_equal(&kSig, make_id_flat(raw_neg(raw_neg(A)), s, t), make_id_flat(A, s, t)));
    CHECK_THROWS_AS(make_id_flat(A, var_p(0), t), CheckError);
}

TEST_CASE("unit laws") {
    for (UnitSide side : {UnitSide::Left, UnitSide::Right}) {
        const DerivedDecl d = make_unit_law(Context{}, A, side);
        CHECK_NOTHROW(recheck(d));
    }
    // UHP(p, p)
    const Context tele = Checker::j_telescope(Context{}, A);
    CHECK_NOTHROW(ck.infer(tele, uhp(var_p(0), var_p(0))));
}

TEST_CASE("sugar builders") {
    // a, b, c, d :: A | f : hom(-a,+b), g : hom(-b,+c), h : hom(-c,+d)
    Context ctx;
    for (const char* n : {"a", "b", "c", "d"}) ctx = ctx.with_neutral(A, n);
    ctx = ctx.with_polar(hom(A, coe_minus(var_n(3)), coe_plus(var_n(2))), "f");
    ctx = ctx.with_polar(hom(A, coe_minus(var_n(2)), coe_plus(var_n(1))), "g");
    ctx = ctx.with_polar(hom(A, coe_minus(var_n(1)), coe_plus(var_n(0))), "h");
    const Term f = var_p(2), g = var_p(1), h = var_p(0);
    const Term fg_h = build_compose(ck, ctx, build_compose(ck, ctx, f, g), h);
    const Term f_gh = build_compose(ck, ctx, f, build_compose(ck, ctx, g, h));
    CHECK(type_equal(&kSig, ck.infer(ctx, fg_h), hom(A, coe_minus(var_n(3)), coe_plus(var_n(0)))));
    CHECK(type_equal(&kSig, ck.infer(ctx, fg_h), ck.infer(ctx, f_gh)));
    CHECK_NOTHROW(ck.infer(ctx, uhp(fg_h, f_gh)));
    CHECK_NOTHROW(build_unit(ck, ctx, g, UnitSide::Left));
    CHECK_NOTHROW(build_unit(ck, ctx, g, UnitSide::Right));
    CHECK_THROWS_AS(build_compose(ck, ctx, g, f), CheckError);
    CHECK_THROWS_AS(build_core_symmetry(ck, ctx, f), CheckError);
}
