#include "doctest.h"

#include "dirtt/syntax.hpp"
#include "support/gen.hpp"

using namespace dirtt;
using dirtt::testing::Rng;
using dirtt::testing::random_term;
using dirtt::testing::random_type;

TEST_CASE("weakening shifts one namespace") {
    CHECK(equal(weaken_polar(var_p(0), 1, 0), var_p(1)));
    CHECK(equal(weaken_polar(var_n(0), 5, 0), var_n(0)));
    CHECK(equal(weaken_polar(coe_plus(var_p(1)), 2, 1), coe_plus(var_p(3))));
    CHECK(equal(weaken_polar(coe_plus(var_p(0)), 2, 1), coe_plus(var_p(0))));
    CHECK(equal(weaken_neutral(var_n(0), 1, 0), var_n(1)));
    CHECK(equal(weaken_neutral(var_p(2), 1, 0), var_p(2)));
    CHECK(equal(weaken_neutral(refl(var_n(0)), 1, 1), refl(var_n(0))));
}

TEST_CASE("polar substitution") {
    const Term s = sym_app("c", {});
    const Term t = coe_plus(var_n(0));
    CHECK(equal(subst_polar(var_p(0), {s}), s));
    CHECK(equal(subst_polar(hom(base("A"), var_p(1), var_p(0)), {s, t}),
                hom(base("A"), s, t)));
    CHECK(equal(subst_polar(var_p(2), {s, t}), var_p(0)));
}

TEST_CASE("neutral substitution") {
    const Term t = sym_app("c", {});
    const Term e = var_n(3);
    CHECK(equal(subst_neutral(coe_plus(var_n(0)), 0, inj_plus(t)), coe_plus(inj_plus(t))));
    CHECK(equal(subst_neutral(var_n(1), 0, e), var_n(0)));
    CHECK(equal(subst_neutral(var_p(0), 0, e), var_p(0)));
}

TEST_CASE("substitution under a J binder") {
    // The motive and base see the anchor binder as VarN(0); the ambient
    // VarN(0) is VarN(1) inside.
    const Type a = base("A");
    const Term j = jpm(a, hom(a, var_p(3), coe_plus(var_n(1))), refl(var_n(1)), var_n(0),
                       var_p(3), var_p(2), var_p(1), var_p(0));
    const Term e = inj_plus(sym_app("c", {}));
    const Term r = subst_neutral(j, 0, e);
    CHECK(equal(r->motive, hom(a, var_p(3), coe_plus(weaken_neutral(e, 1, 0)))));
    CHECK(equal(r->args[kJAnchor], e));
    // polar substitution leaves the motive's private zone alone
    const Term q = subst_polar(j, {e, e, e, e});
    CHECK(equal(q->motive, j->motive));
    CHECK(equal(q->args[kJx], e));
}

TEST_CASE("polar-closedness") {
    CHECK(is_polar_closed(var_n(0)));
    CHECK_FALSE(is_polar_closed(var_p(0)));
    CHECK(is_polar_closed(sym_app("plus", {coe_plus(var_n(0)), sym_app("zero", {})})));
    // the private polar zone of a J motive does not count
    const Type a = base("A");
    CHECK(is_polar_closed(
        jpm(a, hom(a, var_p(3), var_p(2)), refl(var_n(0)), var_n(0), coe_minus(var_n(0)),
            coe_plus(var_n(0)), refl(var_n(0)), refl(var_n(0)))));
}

TEST_CASE("instantiate a telescope") {
    const Term a0 = inj_plus(sym_app("c", {}));
    const Term a1 = var_n(7);
    // body over [x0, x1]: x0 is VarN(1), x1 is VarN(0); VarN(2) is ambient 0
    const Term body = sym_app("g", {coe_plus(var_n(1)), sym_app("g", {coe_plus(var_n(0)),
                                                                       coe_plus(var_n(2))})});
    CHECK(equal(instantiate(body, {a0, a1}),
                sym_app("g", {coe_plus(a0), sym_app("g", {coe_plus(a1), coe_plus(var_n(0))})})));
}

TEST_CASE("property: weaken then substitute is the identity") {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        const Term t = random_term(rng, 6, 3, 3);
        const Term e = random_term(rng, 3, 3, 0);
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(equal(subst_neutral(weaken_neutral(t, 1, k), k, e), t));
        CHECK(equal(subst_polar(weaken_polar(t, 1, 0), {random_term(rng, 3, 3, 3)}), t));
        const Type ty = random_type(rng, 5, 3, 3);
        CHECK(equal(subst_neutral(weaken_neutral(ty, 1, 0), 0, e), ty));
    }
}

TEST_CASE("property: polar and neutral substitution commute") {
    Rng rng(12);
    for (int i = 0; i < 500; ++i) {
        const Term t = random_term(rng, 6, 3, 3);
        const Term ep = random_term(rng, 3, 3, 2);
        const Term en = random_term(rng, 3, 2, 0);
        const std::size_t k = i % 3;
        const Term lhs = subst_neutral(subst_polar(t, {ep}), k, en);
        const Term rhs = subst_polar(subst_neutral(t, k, en), {subst_neutral(ep, k, en)});
        CHECK(equal(lhs, rhs));
    }
}

TEST_CASE("property: polar-closedness is stable under neutral weakening") {
    Rng rng(13);
    for (int i = 0; i < 500; ++i) {
        const Term t = random_term(rng, 6, 3, i % 2 ? 2 : 0);
        CHECK(is_polar_closed(t) == is_polar_closed(weaken_neutral(t, 2, i % 3)));
    }
}
