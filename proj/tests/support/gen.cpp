#include "support/gen.hpp"

#include <algorithm>

#include "dirtt/derived.hpp"
#include "dirtt/equality.hpp"

namespace dirtt::testing {

namespace {

std::size_t pick(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

Type base_a() { return base("A"); }

}  // namespace

Type random_type(Rng& rng, int d, std::size_t nn, std::size_t np) {
    const std::size_t choice = d <= 1 ? 0 : pick(rng, 5);
    switch (choice) {
        case 0:
            return base("A", {pick(rng, 2) == 1, pick(rng, 2) == 1});
        case 1:
            return raw_neg(random_type(rng, d - 1, nn, np));
        case 2:
            return raw_flat(random_type(rng, d - 1, nn, np));
        default:
            return hom(random_type(rng, d - 1, nn, np), random_term(rng, d - 1, nn, np),
                       random_term(rng, d - 1, nn, np), {pick(rng, 2) == 1, pick(rng, 2) == 1});
    }
}

Term random_term(Rng& rng, int d, std::size_t nn, std::size_t np) {
    if (d <= 1) {
        const std::size_t options = (nn > 0) + (np > 0) + 1;
        std::size_t k = pick(rng, options);
        if (nn > 0 && k-- == 0) return var_n(pick(rng, nn + 1));  // may be free
        if (np > 0 && k-- == 0) return var_p(pick(rng, np + 1));
        return sym_app("c", {});
    }
    const auto sub = [&] { return random_term(rng, d - 1, nn, np); };
    switch (pick(rng, 11)) {
        case 0: return inj_plus(sub());
        case 1: return inj_minus(sub());
        case 2: return coe_plus(sub());
        case 3: return coe_minus(sub());
        case 4: return refl(sub());
        case 5: return uhp(sub(), sub());
        case 6: return pick(rng, 2) ? fwd(sub()) : back(sub());
        case 7: return sym_app("g", {sub(), sub()});
        case 8: return axiom_ref("step", {sub()});
        case 9:
            return jpm(random_type(rng, d - 1, nn, 0), random_type(rng, d - 1, nn + 1, 4),
                       random_term(rng, d - 1, nn + 1, 0), sub(), sub(), sub(), sub(), sub());
        default: return random_term(rng, 1, nn, np);
    }
}

std::size_t depth(const Type& t) {
    std::size_t d = 0;
    if (t->inner) d = std::max(d, depth(t->inner));
    if (t->dom) d = std::max(d, depth(t->dom));
    if (t->cod) d = std::max(d, depth(t->cod));
    return d + 1;
}

std::size_t depth(const Term& t) {
    std::size_t d = 0;
    for (const auto& a : t->args) d = std::max(d, depth(a));
    if (t->carrier) d = std::max(d, depth(t->carrier));
    if (t->motive) d = std::max(d, depth(t->motive));
    return d + 1;
}

Signature fixture_signature() {
    Signature sig;
    sig.base_types = {"A"};
    sig.symbols = {{"c", {}, "A", {}}, {"f", {"A"}, "A", {}}, {"g", {"A", "A"}, "A", {}}};
    ConstantDecl step;
    step.name = "step";
    step.telescope = {base_a()};
    step.telescope_names = {"a"};
    step.type = hom(base_a(), coe_minus(inj_plus(sym_app("f", {coe_plus(var_n(0))}))),
                    coe_plus(var_n(0)));
    sig.constants.push_back(step);
    return sig;
}

Context fixture_context() {
    Context c;
    c = c.with_neutral(base_a(), "a").with_neutral(base_a(), "b");
    c = c.with_polar(base_a(), "p").with_polar(raw_neg(base_a()), "q");
    return c.with_polar(hom(base_a(), coe_minus(var_n(1)), coe_plus(var_n(0))), "h");
}

namespace {

// Type-directed drafts. The checker has the final word; these only make
// acceptance likely.
class Drafter {
public:
    explicit Drafter(Rng& rng) : rng_(rng) {}

    Term val(int d, bool closed, std::size_t nn) {
        if (d <= 1) return (!closed && pick(rng_, 2)) ? var_p(2) : sym_app("c", {});
        switch (pick(rng_, 7)) {
            case 0: return closed ? sym_app("c", {}) : var_p(2);
            case 1: return sym_app("f", {val(d - 1, closed, nn)});
            case 2: return sym_app("g", {val(d - 1, closed, nn), val(d - 1, closed, nn)});
            case 3: return coe_plus(core(d - 1, nn));
            case 4: return coe_plus(inj_plus(val(d - 2, true, nn)));
            case 5: {
                const Term e = core(d - 3, nn);
                return transport_plus_at(base_a(), base_a(), val(d - 3, true, nn + 1), e,
                                         coe_plus(e), refl(e));
            }
            default: return sym_app("c", {});
        }
    }

    Term core(int d, std::size_t nn) {
        if (d <= 1) return var_n(pick(rng_, nn));
        switch (pick(rng_, 4)) {
            case 0: return inj_plus(val(d - 1, true, nn));
            case 1: return inj_minus(neg(d - 1, true, nn));
            case 2: return inj_plus(coe_plus(core(d - 2, nn)));
            default: return var_n(pick(rng_, nn));
        }
    }

    Term neg(int d, bool closed, std::size_t nn) {
        if (d <= 1) return closed ? coe_minus(var_n(pick(rng_, nn))) : var_p(1);
        switch (pick(rng_, 3)) {
            case 0: return closed ? coe_minus(core(d - 1, nn)) : var_p(1);
            default: return coe_minus(core(d - 1, nn));
        }
    }

    // A hom-term ending at +e for the given anchor.
    Term hom_to(int d, const Term& e) {
        if (d <= 2 || pick(rng_, 2) == 0) return refl(e);
        return axiom_ref("step", {e});
    }

    Term hom(int d, bool closed, std::size_t nn) {
        if (d <= 2) return closed ? refl(core(1, nn)) : var_p(0);
        switch (pick(rng_, 9)) {
            case 0: return closed ? refl(core(d - 1, nn)) : var_p(0);
            case 1: return refl(core(d - 1, nn));
            case 2: return axiom_ref("step", {core(d - 1, nn)});
            case 3: {
                // step(X) · step(Y) with X = inj+ f(+Y)
                const Term y = core(d - 4, nn);
                const Term x = inj_plus(sym_app("f", {coe_plus(y)}));
                return compose_at(base_a(), x, coe_minus(inj_plus(sym_app("f", {coe_plus(x)}))),
                                  coe_plus(y), axiom_ref("step", {x}), axiom_ref("step", {y}));
            }
            case 4: {
                const Term e = core(d - 3, nn);
                return compose_at(base_a(), e, coe_minus(e), coe_plus(e), refl(e), refl(e));
            }
            case 5: {
                const Term e = core(d - 3, nn);
                const Type flat_a = raw_flat(base_a());
                return core_symmetry_term(flat_a, e, coe_plus(e), refl(e));
            }
            case 6: {
                const Term p = hom(d - 1, closed, nn);
                return uhp(p, p);
            }
            case 7: {
                if (closed) return refl(core(d - 1, nn));
                // h · refl_b
                return compose_at(base_a(), var_n(0), coe_minus(var_n(1)), coe_plus(var_n(0)),
                                  var_p(0), refl(var_n(0)));
            }
            default: {
                const Term e = core(d - 3, nn);
                return compose_at(base_a(), e, coe_minus(e), coe_plus(e), refl(e),
                                  hom_to(d - 3, e));
            }
        }
    }

    Term any(int d) {
        switch (pick(rng_, 4)) {
            case 0: return val(d, false, 2);
            case 1: return core(d, 2);
            case 2: return neg(d, false, 2);
            default: return hom(d, false, 2);
        }
    }

private:
    Rng& rng_;
};

}  // namespace

std::vector<Typed> well_typed_terms(Rng& rng, std::size_t count, int max_depth) {
    static const Signature sig = fixture_signature();
    const Checker ck(sig);
    const Context ctx = fixture_context();
    Drafter drafter(rng);
    std::vector<Typed> out;
    for (std::size_t attempt = 0; out.size() < count && attempt < count * 50; ++attempt) {
        const int d = 1 + static_cast<int>(pick(rng, static_cast<std::size_t>(max_depth)));
        const Term t = drafter.any(d);
        if (depth(t) > static_cast<std::size_t>(max_depth)) continue;
        try {
            out.push_back({t, ck.infer(ctx, t)});
        } catch (const CheckError&) {
        }
    }
    return out;
}

}  // namespace dirtt::testing
