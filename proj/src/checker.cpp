#include "dirtt/checker.hpp"

#include <utility>

#include "dirtt/equality.hpp"

namespace dirtt {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::UnboundVariable: return "UnboundVariable";
        case ErrorKind::PolarityViolation: return "PolarityViolation";
        case ErrorKind::NotPolarClosed: return "NotPolarClosed";
        case ErrorKind::TypeMismatch: return "TypeMismatch";
        case ErrorKind::MalformedJTelescope: return "MalformedJTelescope";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::IllFormedContext: return "IllFormedContext";
    }
    return "?";
}

CheckError::CheckError(ErrorKind kind, std::string detail, Span span)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      detail_(std::move(detail)),
      span_(span) {}

namespace {

bool is_coercion(const Term& t) {
    return t->kind == TermKind::CoePlus || t->kind == TermKind::CoeMinus;
}

Context prefix(const Context& ctx, std::size_t neutral, std::size_t polar) {
    Context c;
    c.neutral.assign(ctx.neutral.begin(), ctx.neutral.begin() + neutral);
    c.polar.assign(ctx.polar.begin(), ctx.polar.begin() + polar);
    return c;
}

}  // namespace

Type Checker::nf(const Type& t) const { return normalize_type(&sig_, t); }

void Checker::expect_equal(const Type& got, const Type& want, const char* what) const {
    if (!type_equal(&sig_, got, want))
        throw CheckError(ErrorKind::TypeMismatch, std::string(what) + ": expected " +
                                                      debug_string(nf(want)) + ", got " +
                                                      debug_string(nf(got)));
}

Context Checker::j_telescope(const Context& ambient, const Type& carrier) {
    Context c = ambient.without_polar().with_neutral(carrier, "y");
    const Type a = weaken_neutral(carrier, 1, 0);
    c = c.with_polar(raw_neg(a), "x");
    c = c.with_polar(a, "z");
    c = c.with_polar(hom(a, var_p(1), coe_plus(var_n(0))), "u");
    c = c.with_polar(hom(a, coe_minus(var_n(0)), var_p(1)), "v");
    return c;
}

void Checker::check_context(const Context& ctx) const {
    for (std::size_t i = 0; i < ctx.neutral.size(); ++i) {
        if (!is_polar_closed(ctx.neutral[i]))
            throw CheckError(ErrorKind::IllFormedContext,
                             "neutral entry " + std::to_string(i) + " mentions a polar variable",
                             ctx.neutral[i]->span);
        check_type(prefix(ctx, i, 0), ctx.neutral[i]);
    }
    for (std::size_t i = 0; i < ctx.polar.size(); ++i)
        check_type(prefix(ctx, ctx.neutral.size(), i), ctx.polar[i]);
}

void Checker::check_type(const Context& ctx, const Type& t) const {
    try {
        switch (t->kind) {
            case TypeKind::Base:
                if (!sig_.has_base(t->name))
                    throw CheckError(ErrorKind::UnboundVariable, "unknown type '" + t->name + "'");
                return;
            case TypeKind::RawNeg:
            case TypeKind::RawFlat:
                check_type(ctx, t->inner);
                return;
            case TypeKind::Hom:
                check_type(ctx, t->inner);
                check(ctx, t->dom, raw_neg(t->inner));
                check(ctx, t->cod, t->inner);
                return;
        }
    } catch (CheckError& e) {
        e.locate(t->span);
        throw;
    }
}

Type Checker::infer(const Context& ctx, const Term& t) const {
    try {
        return infer_raw(ctx, t);
    } catch (CheckError& e) {
        e.locate(t->span);
        throw;
    }
}

void Checker::check(const Context& ctx, const Term& t, const Type& expected) const {
    try {
        check_raw(ctx, t, expected);
    } catch (CheckError& e) {
        e.locate(t->span);
        throw;
    }
}

Type Checker::infer_coercion(const Context& ctx, bool plus, const Term& body) const {
    if (is_coercion(body)) {
        // ⟨σ⟩⟨τ⟩e types only at a core intermediate, where it is ⟨στ⟩e.
        return infer_coercion(ctx, plus == (body->kind == TermKind::CoePlus), body->args[0]);
    }
    const Type e = nf(infer(ctx, body));
    if (!is_core(e))
        throw CheckError(ErrorKind::PolarityViolation,
                         std::string("coe") + (plus ? "+" : "-") +
                             " needs a term of core type, got " + debug_string(e),
                         body->span);
    const Type a = unflat(e);
    return plus ? a : raw_neg(a);
}

Type Checker::infer_raw(const Context& ctx, const Term& t) const {
    switch (t->kind) {
        case TermKind::VarP: {
            if (t->index >= ctx.polar.size())
                throw CheckError(ErrorKind::UnboundVariable,
                                 "polar variable #" + std::to_string(t->index) + " out of scope");
            const Type& decl = ctx.polar[ctx.polar.size() - 1 - t->index];
            return weaken_polar(decl, t->index + 1, 0);
        }
        case TermKind::VarN: {
            if (t->index >= ctx.neutral.size())
                throw CheckError(ErrorKind::UnboundVariable,
                                 "neutral variable #" + std::to_string(t->index) + " out of scope");
            const Type& decl = ctx.neutral[ctx.neutral.size() - 1 - t->index];
            return raw_flat(weaken_neutral(decl, t->index + 1, 0));
        }
        case TermKind::InjPlus:
        case TermKind::InjMinus: {
            const Term& body = t->args[0];
            if (!is_polar_closed(body))
                throw CheckError(ErrorKind::NotPolarClosed,
                                 "core introduction needs a polar-closed body");
            Type a = infer(ctx.without_polar(), body);
            if (t->kind == TermKind::InjMinus) a = nf(raw_neg(a));
            return raw_flat(a);
        }
        case TermKind::CoePlus:
        case TermKind::CoeMinus:
            return infer_coercion(ctx, t->kind == TermKind::CoePlus, t->args[0]);
        case TermKind::Refl: {
            const Term& e = t->args[0];
            if (!is_polar_closed(e))
                throw CheckError(ErrorKind::NotPolarClosed, "refl needs a polar-closed term");
            const Type et = nf(infer(ctx, e));
            if (!is_core(et))
                throw CheckError(ErrorKind::TypeMismatch,
                                 "refl needs a term of core type, got " + debug_string(et));
            return hom(unflat(et), coe_minus(e), coe_plus(e));
        }
        case TermKind::Jpm:
            return infer_jpm(ctx, t);
        case TermKind::Uhp: {
            const Type h = nf(infer(ctx, t->args[0]));
            if (h->kind != TypeKind::Hom)
                throw CheckError(ErrorKind::TypeMismatch,
                                 "UHP relates hom-terms, got " + debug_string(h));
            check(ctx, t->args[1], h);
            return hom(h, coe_minus(t->args[0]), coe_plus(t->args[1]));
        }
        case TermKind::Fwd:
        case TermKind::Back: {
            const Type h = nf(infer(ctx, t->args[0]));
            if (h->kind != TypeKind::Hom || h->mod.neg || !is_core(h->inner))
                throw CheckError(ErrorKind::TypeMismatch,
                                 std::string(t->kind == TermKind::Fwd ? "fwd" : "back") +
                                     " needs a hom-term of a core type, got " + debug_string(h));
            const Type a = unflat(h->inner);
            if (t->kind == TermKind::Fwd) return hom(a, coe_plus(h->dom), coe_plus(h->cod));
            return hom(a, coe_minus(h->cod), coe_minus(h->dom));
        }
        case TermKind::Sym: {
            const SymbolDecl* s = sig_.find_symbol(t->name);
            if (!s) throw CheckError(ErrorKind::UnboundVariable, "unknown symbol '" + t->name + "'");
            if (s->arg_types.size() != t->args.size())
                throw CheckError(ErrorKind::ArityMismatch,
                                 "'" + t->name + "' takes " + std::to_string(s->arg_types.size()) +
                                     " arguments, got " + std::to_string(t->args.size()));
            for (std::size_t i = 0; i < t->args.size(); ++i)
                check(ctx, t->args[i], base(s->arg_types[i]));
            return base(s->result);
        }
        case TermKind::Axiom:
            return infer_constant(ctx, t);
    }
    throw CheckError(ErrorKind::TypeMismatch, "unknown term");
}

Type Checker::infer_constant(const Context& ctx, const Term& t) const {
    const ConstantDecl* c = sig_.find_constant(t->name);
    if (!c) throw CheckError(ErrorKind::UnboundVariable, "unknown constant '" + t->name + "'");
    if (c->telescope.size() != t->args.size())
        throw CheckError(ErrorKind::ArityMismatch,
                         "'" + t->name + "' has a telescope of " +
                             std::to_string(c->telescope.size()) + " entries, got " +
                             std::to_string(t->args.size()) + " arguments");
    std::vector<Term> done;
    for (std::size_t i = 0; i < t->args.size(); ++i) {
        const Term& a = t->args[i];
        if (!is_polar_closed(a))
            throw CheckError(ErrorKind::NotPolarClosed,
                             "arguments of '" + t->name + "' land in a neutral telescope",
                             a->span);
        check(ctx, a, raw_flat(instantiate(c->telescope[i], done)));
        done.push_back(a);
    }
    return instantiate(c->type, done);
}

Type Checker::infer_jpm(const Context& ctx, const Term& t) const {
    const Type& carrier = t->carrier;
    if (t->args.size() != 6 || !carrier || !t->motive)
        throw CheckError(ErrorKind::MalformedJTelescope, "malformed J node");
    if (!is_polar_closed(carrier))
        throw CheckError(ErrorKind::MalformedJTelescope, "J carrier must be polar-closed");
    check_type(ctx.without_polar(), carrier);

    const Context tele = j_telescope(ctx, carrier);
    check_type(tele, t->motive);

    const Term y = var_n(0);
    const Type at_refl =
        subst_polar(t->motive, {coe_minus(y), coe_plus(y), refl(y), refl(y)});
    check(tele.without_polar(), t->args[kJBase], at_refl);

    const Term& e = t->args[kJAnchor];
    if (!is_polar_closed(e))
        throw CheckError(ErrorKind::NotPolarClosed, "J anchor must be polar-closed", e->span);
    check(ctx, e, raw_flat(carrier));
    const Term& x = t->args[kJx];
    const Term& z = t->args[kJz];
    check(ctx, x, raw_neg(carrier));
    check(ctx, z, carrier);
    check(ctx, t->args[kJu], hom(carrier, x, coe_plus(e)));
    check(ctx, t->args[kJv], hom(carrier, coe_minus(e), z));

    return subst_polar(subst_neutral(t->motive, 0, e), {x, z, t->args[kJu], t->args[kJv]});
}

void Checker::check_raw(const Context& ctx, const Term& t, const Type& expected) const {
    switch (t->kind) {
        case TermKind::CoePlus:
        case TermKind::CoeMinus: {
            const Term& body = t->args[0];
            if (!is_coercion(body)) {
                const Type e = nf(infer(ctx, body));
                if (!is_core(e))
                    throw CheckError(ErrorKind::PolarityViolation,
                                     std::string("coe") +
                                         (t->kind == TermKind::CoePlus ? "+" : "-") +
                                         " needs a term of core type, got " + debug_string(e),
                                     body->span);
            }
            // Core Elim in checking mode: ⟨+⟩e : T iff e : T♭, ⟨-⟩e : T iff e : (T⁻)♭.
            const Type want = t->kind == TermKind::CoePlus ? raw_flat(expected)
                                                           : raw_flat(raw_neg(expected));
            check(ctx, body, want);
            return;
        }
        case TermKind::InjPlus:
        case TermKind::InjMinus: {
            const Term& body = t->args[0];
            if (!is_polar_closed(body))
                throw CheckError(ErrorKind::NotPolarClosed,
                                 "core introduction needs a polar-closed body");
            const Type want = nf(expected);
            if (!is_core(want))
                throw CheckError(ErrorKind::TypeMismatch,
                                 "core introduction produces a core type, expected " +
                                     debug_string(want));
            const bool minus = t->kind == TermKind::InjMinus;
            const auto at = [&](const Type& a) { return minus ? raw_neg(a) : a; };
            const Context closed = ctx.without_polar();
            try {
                check(closed, body, at(unflat(want)));
            } catch (const CheckError&) {
                // (A♭)♭ ≡ A♭: the body may itself live in the core.
                if (equal(unflat(want), want)) throw;
                try {
                    check(closed, body, at(want));
                } catch (const CheckError&) {
                    check(closed, body, at(unflat(want)));
                }
            }
            return;
        }
        case TermKind::Refl: {
            const Type want = nf(expected);
            if (want->kind != TypeKind::Hom || want->mod.neg) break;
            const Term& e = t->args[0];
            if (!is_polar_closed(e))
                throw CheckError(ErrorKind::NotPolarClosed, "refl needs a polar-closed term");
            check(ctx, e, raw_flat(want->inner));
            expect_equal(hom(want->inner, coe_minus(e), coe_plus(e)), want, "refl");
            return;
        }
        case TermKind::Uhp: {
            // The carrier is taken from the expected type: hom-terms over a
            // core carrier also inhabit the hom over its underlying type.
            const Type want = nf(expected);
            if (want->kind != TypeKind::Hom || want->mod.neg ||
                want->inner->kind != TypeKind::Hom || want->inner->mod.neg)
                break;
            check(ctx, t->args[0], want->inner);
            check(ctx, t->args[1], want->inner);
            expect_equal(hom(want->inner, coe_minus(t->args[0]), coe_plus(t->args[1])), want,
                         "UHP");
            return;
        }
        default:
            break;
    }
    expect_equal(infer(ctx, t), expected, "term");
}

void Checker::check_symbol(const SymbolDecl& s) const {
    for (const auto& a : s.arg_types)
        if (!sig_.has_base(a))
            throw CheckError(ErrorKind::UnboundVariable, "unknown type '" + a + "'", s.span);
    if (!sig_.has_base(s.result))
        throw CheckError(ErrorKind::UnboundVariable, "unknown type '" + s.result + "'", s.span);
}

void Checker::check_constant(const ConstantDecl& c) const {
    try {
        Context tele;
        for (const auto& entry : c.telescope) {
            tele.neutral.push_back(entry);
            check_context(tele);
        }
        check_type(tele, c.type);
        if (c.body) check(tele, c.body, c.type);
    } catch (CheckError& e) {
        e.locate(c.span);
        throw;
    }
}

bool ProgramReport::ok() const {
    if (!signature.empty()) return false;
    for (const auto& g : goals)
        if (!g.ok) return false;
    return true;
}

GoalResult check_goal(const Checker& checker, const Goal& goal) {
    GoalResult r{goal.name};
    try {
        checker.check_context(goal.context);
        checker.check_type(goal.context, goal.type);
        checker.check(goal.context, goal.term, goal.type);
        r.ok = true;
    } catch (CheckError& e) {
        e.locate(goal.span);
        r.error = e;
    }
    return r;
}

ProgramReport check_program(const Signature& sig, const std::vector<Goal>& goals) {
    ProgramReport report;
    const Checker checker(sig);
    for (const auto& s : sig.symbols) {
        try {
            checker.check_symbol(s);
        } catch (const CheckError& e) {
            report.signature.push_back({s.name, false, e});
        }
    }
    for (const auto& c : sig.constants) {
        try {
            checker.check_constant(c);
        } catch (const CheckError& e) {
            report.signature.push_back({c.name, false, e});
        }
    }
    for (const auto& g : goals) report.goals.push_back(check_goal(checker, g));
    return report;
}

}  // namespace dirtt
