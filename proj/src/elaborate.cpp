#include <algorithm>
#include <set>

#include "dirtt/derived.hpp"
#include "dirtt/equality.hpp"
#include "dirtt/frontend.hpp"

namespace dirtt {

namespace {

template <class F>
auto at_span(Span s, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (CheckError& e) {
        e.locate(s);
        throw;
    }
}

class Elab {
public:
    Elab(const Signature& sig, std::vector<Warning>* warnings)
        : sig_(sig), ck_(sig), warnings_(warnings) {}

    const Checker& checker() const { return ck_; }

    Context bind(const Context& ctx, const std::string& name, const Type& t, bool neutral,
                 Span span) const {
        if (warnings_) {
            const auto& ns = ctx.neutral_names;
            const auto& ps = ctx.polar_names;
            if (std::find(ns.begin(), ns.end(), name) != ns.end() ||
                std::find(ps.begin(), ps.end(), name) != ps.end())
                warnings_->push_back({"'" + name + "' shadows an earlier variable", span});
            else if (sig_.has_name(name))
                warnings_->push_back({"'" + name + "' shadows a global declaration", span});
        }
        return neutral ? ctx.with_neutral(t, name) : ctx.with_polar(t, name);
    }

    Context context(const std::vector<SEntry>& entries) const {
        Context ctx;
        for (const auto& e : entries) {
            const Context& cur = ctx;
            const Type t = at_span(e.span, [&] {
                return type(e.neutral ? cur.without_polar() : cur, *e.type);
            });
            ctx = bind(ctx, e.name, t, e.neutral, e.span);
        }
        return ctx;
    }

    Type type(const Context& ctx, const SType& s) const {
        return at_span(s.span, [&] { return type_raw(ctx, s); });
    }

    Term term(const Context& ctx, const STerm& s) const {
        return at_span(s.span, [&] { return term_raw(ctx, s); });
    }

private:
    Type type_raw(const Context& ctx, const SType& s) const {
        switch (s.kind) {
            case SType::Name:
                if (!sig_.has_base(s.name))
                    throw CheckError(ErrorKind::UnboundVariable, "unknown type '" + s.name + "'",
                                     s.span);
                return base(s.name, {}, s.span);
            case SType::Neg:
                return raw_neg(type(ctx, *s.inner), s.span);
            case SType::Flat:
                return raw_flat(type(ctx, *s.inner), s.span);
            case SType::Hom:
                return hom(type(ctx, *s.inner), term(ctx, *s.lhs), term(ctx, *s.rhs), {}, s.span);
            case SType::Id: {
                const Type a = type(ctx, *s.inner);
                const Term l = term(ctx, *s.lhs), r = term(ctx, *s.rhs);
                if (is_core(normalize_type(&sig_, a)))
                    return hom(a, coe_minus(l, s.lhs->span), coe_plus(r, s.rhs->span), {}, s.span);
                if (is_polar_closed(l) && is_polar_closed(r)) return make_id_flat(a, l, r);
                throw CheckError(ErrorKind::PolarityViolation,
                                 "Id over a non-core carrier needs polar-closed endpoints",
                                 s.span);
            }
            case SType::IdFlat:
                return make_id_flat(type(ctx, *s.inner), term(ctx, *s.lhs), term(ctx, *s.rhs));
        }
        throw CheckError(ErrorKind::TypeMismatch, "unknown type form", s.span);
    }

    std::vector<Term> terms(const Context& ctx, const std::vector<STermP>& ss) const {
        std::vector<Term> out;
        for (const auto& s : ss) out.push_back(term(ctx, *s));
        return out;
    }

    static void arity(const STerm& s, std::size_t want) {
        if (s.args.size() != want)
            throw CheckError(ErrorKind::ArityMismatch,
                             "'" + s.name + "' takes " + std::to_string(want) + " argument(s), got " +
                                 std::to_string(s.args.size()),
                             s.span);
    }

    Term lookup(const Context& ctx, const std::string& n, Span span) const {
        for (std::size_t i = ctx.polar_names.size(); i-- > 0;)
            if (ctx.polar_names[i] == n) return var_p(ctx.polar_names.size() - 1 - i, span);
        for (std::size_t i = ctx.neutral_names.size(); i-- > 0;)
            if (ctx.neutral_names[i] == n) return var_n(ctx.neutral_names.size() - 1 - i, span);
        if (const SymbolDecl* f = sig_.find_symbol(n)) {
            if (!f->arg_types.empty())
                throw CheckError(ErrorKind::ArityMismatch,
                                 "'" + n + "' takes " + std::to_string(f->arg_types.size()) +
                                     " argument(s)",
                                 span);
            return sym_app(n, {}, span);
        }
        if (const ConstantDecl* c = sig_.find_constant(n)) {
            if (!c->telescope.empty())
                throw CheckError(ErrorKind::ArityMismatch,
                                 "'" + n + "' needs arguments: " + n + " @ (...)", span);
            return axiom_ref(n, {}, span);
        }
        throw CheckError(ErrorKind::UnboundVariable, "unbound name '" + n + "'", span);
    }

    Type hom_of(const Context& ctx, const Term& t) const {
        const Type raw = ck_.infer(ctx, t);
        if (raw->kind == TypeKind::Hom && !raw->mod.neg) return raw;
        const Type nf = normalize_type(&sig_, raw);
        if (nf->kind == TypeKind::Hom && !nf->mod.neg) return nf;
        throw CheckError(ErrorKind::TypeMismatch, "expected a hom, got " + debug_string(raw));
    }

    Term term_raw(const Context& ctx, const STerm& s) const {
        switch (s.kind) {
            case STerm::Name:
                return lookup(ctx, s.name, s.span);
            case STerm::App: {
                if (s.name == "compose") {
                    arity(s, 2);
                    return build_compose(ck_, ctx, term(ctx, *s.args[0]), term(ctx, *s.args[1]));
                }
                if (s.name == "symCore") {
                    arity(s, 1);
                    return build_core_symmetry(ck_, ctx, term(ctx, *s.args[0]));
                }
                if (s.name == "unitL" || s.name == "unitR") {
                    arity(s, 1);
                    return build_unit(ck_, ctx, term(ctx, *s.args[0]),
                                      s.name == "unitL" ? UnitSide::Left : UnitSide::Right);
                }
                const SymbolDecl* f = sig_.find_symbol(s.name);
                if (!f) {
                    if (sig_.find_constant(s.name))
                        throw CheckError(ErrorKind::UnboundVariable,
                                         "'" + s.name + "' is a constant; write " + s.name +
                                             " @ (...)",
                                         s.span);
                    throw CheckError(ErrorKind::UnboundVariable, "unknown symbol '" + s.name + "'",
                                     s.span);
                }
                arity(s, f->arg_types.size());
                return sym_app(s.name, terms(ctx, s.args), s.span);
            }
            case STerm::At: {
                const ConstantDecl* c = sig_.find_constant(s.name);
                if (!c)
                    throw CheckError(ErrorKind::UnboundVariable,
                                     "unknown axiom or definition '" + s.name + "'", s.span);
                arity(s, c->telescope.size());
                return axiom_ref(s.name, terms(ctx, s.args), s.span);
            }
            case STerm::Prefix: {
                const Term a = term(ctx, *s.args[0]);
                if (s.name == "inj+") return inj_plus(a, s.span);
                if (s.name == "inj-") return inj_minus(a, s.span);
                if (s.name == "coe+") return coe_plus(a, s.span);
                if (s.name == "coe-") return coe_minus(a, s.span);
                if (s.name == "refl") return refl(a, s.span);
                if (s.name == "fwd") return fwd(a, s.span);
                return back(a, s.span);
            }
            case STerm::Uhp:
                return uhp(term(ctx, *s.args[0]), term(ctx, *s.args[1]), s.span);
            case STerm::JGen: {
                const Type a = type(ctx, *s.carrier);
                Context tele = Checker::j_telescope(ctx, a);
                // binder names replace the default ones
                tele.neutral_names.back() = s.binders[0];
                for (std::size_t i = 0; i < 4; ++i) tele.polar_names[i] = s.binders[i + 1];
                const Type motive = type(tele, *s.motive);
                const Context bctx = ctx.without_polar().with_neutral(a, s.binders[0]);
                const Term b = term(bctx, *s.args[0]);
                std::vector<Term> a5;
                for (std::size_t i = 1; i < 6; ++i) a5.push_back(term(ctx, *s.args[i]));
                return jpm(a, motive, b, a5[0], a5[1], a5[2], a5[3], a5[4], s.span);
            }
            case STerm::JShort: {
                const Type motive = type(ctx, *s.motive);
                const Term b = term(ctx.without_polar(), *s.args[0]);
                const Term t = s.name == "J"    ? build_canonical_j(ck_, ctx, motive, b)
                               : s.name == "J+" ? build_canonical_one_sided(ck_, ctx, Side::Plus,
                                                                            motive, b)
                                                : build_canonical_one_sided(ck_, ctx, Side::Minus,
                                                                            motive, b);
                return with_span(t, s.span);
            }
            case STerm::Tr: {
                const Term f = term(ctx, *s.args[1]);
                const Type h = hom_of(ctx, f);
                const auto e = anchor_from_dom(h->dom);
                if (!e)
                    throw CheckError(ErrorKind::NotPolarClosed,
                                     "tr+ needs a polar-closed source endpoint", s.args[1]->span);
                // the family lives in the one-sided telescope minus v
                const Context bctx = ctx.without_polar().with_neutral(h->inner, s.binders[0]);
                const Context fam_ctx =
                    bctx.with_polar(weaken_neutral(h->inner, 1, 0), s.binders[1]);
                const Type family = type(fam_ctx, *s.motive);
                const Term b = term(bctx, *s.args[0]);
                const Term t = jpm(h->inner, rename_polar(family, {2}), b, *e, coe_minus(*e),
                                   h->cod, refl(*e), f, s.span);
                ck_.infer(ctx, t);
                return t;
            }
        }
        throw CheckError(ErrorKind::TypeMismatch, "unknown term form", s.span);
    }

    const Signature& sig_;
    Checker ck_;
    std::vector<Warning>* warnings_;
};

}  // namespace

const Entry* Program::find_goal(const std::string& name) const {
    for (const auto& e : entries)
        if (e.kind != EntryKind::Decl && e.goal.name == name) return &e;
    return nullptr;
}

Program elaborate(const std::vector<SDecl>& decls) {
    Program prog;
    Signature& sig = prog.sig;
    const Elab el(sig, &prog.warnings);
    const auto failed = [&](const SDecl& d, const CheckError& e) {
        Entry en{EntryKind::Decl, Goal{d.name, {}, nullptr, nullptr, d.span}, "", e};
        prog.entries.push_back(std::move(en));
    };
    for (const auto& d : decls) {
        try {
            switch (d.kind) {
                case SDecl::TypeDecl:
                    sig.base_types.push_back(d.name);
                    prog.order.push_back({d.kind, sig.base_types.size() - 1});
                    break;
                case SDecl::Func: {
                    SymbolDecl s{d.name, d.arg_types, d.result, d.span};
                    el.checker().check_symbol(s);
                    sig.symbols.push_back(s);
                    prog.order.push_back({d.kind, sig.symbols.size() - 1});
                    break;
                }
                case SDecl::Axiom:
                case SDecl::Def: {
                    ConstantDecl c;
                    c.name = d.name;
                    c.span = d.span;
                    const Context tele = el.context(d.context);
                    c.telescope = tele.neutral;
                    c.telescope_names = tele.neutral_names;
                    c.type = el.type(tele, *d.type);
                    if (d.term) c.body = el.term(tele, *d.term);
                    at_span(d.span, [&] { el.checker().check_constant(c); });
                    sig.constants.push_back(c);
                    prog.order.push_back({d.kind, sig.constants.size() - 1});
                    break;
                }
                case SDecl::Check:
                case SDecl::Refute: {
                    Entry en{d.kind == SDecl::Check ? EntryKind::Check : EntryKind::Refute,
                             Goal{d.name, {}, nullptr, nullptr, d.span}, d.model_path, {}};
                    try {
                        en.goal.context = el.context(d.context);
                        at_span(d.span, [&] { el.checker().check_context(en.goal.context); });
                        en.goal.type = el.type(en.goal.context, *d.type);
                        if (d.kind == SDecl::Check) {
                            en.goal.term = el.term(en.goal.context, *d.term);
                            const GoalResult r = check_goal(el.checker(), en.goal);
                            if (r.error) en.error = r.error;
                        } else {
                            at_span(d.type->span, [&] {
                                el.checker().check_type(en.goal.context, en.goal.type);
                            });
                        }
                    } catch (const CheckError& e) {
                        en.error = e;
                    }
                    prog.entries.push_back(std::move(en));
                    prog.order.push_back({d.kind, prog.entries.size() - 1});
                    break;
                }
            }
        } catch (const CheckError& e) {
            failed(d, e);
        }
    }
    return prog;
}

Elaborated elaborate_goal(const Program& prog, const SGoal& goal) {
    const Elab el(prog.sig, nullptr);
    Elaborated out;
    out.context = el.context(goal.context);
    el.checker().check_context(out.context);
    if (goal.type) {
        try {
            out.type = el.type(out.context, *goal.type);
            el.checker().check_type(out.context, out.type);
            return out;
        } catch (const CheckError&) {
            if (!goal.term) throw;
        }
    }
    out.term = el.term(out.context, *goal.term);
    out.type = el.checker().infer(out.context, out.term);
    return out;
}

}  // namespace dirtt
