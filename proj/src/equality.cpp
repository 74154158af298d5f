#include "dirtt/equality.hpp"

#include <utility>

namespace dirtt {

Modality mod_compose(Modality outer, Modality inner) {
    // (X♭)♭ = X♭, (X⁻)⁻ = X and (X⁻)♭ = (X♭)⁻: flats absorb, negations cancel.
    return {outer.flat || inner.flat, outer.neg != inner.neg};
}

bool is_core(const Type& nf) {
    return nf->kind == TypeKind::Hom || (nf->kind == TypeKind::Base && nf->mod.flat);
}

Type unflat(const Type& nf) {
    if (nf->kind == TypeKind::Base && nf->mod.flat)
        return base(nf->name, {false, nf->mod.neg}, nf->span);
    return nf;
}

namespace {

class Normalizer {
public:
    Normalizer(const Signature* sig, NormStats* stats) : sig_(sig), stats_(stats) {}

    Type type(const Type& t) {
        switch (t->kind) {
            case TypeKind::Base:
                return t;
            case TypeKind::RawNeg:
                step();
                return apply(type(t->inner), Modality::negation());
            case TypeKind::RawFlat:
                step();
                return apply(type(t->inner), Modality::core());
            case TypeKind::Hom: {
                Type carrier = type(t->inner);
                Term dom = t->dom;
                Term cod = t->cod;
                if (head_neg(carrier)) {
                    // hom_{A⁻}(z, x) ≡ hom_A(x, z)
                    step();
                    std::swap(dom, cod);
                    carrier = apply(carrier, Modality::negation());
                }
                const bool core = is_core(carrier);
                dom = core ? strip_idem(dom) : term(dom);
                cod = core ? strip_idem(cod) : term(cod);
                Modality m = t->mod;
                if (m.flat) {
                    step();  // hom(x,z)♭ ≡ hom(x,z)
                    m.flat = false;
                }
                return hom(carrier, dom, cod, m, t->span);
            }
        }
        return t;
    }

    Term term(const Term& t) {
        switch (t->kind) {
            case TermKind::VarN:
            case TermKind::VarP:
                return t;
            case TermKind::InjPlus:
            case TermKind::InjMinus: {
                Term body = term(t->args[0]);
                const TermKind elim =
                    t->kind == TermKind::InjPlus ? TermKind::CoePlus : TermKind::CoeMinus;
                if (body->kind == elim && is_polar_closed(body->args[0])) {
                    step();  // Core η±
                    return body->args[0];
                }
                return rebuild(t, {body});
            }
            case TermKind::CoePlus:
            case TermKind::CoeMinus: {
                // Collapse the syntactic chain first: an inner coercion under
                // another one sits at a core type and is read idempotently,
                // so it must not take part in a β-step of its own.
                bool plus = t->kind == TermKind::CoePlus;
                Term body = t->args[0];
                while (body->kind == TermKind::CoePlus || body->kind == TermKind::CoeMinus) {
                    step();
                    plus = (plus == (body->kind == TermKind::CoePlus));
                    body = body->args[0];
                }
                return coercion(plus, term(body), t->span);
            }
            case TermKind::Jpm:
                return jpm_node(t);
            case TermKind::Refl:
                return rebuild(t, {strip_idem(t->args[0])});
            case TermKind::Axiom: {
                // arguments sit at core types
                std::vector<Term> args;
                args.reserve(t->args.size());
                for (const auto& a : t->args) args.push_back(strip_idem(a));
                if (sig_) {
                    const ConstantDecl* c = sig_->find_constant(t->name);
                    if (c && c->is_definition() && c->telescope.size() == args.size()) {
                        step();
                        return term(instantiate(c->body, args));
                    }
                }
                return rebuild(t, std::move(args));
            }
            default: {
                std::vector<Term> args;
                args.reserve(t->args.size());
                for (const auto& a : t->args) args.push_back(term(a));
                return rebuild(t, std::move(args));
            }
        }
    }

private:
    void step() {
        if (stats_) ++stats_->steps;
    }

    static bool head_neg(const Type& nf) {
        return (nf->kind == TypeKind::Base || nf->kind == TypeKind::Hom) && nf->mod.neg;
    }

    Type apply(const Type& nf, Modality m) {
        if (nf->kind == TypeKind::Base) return base(nf->name, mod_compose(m, nf->mod), nf->span);
        // Hom heads: ♭ is absorbed, ⁻ is kept (stuck).
        Modality r = mod_compose(m, nf->mod);
        r.flat = false;
        return hom(nf->inner, nf->dom, nf->cod, r, nf->span);
    }

    // A term sitting at a core type C (hom endpoints over a core carrier,
    // refl and axiom arguments, J anchors): a ⟨+⟩ at its head is the
    // identity, since C♭ ≡ C. Stripped before and after normalizing the body
    // so that the ⟨+⟩⟨+♭⟩ redex never fires against the ♭♭-reading.
    Term strip_idem(Term t) {
        while (t->kind == TermKind::CoePlus) {
            step();
            t = t->args[0];
        }
        t = term(t);
        while (t->kind == TermKind::CoePlus) {
            step();
            t = t->args[0];
        }
        return t;
    }

    Term coercion(bool plus, Term body, Span span) {
        for (;;) {
            if (plus && body->kind == TermKind::InjPlus) {
                step();  // Core β+
                return body->args[0];
            }
            if (!plus && body->kind == TermKind::InjMinus) {
                step();  // Core β-
                return body->args[0];
            }
            if (body->kind == TermKind::CoePlus || body->kind == TermKind::CoeMinus) {
                // A coercion applied to a coercion types only when the inner
                // result is core, where the inner step is an identity.
                step();
                const bool inner_plus = body->kind == TermKind::CoePlus;
                plus = (plus == inner_plus);
                body = body->args[0];
                continue;
            }
            return plus ? coe_plus(body, span) : coe_minus(body, span);
        }
    }

    Term jpm_node(const Term& t) {
        Type carrier = type(t->carrier);
        Type motive = type(t->motive);
        std::vector<Term> args;
        for (std::size_t i = 0; i < t->args.size(); ++i)
            args.push_back(i == kJAnchor ? strip_idem(t->args[i]) : term(t->args[i]));
        const Term& anchor = args[kJAnchor];
        const auto is_refl_anchor = [&](const Term& p) {
            return p->kind == TermKind::Refl && equal(p->args[0], anchor);
        };
        if (is_refl_anchor(args[kJu]) && is_refl_anchor(args[kJv]) &&
            equal(args[kJx], Normalizer(sig_, nullptr).coercion(false, anchor, {})) &&
            equal(args[kJz], Normalizer(sig_, nullptr).coercion(true, anchor, {}))) {
            step();  // Hom β±
            return term(subst_neutral(args[kJBase], 0, anchor));
        }
        return jpm(carrier, motive, args[kJBase], args[kJAnchor], args[kJx], args[kJz], args[kJu],
                   args[kJv], t->span);
    }

    static Term rebuild(const Term& t, std::vector<Term> args) {
        TermNode n = *t;
        n.args = std::move(args);
        return std::make_shared<const TermNode>(std::move(n));
    }

    const Signature* sig_;
    NormStats* stats_;
};

}  // namespace

Type normalize_type(const Signature* sig, const Type& t, NormStats* stats) {
    return Normalizer(sig, stats).type(t);
}

Term normalize_term(const Signature* sig, const Term& t, NormStats* stats) {
    return Normalizer(sig, stats).term(t);
}

bool type_equal(const Signature* sig, const Type& a, const Type& b) {
    return equal(normalize_type(sig, a), normalize_type(sig, b));
}

bool term_equal(const Signature* sig, const Term& a, const Term& b) {
    return equal(normalize_term(sig, a), normalize_term(sig, b));
}

}  // namespace dirtt
