#include <algorithm>

#include "dirtt/frontend.hpp"

namespace dirtt {

namespace {

struct Names {
    std::vector<std::string> neutral, polar;
    const Signature* sig = nullptr;

    bool taken(const std::string& n) const {
        return std::find(neutral.begin(), neutral.end(), n) != neutral.end() ||
               std::find(polar.begin(), polar.end(), n) != polar.end() || is_reserved(n) ||
               (sig && sig->has_name(n));
    }

    /// `want` if free, else the first free `want1`, `want2`, ...
    std::string fresh(std::string want) const {
        if (want.empty()) want = "x";
        if (!taken(want)) return want;
        for (int i = 1;; ++i) {
            const std::string n = want + std::to_string(i);
            if (!taken(n)) return n;
        }
    }

    Names no_polar() const { return {neutral, {}, sig}; }
};

std::string name_at(const std::vector<std::string>& zone, std::size_t i, const char* tag) {
    if (i < zone.size()) return zone[zone.size() - 1 - i];
    return std::string("#") + tag + std::to_string(i);
}

std::string mod_suffix(Modality m) { return std::string(m.flat ? "^b" : "") + (m.neg ? "^-" : ""); }

std::string ty(const Type& t, const Names& env);
std::string tm(const Term& t, const Names& env);

// A type in a position that takes postfix modalities or is a Hom carrier.
std::string ty_atom(const Type& t, const Names& env) {
    if (t->kind == TypeKind::Hom) return "(" + ty(t, env) + ")";
    return ty(t, env);
}

std::string ty(const Type& t, const Names& env) {
    switch (t->kind) {
        case TypeKind::Base:
            return t->name + mod_suffix(t->mod);
        case TypeKind::RawNeg:
            return ty_atom(t->inner, env) + "^-";
        case TypeKind::RawFlat:
            return ty_atom(t->inner, env) + "^b";
        case TypeKind::Hom: {
            const std::string h = "Hom " + ty_atom(t->inner, env) + " (" + tm(t->dom, env) + ", " +
                                  tm(t->cod, env) + ")";
            if (t->mod == Modality::id()) return h;
            return "(" + h + ")" + mod_suffix(t->mod);
        }
    }
    return "?";
}

std::string args(const std::vector<Term>& as, const Names& env, std::size_t from = 0) {
    std::string s = "(";
    for (std::size_t i = from; i < as.size(); ++i) s += (i > from ? ", " : "") + tm(as[i], env);
    return s + ")";
}

std::string tm(const Term& t, const Names& env) {
    switch (t->kind) {
        case TermKind::VarP:
            return name_at(env.polar, t->index, "p");
        case TermKind::VarN:
            return name_at(env.neutral, t->index, "n");
        case TermKind::InjPlus:
            return "inj+ " + tm(t->args[0], env);
        case TermKind::InjMinus:
            return "inj- " + tm(t->args[0], env);
        case TermKind::CoePlus:
            return "coe+ " + tm(t->args[0], env);
        case TermKind::CoeMinus:
            return "coe- " + tm(t->args[0], env);
        case TermKind::Refl:
            return "refl " + tm(t->args[0], env);
        case TermKind::Fwd:
            return "fwd " + tm(t->args[0], env);
        case TermKind::Back:
            return "back " + tm(t->args[0], env);
        case TermKind::Uhp:
            return "UHP" + args(t->args, env);
        case TermKind::Sym:
            return t->args.empty() ? t->name : t->name + args(t->args, env);
        case TermKind::Axiom:
            return t->args.empty() ? t->name : t->name + " @ " + args(t->args, env);
        case TermKind::Jpm: {
            const std::string y = env.fresh("y");
            Names inner = env.no_polar();
            inner.neutral.push_back(y);
            Names mot = inner;
            std::vector<std::string> zone;
            for (const char* want : {"x", "z", "u", "v"}) {
                Names probe = env;
                probe.neutral.push_back(y);
                for (const auto& n : zone) probe.polar.push_back(n);
                zone.push_back(probe.fresh(want));
            }
            mot.polar = zone;
            std::string s = "J[" + ty(t->carrier, env) + "](" + y + "; " + zone[0] + ", " +
                            zone[1] + ", " + zone[2] + ", " + zone[3] + "){" + ty(t->motive, mot) +
                            "; " + tm(t->args[kJBase], inner) + "}(" + tm(t->args[kJAnchor], env) +
                            "; ";
            for (std::size_t i = kJx; i <= kJv; ++i) s += (i > kJx ? ", " : "") + tm(t->args[i], env);
            return s + ")";
        }
    }
    return "?";
}

// Unique names for a context; returns the bracketed text and the final env.
std::pair<std::string, Names> context_text(const Context& ctx, const Signature* sig) {
    Names env;
    env.sig = sig;
    std::string s;
    for (std::size_t i = 0; i < ctx.neutral.size(); ++i) {
        const std::string want = i < ctx.neutral_names.size() ? ctx.neutral_names[i] : "a";
        const std::string n = env.fresh(want);
        s += (i ? ", " : "") + n + " :: " + ty(ctx.neutral[i], env);
        env.neutral.push_back(n);
    }
    for (std::size_t i = 0; i < ctx.polar.size(); ++i) {
        const std::string want = i < ctx.polar_names.size() ? ctx.polar_names[i] : "p";
        const std::string n = env.fresh(want);
        s += (i ? ", " : ctx.neutral.empty() ? "| " : " | ") + n + " : " + ty(ctx.polar[i], env);
        env.polar.push_back(n);
    }
    return {"[" + s + "]", env};
}

std::string decl_head(const std::string& kw, const std::string& name, const Context& ctx,
                      const Signature* sig, Names* env) {
    auto [text, e] = context_text(ctx, sig);
    *env = e;
    return kw + " " + name + (ctx.neutral.empty() && ctx.polar.empty() ? "" : " " + text);
}

}  // namespace

std::string print(const Type& t, const Context& names, const Signature* sig) {
    return ty(t, context_text(names, sig).second);
}

std::string print(const Term& t, const Context& names, const Signature* sig) {
    return tm(t, context_text(names, sig).second);
}

std::string print_context(const Context& ctx, const Signature* sig) {
    return context_text(ctx, sig).first;
}

std::string print_program(const Program& prog) {
    const Signature* sig = &prog.sig;
    std::string out;
    Names env;
    for (const auto& [kind, i] : prog.order) {
        switch (kind) {
            case SDecl::TypeDecl:
                out += "type " + prog.sig.base_types[i] + ";\n";
                break;
            case SDecl::Func: {
                const SymbolDecl& f = prog.sig.symbols[i];
                out += "func " + f.name;
                if (!f.arg_types.empty()) {
                    out += " (";
                    for (std::size_t k = 0; k < f.arg_types.size(); ++k)
                        out += (k ? ", " : "") + f.arg_types[k];
                    out += ")";
                }
                out += " : " + f.result + ";\n";
                break;
            }
            case SDecl::Axiom:
            case SDecl::Def: {
                const ConstantDecl& c = prog.sig.constants[i];
                Context tele;
                tele.neutral = c.telescope;
                tele.neutral_names = c.telescope_names;
                // the head fills env, so it must be built first
                out += decl_head(c.is_definition() ? "def" : "axiom", c.name, tele, sig, &env);
                out += " : " + ty(c.type, env);
                if (c.is_definition()) out += " := " + tm(c.body, env);
                out += ";\n";
                break;
            }
            case SDecl::Check:
            case SDecl::Refute: {
                const Entry& e = prog.entries[i];
                if (e.error) break;
                const bool check = kind == SDecl::Check;
                out += decl_head(check ? "check" : "refute", e.goal.name, e.goal.context, sig, &env);
                out += " : " + ty(e.goal.type, env);
                out += check ? " := " + tm(e.goal.term, env) : " in \"" + e.model + "\"";
                out += ";\n";
                break;
            }
        }
    }
    return out;
}

}  // namespace dirtt
