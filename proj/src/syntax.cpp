#include "dirtt/syntax.hpp"

#include <functional>
#include <stdexcept>
#include <utility>

namespace dirtt {

Context Context::with_neutral(Type t, std::string name) const {
    Context c = *this;
    c.neutral.push_back(std::move(t));
    c.neutral_names.resize(neutral.size());
    c.neutral_names.push_back(std::move(name));
    return c;
}

Context Context::with_polar(Type t, std::string name) const {
    Context c = *this;
    c.polar.push_back(std::move(t));
    c.polar_names.resize(polar.size());
    c.polar_names.push_back(std::move(name));
    return c;
}

Context Context::without_polar() const {
    Context c = *this;
    c.polar.clear();
    c.polar_names.clear();
    return c;
}

namespace {

Type make_type(TypeNode n) { return std::make_shared<const TypeNode>(std::move(n)); }
Term make_term(TermNode n) { return std::make_shared<const TermNode>(std::move(n)); }

Term unary(TermKind k, Term t, Span span) {
    TermNode n{k};
    n.args = {std::move(t)};
    n.span = span;
    return make_term(std::move(n));
}

}  // namespace

Type base(std::string name, Modality mod, Span span) {
    TypeNode n{TypeKind::Base};
    n.name = std::move(name);
    n.mod = mod;
    n.span = span;
    return make_type(std::move(n));
}

Type hom(Type carrier, Term dom, Term cod, Modality mod, Span span) {
    TypeNode n{TypeKind::Hom};
    n.inner = std::move(carrier);
    n.dom = std::move(dom);
    n.cod = std::move(cod);
    n.mod = mod;
    n.span = span;
    return make_type(std::move(n));
}

Type raw_neg(Type inner, Span span) {
    TypeNode n{TypeKind::RawNeg};
    n.inner = std::move(inner);
    n.span = span;
    return make_type(std::move(n));
}

Type raw_flat(Type inner, Span span) {
    TypeNode n{TypeKind::RawFlat};
    n.inner = std::move(inner);
    n.span = span;
    return make_type(std::move(n));
}

Term var_p(std::size_t i, Span span) {
    TermNode n{TermKind::VarP};
    n.index = i;
    n.span = span;
    return make_term(std::move(n));
}

Term var_n(std::size_t i, Span span) {
    TermNode n{TermKind::VarN};
    n.index = i;
    n.span = span;
    return make_term(std::move(n));
}

Term inj_plus(Term t, Span span) { return unary(TermKind::InjPlus, std::move(t), span); }
Term inj_minus(Term t, Span span) { return unary(TermKind::InjMinus, std::move(t), span); }
Term coe_plus(Term t, Span span) { return unary(TermKind::CoePlus, std::move(t), span); }
Term coe_minus(Term t, Span span) { return unary(TermKind::CoeMinus, std::move(t), span); }
Term refl(Term e, Span span) { return unary(TermKind::Refl, std::move(e), span); }
Term fwd(Term i, Span span) { return unary(TermKind::Fwd, std::move(i), span); }
Term back(Term i, Span span) { return unary(TermKind::Back, std::move(i), span); }

Term uhp(Term p, Term q, Span span) {
    TermNode n{TermKind::Uhp};
    n.args = {std::move(p), std::move(q)};
    n.span = span;
    return make_term(std::move(n));
}

Term sym_app(std::string name, std::vector<Term> args, Span span) {
    TermNode n{TermKind::Sym};
    n.name = std::move(name);
    n.args = std::move(args);
    n.span = span;
    return make_term(std::move(n));
}

Term axiom_ref(std::string name, std::vector<Term> args, Span span) {
    TermNode n{TermKind::Axiom};
    n.name = std::move(name);
    n.args = std::move(args);
    n.span = span;
    return make_term(std::move(n));
}

Term jpm(Type carrier, Type motive, Term base_term, Term anchor, Term x, Term z, Term u, Term v,
         Span span) {
    TermNode n{TermKind::Jpm};
    n.carrier = std::move(carrier);
    n.motive = std::move(motive);
    n.args = {std::move(base_term), std::move(anchor), std::move(x),
              std::move(z),         std::move(u),      std::move(v)};
    n.span = span;
    return make_term(std::move(n));
}

Term with_span(const Term& t, Span span) {
    TermNode n = *t;
    n.span = span;
    return make_term(std::move(n));
}

Type with_span(const Type& t, Span span) {
    TypeNode n = *t;
    n.span = span;
    return make_type(std::move(n));
}

bool equal(const Term& a, const Term& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->index != b->index || a->name != b->name ||
        a->args.size() != b->args.size())
        return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i])) return false;
    if (a->kind == TermKind::Jpm)
        return equal(a->carrier, b->carrier) && equal(a->motive, b->motive);
    return true;
}

bool equal(const Type& a, const Type& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case TypeKind::Base:
            return a->name == b->name && a->mod == b->mod;
        case TypeKind::Hom:
            return a->mod == b->mod && equal(a->inner, b->inner) && equal(a->dom, b->dom) &&
                   equal(a->cod, b->cod);
        case TypeKind::RawNeg:
        case TypeKind::RawFlat:
            return equal(a->inner, b->inner);
    }
    return false;
}

std::size_t node_count(const Type& t) {
    switch (t->kind) {
        case TypeKind::Base:
            return 1;
        case TypeKind::Hom:
            return 1 + node_count(t->inner) + node_count(t->dom) + node_count(t->cod);
        case TypeKind::RawNeg:
        case TypeKind::RawFlat:
            return 1 + node_count(t->inner);
    }
    return 1;
}

std::size_t node_count(const Term& t) {
    std::size_t n = 1;
    for (const auto& a : t->args) n += node_count(a);
    if (t->kind == TermKind::Jpm) n += node_count(t->carrier) + node_count(t->motive);
    return n;
}

// ---------------------------------------------------------------------------
// Generic variable traversal.

namespace {

struct VarMap {
    // depth = neutral binders crossed since the root of the traversal.
    std::function<Term(std::size_t depth, const Term& var)> neutral;
    std::function<Term(const Term& var)> polar;
};

Term map_vars(const Term& t, const VarMap& m, std::size_t depth, bool polar_live);

Type map_vars(const Type& t, const VarMap& m, std::size_t depth, bool polar_live) {
    switch (t->kind) {
        case TypeKind::Base:
            return t;
        case TypeKind::Hom: {
            TypeNode n = *t;
            n.inner = map_vars(t->inner, m, depth, polar_live);
            n.dom = map_vars(t->dom, m, depth, polar_live);
            n.cod = map_vars(t->cod, m, depth, polar_live);
            return make_type(std::move(n));
        }
        case TypeKind::RawNeg:
        case TypeKind::RawFlat: {
            TypeNode n = *t;
            n.inner = map_vars(t->inner, m, depth, polar_live);
            return make_type(std::move(n));
        }
    }
    return t;
}

Term map_vars(const Term& t, const VarMap& m, std::size_t depth, bool polar_live) {
    switch (t->kind) {
        case TermKind::VarN:
            return m.neutral ? m.neutral(depth, t) : t;
        case TermKind::VarP:
            return (polar_live && m.polar) ? m.polar(t) : t;
        case TermKind::Jpm: {
            TermNode n = *t;
            n.carrier = map_vars(t->carrier, m, depth, polar_live);
            n.motive = map_vars(t->motive, m, depth + 1, false);
            n.args[kJBase] = map_vars(t->args[kJBase], m, depth + 1, false);
            for (std::size_t i = kJAnchor; i < n.args.size(); ++i)
                n.args[i] = map_vars(t->args[i], m, depth, polar_live);
            return make_term(std::move(n));
        }
        default: {
            if (t->args.empty()) return t;
            TermNode n = *t;
            for (auto& a : n.args) a = map_vars(a, m, depth, polar_live);
            return make_term(std::move(n));
        }
    }
}

template <class T>
T do_weaken_polar(const T& t, std::size_t amount, std::size_t cutoff) {
    if (amount == 0) return t;
    VarMap m;
    m.polar = [&](const Term& v) {
        return v->index >= cutoff ? var_p(v->index + amount, v->span) : v;
    };
    return map_vars(t, m, 0, true);
}

template <class T>
T do_weaken_neutral(const T& t, std::size_t amount, std::size_t cutoff) {
    if (amount == 0) return t;
    VarMap m;
    m.neutral = [&](std::size_t depth, const Term& v) {
        return v->index >= cutoff + depth ? var_n(v->index + amount, v->span) : v;
    };
    return map_vars(t, m, 0, true);
}

template <class T>
T do_subst_polar(const T& t, const std::vector<Term>& args) {
    const std::size_t k = args.size();
    if (k == 0) return t;
    VarMap m;
    m.polar = [&](const Term& v) {
        if (v->index < k) return args[k - 1 - v->index];
        return var_p(v->index - k, v->span);
    };
    return map_vars(t, m, 0, true);
}

template <class T>
T do_subst_neutral(const T& t, std::size_t index, const Term& e) {
    VarMap m;
    m.neutral = [&](std::size_t depth, const Term& v) {
        if (v->index == index + depth) return weaken_neutral(e, depth, 0);
        if (v->index > index + depth) return var_n(v->index - 1, v->span);
        return v;
    };
    return map_vars(t, m, 0, true);
}

template <class T>
T do_instantiate(const T& t, const std::vector<Term>& args) {
    const std::size_t k = args.size();
    if (k == 0) return t;
    VarMap m;
    m.neutral = [&](std::size_t depth, const Term& v) {
        if (v->index < depth) return v;
        const std::size_t j = v->index - depth;
        if (j < k) return weaken_neutral(args[k - 1 - j], depth, 0);
        return var_n(v->index - k, v->span);
    };
    return map_vars(t, m, 0, true);
}

template <class T>
T do_rename_polar(const T& t, const std::vector<std::size_t>& map) {
    VarMap m;
    m.polar = [&](const Term& v) {
        if (v->index >= map.size()) throw std::logic_error("rename_polar: index out of range");
        return var_p(map[v->index], v->span);
    };
    return map_vars(t, m, 0, true);
}

template <class T>
bool do_polar_closed(const T& t) {
    bool closed = true;
    VarMap m;
    m.polar = [&](const Term& v) {
        closed = false;
        return v;
    };
    map_vars(t, m, 0, true);
    return closed;
}

template <class T>
bool do_mentions_neutral(const T& t, std::size_t index) {
    bool found = false;
    VarMap m;
    m.neutral = [&](std::size_t depth, const Term& v) {
        if (v->index == index + depth) found = true;
        return v;
    };
    map_vars(t, m, 0, true);
    return found;
}

}  // namespace

Term weaken_polar(const Term& t, std::size_t a, std::size_t c) { return do_weaken_polar(t, a, c); }
Type weaken_polar(const Type& t, std::size_t a, std::size_t c) { return do_weaken_polar(t, a, c); }
Term weaken_neutral(const Term& t, std::size_t a, std::size_t c) { return do_weaken_neutral(t, a, c); }
Type weaken_neutral(const Type& t, std::size_t a, std::size_t c) { return do_weaken_neutral(t, a, c); }
Term subst_polar(const Term& t, const std::vector<Term>& args) { return do_subst_polar(t, args); }
Type subst_polar(const Type& t, const std::vector<Term>& args) { return do_subst_polar(t, args); }
Term subst_neutral(const Term& t, std::size_t i, const Term& e) { return do_subst_neutral(t, i, e); }
Type subst_neutral(const Type& t, std::size_t i, const Term& e) { return do_subst_neutral(t, i, e); }
Term instantiate(const Term& t, const std::vector<Term>& args) { return do_instantiate(t, args); }
Type instantiate(const Type& t, const std::vector<Term>& args) { return do_instantiate(t, args); }
Term rename_polar(const Term& t, const std::vector<std::size_t>& m) { return do_rename_polar(t, m); }
Type rename_polar(const Type& t, const std::vector<std::size_t>& m) { return do_rename_polar(t, m); }
bool is_polar_closed(const Term& t) { return do_polar_closed(t); }
bool is_polar_closed(const Type& t) { return do_polar_closed(t); }
bool mentions_neutral(const Term& t, std::size_t i) { return do_mentions_neutral(t, i); }
bool mentions_neutral(const Type& t, std::size_t i) { return do_mentions_neutral(t, i); }

}  // namespace dirtt

namespace dirtt {

std::string debug_string(const Type& t) {
    const auto mods = [](Modality m) {
        std::string s;
        if (m.flat) s += "^b";
        if (m.neg) s += "^-";
        return s;
    };
    switch (t->kind) {
        case TypeKind::Base:
            return t->name + mods(t->mod);
        case TypeKind::Hom: {
            std::string s = "Hom (" + debug_string(t->inner) + ") (" + debug_string(t->dom) + ", " +
                             debug_string(t->cod) + ")";
            return t->mod.flat || t->mod.neg ? "(" + s + ")" + mods(t->mod) : s;
        }
        case TypeKind::RawNeg:
            return "(" + debug_string(t->inner) + ")^-";
        case TypeKind::RawFlat:
            return "(" + debug_string(t->inner) + ")^b";
    }
    return "?";
}

std::string debug_string(const Term& t) {
    const auto list = [](const std::vector<Term>& xs, std::size_t from = 0) {
        std::string s;
        for (std::size_t i = from; i < xs.size(); ++i) {
            if (i > from) s += ", ";
            s += debug_string(xs[i]);
        }
        return s;
    };
    const auto un = [&](const char* op) { return std::string(op) + " (" + debug_string(t->args[0]) + ")"; };
    switch (t->kind) {
        case TermKind::VarP: return "#p" + std::to_string(t->index);
        case TermKind::VarN: return "#n" + std::to_string(t->index);
        case TermKind::InjPlus: return un("inj+");
        case TermKind::InjMinus: return un("inj-");
        case TermKind::CoePlus: return un("coe+");
        case TermKind::CoeMinus: return un("coe-");
        case TermKind::Refl: return un("refl");
        case TermKind::Fwd: return un("fwd");
        case TermKind::Back: return un("back");
        case TermKind::Uhp: return "UHP(" + list(t->args) + ")";
        case TermKind::Sym: return t->name + "(" + list(t->args) + ")";
        case TermKind::Axiom: return t->name + " @ (" + list(t->args) + ")";
        case TermKind::Jpm:
            return "J[" + debug_string(t->carrier) + "] {" + debug_string(t->motive) + "; " +
                   debug_string(t->args[kJBase]) + "} (" + list(t->args, kJAnchor) + ")";
    }
    return "?";
}

}  // namespace dirtt
