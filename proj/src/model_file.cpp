#include <cctype>
#include <set>

#include "dirtt/equality.hpp"
#include "dirtt/model.hpp"

namespace dirtt {

namespace {

struct Tok {
    std::string text;  // empty at end of input
    Span span;
};

std::vector<Tok> lex_model(const std::string& s, int first_line) {
    std::vector<Tok> out;
    int line = first_line, col = 1;
    std::size_t i = 0;
    const auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    const auto word = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
    };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
        } else if (s.compare(i, 2, "--") == 0) {
            while (i < s.size() && s[i] != '\n') advance(1);
        } else if (s.compare(i, 2, "->") == 0) {
            out.push_back({"->", {line, col}});
            advance(2);
        } else if (word(c)) {
            std::size_t j = i;
            while (j < s.size() && word(s[j])) ++j;
            out.push_back({s.substr(i, j - i), {line, col}});
            advance(j - i);
        } else if (std::string("{}[]();:,=").find(c) != std::string::npos) {
            out.push_back({std::string(1, c), {line, col}});
            advance(1);
        } else {
            throw ModelError(std::to_string(line) + ":" + std::to_string(col) +
                             ": unexpected character '" + std::string(1, c) + "'");
        }
    }
    out.push_back({"", {line, col}});
    return out;
}

std::string where(Span s) { return std::to_string(s.line) + ":" + std::to_string(s.col); }

class ModelParser {
public:
    explicit ModelParser(std::vector<Tok> toks) : toks_(std::move(toks)) {}

    ModelFile file() {
        ModelFile f;
        while (!peek().text.empty()) {
            if (peek().text == "preorder") {
                preorder(f);
            } else if (peek().text == "assign") {
                assign(f);
            } else {
                fail("expected 'preorder' or 'assign'");
            }
        }
        return f;
    }

private:
    const Tok& peek() const { return toks_[pos_]; }
    Tok next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const {
        const std::string got = peek().text.empty() ? "end of input" : "'" + peek().text + "'";
        throw ModelError(where(peek().span) + ": " + msg + ", got " + got);
    }
    void expect(const std::string& t) {
        if (peek().text != t) fail("expected '" + t + "'");
        next();
    }
    bool accept(const std::string& t) {
        if (peek().text != t) return false;
        next();
        return true;
    }
    std::string name() {
        const std::string& t = peek().text;
        if (t.empty() || !(std::isalnum(static_cast<unsigned char>(t[0])) || t[0] == '_'))
            fail("expected a name");
        return next().text;
    }

    void preorder(ModelFile& f) {
        const Span at = next().span;
        const std::string n = name();
        expect("{");
        FinPreorder p;
        bool has_elems = false, has_le = false;
        while (!accept("}")) {
            const std::string field = name();
            expect(":");
            expect("[");
            if (field == "elems") {
                has_elems = true;
                if (peek().text != "]") {
                    p.elems.push_back(name());
                    while (accept(",")) p.elems.push_back(name());
                }
            } else if (field == "le") {
                has_le = true;
                if (peek().text != "]") {
                    p.le.push_back(row());
                    while (accept(",")) p.le.push_back(row());
                }
            } else {
                throw ModelError(where(at) + ": unknown preorder field '" + field + "'");
            }
            expect("]");
            accept(";");
        }
        accept(";");
        if (!has_elems || !has_le)
            throw ModelError(where(at) + ": preorder " + n + " needs 'elems' and 'le'");
        std::set<std::string> seen;
        for (const auto& e : p.elems)
            if (!seen.insert(e).second)
                throw ModelError(where(at) + ": preorder " + n + " repeats element " + e);
        if (auto v = validate_preorder(p))
            throw ModelError(where(at) + ": preorder " + n + ": " + *v);
        if (f.preorders.count(n)) throw ModelError(where(at) + ": preorder " + n + " redefined");
        f.preorders[n] = p;
        f.preorder_order.push_back(n);
    }

    std::vector<bool> row() {
        expect("[");
        std::vector<bool> r;
        if (peek().text != "]") {
            r.push_back(boolean());
            while (accept(",")) r.push_back(boolean());
        }
        expect("]");
        return r;
    }

    bool boolean() {
        const std::string t = peek().text;
        if (t == "1" || t == "true") return next(), true;
        if (t == "0" || t == "false") return next(), false;
        fail("expected 0, 1, true or false");
    }

    void assign(ModelFile& f) {
        next();
        ModelFile::Assign a;
        a.span = peek().span;
        a.name = name();
        expect("=");
        if (accept("table")) {
            a.is_table = true;
            expect("{");
            while (!accept("}")) {
                expect("(");
                std::vector<std::string> pats;
                if (peek().text != ")") {
                    pats.push_back(name());
                    while (accept(",")) pats.push_back(name());
                }
                expect(")");
                expect("->");
                a.rows.push_back({pats, name()});
                expect(";");
            }
        } else {
            a.value = name();
        }
        expect(";");
        f.assigns.push_back(std::move(a));
    }

    std::vector<Tok> toks_;
    std::size_t pos_ = 0;
};

int element(const FinPreorder& p, const std::string& n, Span at, const std::string& what) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.elems[i] == n) return static_cast<int>(i);
    throw ModelError(where(at) + ": '" + n + "' is not an element of " + what);
}

// Every argument tuple over the given preorders, in lexicographic order.
template <class F>
void for_each_tuple(const std::vector<FinPreorder>& ps, F&& f) {
    std::vector<int> t(ps.size(), 0);
    for (const auto& p : ps)
        if (p.size() == 0) return;
    for (;;) {
        f(t);
        std::size_t k = 0;
        while (k < t.size() && static_cast<std::size_t>(++t[k]) == ps[k].size()) t[k++] = 0;
        if (k == t.size()) return;
    }
}

std::string show(const std::string& name, const std::vector<FinPreorder>& ps,
                 const std::vector<int>& t) {
    std::string s = name + "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ", " : "") + ps[i].elems[t[i]];
    return s + ")";
}

}  // namespace

ModelFile parse_model(const std::string& text, int first_line) {
    return ModelParser(lex_model(text, first_line)).file();
}

ModelAssignment bind_model(const ModelFile& file, const Signature& sig) {
    ModelAssignment m;
    const auto preorder = [&](const std::string& n, Span at) -> const FinPreorder& {
        const auto it = file.preorders.find(n);
        if (it == file.preorders.end()) throw ModelError(where(at) + ": unknown preorder " + n);
        return it->second;
    };
    std::map<std::string, const ModelFile::Assign*> by_name;
    for (const auto& a : file.assigns) {
        if (by_name.count(a.name))
            throw ModelError(where(a.span) + ": '" + a.name + "' assigned twice");
        by_name[a.name] = &a;
    }
    for (const auto& b : sig.base_types) {
        auto it = by_name.find(b);
        if (it == by_name.end()) it = by_name.find("default");
        if (it == by_name.end()) throw ModelError("no preorder assigned to type '" + b + "'");
        if (it->second->is_table)
            throw ModelError(where(it->second->span) + ": a type needs a preorder, not a table");
        m.bases[b] = preorder(it->second->value, it->second->span);
    }
    const Interpreter interp(sig, m);

    const auto bind_table = [&](const ModelFile::Assign& a, const std::vector<FinPreorder>& args,
                                const FinPreorder& result) {
        Table t;
        t.arity = args.size();
        if (!a.is_table) {
            if (!args.empty())
                throw ModelError(where(a.span) + ": '" + a.name + "' takes arguments; use a table");
            t.rows.push_back({{}, element(result, a.value, a.span, "the result type")});
        }
        for (const auto& [pats, res] : a.rows) {
            if (pats.size() != args.size())
                throw ModelError(where(a.span) + ": row for '" + a.name + "' has " +
                                 std::to_string(pats.size()) + " patterns, expected " +
                                 std::to_string(args.size()));
            std::vector<int> p;
            for (std::size_t i = 0; i < pats.size(); ++i)
                p.push_back(pats[i] == "_" ? -1
                                           : element(args[i], pats[i], a.span,
                                                     "argument " + std::to_string(i + 1)));
            t.rows.push_back({p, element(result, res, a.span, "the result type")});
        }
        // total and monotone in each argument
        for_each_tuple(args, [&](const std::vector<int>& x) {
            const auto fx = t.lookup(x);
            if (!fx)
                throw ModelError(where(a.span) + ": no row for " + show(a.name, args, x));
            for (std::size_t i = 0; i < x.size(); ++i)
                for (std::size_t v = 0; v < args[i].size(); ++v) {
                    if (!args[i].leq(x[i], v)) continue;
                    std::vector<int> y = x;
                    y[i] = static_cast<int>(v);
                    const auto fy = t.lookup(y);
                    if (fy && !result.leq(*fx, *fy))
                        throw ModelError(where(a.span) + ": '" + a.name +
                                         "' is not monotone: " + show(a.name, args, x) + " vs " +
                                         show(a.name, args, y));
                }
        });
        m.tables[a.name] = t;
    };

    std::set<std::string> used;
    for (const auto& b : sig.base_types) used.insert(b);
    used.insert("default");
    for (const auto& s : sig.symbols) {
        const auto it = by_name.find(s.name);
        if (it == by_name.end()) throw ModelError("no table assigned to symbol '" + s.name + "'");
        std::vector<FinPreorder> args;
        for (const auto& a : s.arg_types) args.push_back(m.bases.at(a));
        bind_table(*it->second, args, m.bases.at(s.result));
        used.insert(s.name);
    }
    for (const auto& c : sig.constants) {
        if (c.is_definition()) continue;
        if (normalize_type(&sig, c.type)->kind == TypeKind::Hom) continue;
        const auto it = by_name.find(c.name);
        if (it == by_name.end()) throw ModelError("no table assigned to axiom '" + c.name + "'");
        std::vector<FinPreorder> args;
        for (const auto& t : c.telescope) args.push_back(interp.fiber(t, {}));
        bind_table(*it->second, args, interp.fiber(c.type, {}));
        used.insert(c.name);
    }
    for (const auto& a : file.assigns)
        if (!used.count(a.name)) m.unused.push_back(a.name);

    // hom axioms must be inhabited at every point of their telescope
    for (const auto& c : sig.constants) {
        if (c.is_definition()) continue;
        if (normalize_type(&sig, c.type)->kind != TypeKind::Hom) continue;
        Context tele;
        tele.neutral = c.telescope;
        const SemContext sc = interp.interp_ctx(tele);
        for (const auto& env : sc.points)
            if (interp.fiber(c.type, env).size() == 0) {
                std::string at;
                for (std::size_t i = 0; i < env.neutral.size(); ++i) {
                    const std::string n =
                        i < c.telescope_names.size() ? c.telescope_names[i] : "#" + std::to_string(i);
                    at += (i ? ", " : "") + n + "=" + std::to_string(env.neutral[i]);
                }
                throw ModelError("axiom '" + c.name + "' is not inhabited at (" + at + ")");
            }
    }
    return m;
}

}  // namespace dirtt
