#include <cctype>
#include <set>

#include "dirtt/frontend.hpp"

namespace dirtt {

ParseError::ParseError(const std::string& msg, Span span)
    : std::runtime_error(std::to_string(span.line) + ":" + std::to_string(span.col) + ": " + msg),
      detail_(msg),
      span_(span) {}

namespace {

const std::set<std::string> kKeywords = {
    "type", "func",  "axiom", "def",   "check",   "refute", "in",    "Hom",
    "Id",   "IdFlat", "UHP",  "J",     "J+",      "J-",    "tr+",    "tr-",   "inj+",
    "inj-", "coe+",  "coe-",  "refl",  "fwd",     "back",  "compose", "symCore", "unitL",
    "unitR",
};

const std::set<std::string> kPrefixOps = {"inj+", "inj-", "coe+", "coe-", "refl", "fwd", "back"};

struct Token {
    enum Kind { Ident, Sym, Str, End } kind;
    std::string text;
    Span span;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    const Token& peek() {
        if (!buf_) buf_ = lex();
        return *buf_;
    }
    Token next() {
        Token t = peek();
        buf_.reset();
        return t;
    }

private:
    void advance() {
        if (s_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    Token lex() {
        for (;;) {
            while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) advance();
            if (s_.compare(i_, 2, "--") != 0) break;
            while (i_ < s_.size() && s_[i_] != '\n') advance();
        }
        const Span at{line_, col_};
        if (i_ >= s_.size()) return {Token::End, "", at};
        const char c = s_[i_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string w;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) ||
                                      s_[i_] == '_' || s_[i_] == '\'')) {
                w += s_[i_];
                advance();
            }
            if ((w == "inj" || w == "coe" || w == "J" || w == "tr") && i_ < s_.size() &&
                (s_[i_] == '+' || s_[i_] == '-')) {
                w += s_[i_];
                advance();
            }
            return {Token::Ident, w, at};
        }
        for (const char* sym : {"::", ":=", "^-", "^b"})
            if (s_.compare(i_, 2, sym) == 0) {
                advance();
                advance();
                return {Token::Sym, sym, at};
            }
        if (c == '"') {
            advance();
            std::string w;
            while (i_ < s_.size() && s_[i_] != '"' && s_[i_] != '\n') {
                w += s_[i_];
                advance();
            }
            if (i_ >= s_.size() || s_[i_] != '"') throw ParseError("unterminated string", at);
            advance();
            return {Token::Str, w, at};
        }
        if (std::string(":|@.,;()[]{}").find(c) != std::string::npos) {
            advance();
            return {Token::Sym, std::string(1, c), at};
        }
        throw ParseError("unknown token '" + std::string(1, c) + "'", at);
    }

    const std::string& s_;
    std::size_t i_ = 0;
    int line_ = 1, col_ = 1;
    std::optional<Token> buf_;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    std::vector<SDecl> file() {
        std::vector<SDecl> out;
        std::set<std::string> names;
        while (lex_.peek().kind != Token::End) {
            SDecl d = decl();
            if (!names.insert(d.name).second)
                throw ParseError("duplicate declaration of '" + d.name + "'", d.span);
            out.push_back(std::move(d));
        }
        return out;
    }

    SGoal goal(bool want_type) {
        SGoal g;
        if (at("[")) g.context = context(false);
        if (want_type)
            g.type = type();
        else
            g.term = term();
        if (lex_.peek().kind != Token::End) fail("expected end of input");
        return g;
    }

private:
    bool at(const char* s) {
        const Token& t = lex_.peek();
        return t.kind != Token::End && t.text == s;
    }
    bool accept(const char* s) {
        if (!at(s)) return false;
        lex_.next();
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) {
        const Token& t = lex_.peek();
        throw ParseError(msg + (t.kind == Token::End ? ", got end of input" : ", got '" + t.text + "'"),
                         t.span);
    }
    Span expect(const char* s) {
        if (!at(s)) fail(std::string("expected '") + s + "'");
        return lex_.next().span;
    }
    std::string name() {
        const Token& t = lex_.peek();
        if (t.kind != Token::Ident || kKeywords.count(t.text)) fail("expected a name");
        return lex_.next().text;
    }

    SDecl decl() {
        const Token kw = lex_.next();
        SDecl d{};
        d.span = kw.span;
        if (kw.kind != Token::Ident) throw ParseError("expected a declaration", kw.span);
        if (kw.text == "type") {
            d.kind = SDecl::TypeDecl;
            d.name = name();
        } else if (kw.text == "func") {
            d.kind = SDecl::Func;
            d.name = name();
            if (accept("(") && !accept(")")) {
                do d.arg_types.push_back(name());
                while (accept(","));
                expect(")");
            }
            expect(":");
            d.result = name();
        } else if (kw.text == "axiom" || kw.text == "def") {
            d.kind = kw.text == "axiom" ? SDecl::Axiom : SDecl::Def;
            d.name = name();
            if (at("[")) d.context = context(true);
            expect(":");
            d.type = type();
            if (d.kind == SDecl::Def) {
                expect(":=");
                d.term = term();
            }
        } else if (kw.text == "check") {
            d.kind = SDecl::Check;
            d.name = name();
            if (at("[")) d.context = context(false);
            expect(":");
            d.type = type();
            expect(":=");
            d.term = term();
        } else if (kw.text == "refute") {
            d.kind = SDecl::Refute;
            d.name = name();
            if (at("[")) d.context = context(false);
            expect(":");
            d.type = type();
            expect("in");
            if (lex_.peek().kind != Token::Str)
                throw ParseError("expected a quoted model path", lex_.peek().span);
            d.model_path = lex_.next().text;
        } else {
            throw ParseError("expected a declaration, got '" + kw.text + "'", kw.span);
        }
        expect(";");
        return d;
    }

    // `[a :: A, b :: B | p : P]`; a telescope admits neutral entries only.
    std::vector<SEntry> context(bool telescope) {
        expect("[");
        std::vector<SEntry> out;
        bool polar = false;
        if (accept("]")) return out;
        for (;;) {
            if (accept("|")) polar = true;
            if (accept("]")) return out;
            SEntry e;
            e.span = lex_.peek().span;
            e.name = name();
            if (accept("::")) {
                e.neutral = true;
                if (polar) throw ParseError("neutral entry '" + e.name + "' after a polar one", e.span);
            } else {
                expect(":");
                if (telescope)
                    throw ParseError("telescopes bind only neutral variables ('" + e.name +
                                         " :: T')",
                                     e.span);
                polar = true;
            }
            e.type = type();
            out.push_back(std::move(e));
            if (accept(",")) continue;
            if (at("|")) continue;
            expect("]");
            return out;
        }
    }

    STypeP type() {
        STypeP t = type_prim();
        return postfix(std::move(t));
    }

    STypeP postfix(STypeP t) {
        for (;;) {
            const Span s = lex_.peek().span;
            if (accept("^-")) {
                t = std::make_shared<SType>(SType{SType::Neg, "", t, nullptr, nullptr, s});
            } else if (accept("^b")) {
                t = std::make_shared<SType>(SType{SType::Flat, "", t, nullptr, nullptr, s});
            } else {
                return t;
            }
        }
    }

    STypeP type_atom() {
        const Span s = lex_.peek().span;
        if (accept("(")) {
            STypeP t = type();
            expect(")");
            return postfix(t);
        }
        return postfix(std::make_shared<SType>(SType{SType::Name, name(), nullptr, nullptr, nullptr, s}));
    }

    STypeP type_prim() {
        const Token& t = lex_.peek();
        const Span s = t.span;
        if (t.kind == Token::Ident && (t.text == "Hom" || t.text == "Id" || t.text == "IdFlat")) {
            const SType::Kind k = t.text == "Hom" ? SType::Hom
                                  : t.text == "Id" ? SType::Id
                                                   : SType::IdFlat;
            lex_.next();
            STypeP carrier = type_atom();
            expect("(");
            STermP a = term();
            STermP b;
            if (accept(",")) {
                b = term();
                expect(")");
            } else {
                expect(")");
                expect("(");
                b = term();
                expect(")");
            }
            return std::make_shared<SType>(SType{k, "", carrier, a, b, s});
        }
        if (accept("(")) {
            STypeP inner = type();
            expect(")");
            return inner;
        }
        return std::make_shared<SType>(SType{SType::Name, name(), nullptr, nullptr, nullptr, s});
    }

    static STermP make(STerm::Kind k, std::string n, std::vector<STermP> args, Span s) {
        auto t = std::make_shared<STerm>();
        t->kind = k;
        t->name = std::move(n);
        t->args = std::move(args);
        t->span = s;
        return t;
    }

    std::vector<STermP> term_list() {
        expect("(");
        std::vector<STermP> out;
        if (accept(")")) return out;
        do out.push_back(term());
        while (accept(","));
        expect(")");
        return out;
    }

    STermP term() {
        const Token tok = lex_.peek();
        const Span s = tok.span;
        if (tok.kind == Token::Sym) {
            if (accept("(")) {
                STermP t = term();
                expect(")");
                return t;
            }
            fail("expected a term");
        }
        if (tok.kind != Token::Ident) fail("expected a term");
        if (kPrefixOps.count(tok.text)) {
            lex_.next();
            return make(STerm::Prefix, tok.text, {term()}, s);
        }
        if (tok.text == "UHP") {
            lex_.next();
            std::vector<STermP> a = term_list();
            if (a.size() != 2) throw ParseError("UHP takes two arguments", s);
            return make(STerm::Uhp, "", std::move(a), s);
        }
        if (tok.text == "J" || tok.text == "J+" || tok.text == "J-") {
            lex_.next();
            if (tok.text == "J" && at("[")) return j_general(s);
            auto t = std::make_shared<STerm>();
            t->kind = STerm::JShort;
            t->name = tok.text;
            t->span = s;
            expect("{");
            t->motive = type();
            expect(";");
            t->args = {term()};
            expect("}");
            return t;
        }
        if (tok.text == "tr+") {
            lex_.next();
            auto t = std::make_shared<STerm>();
            t->kind = STerm::Tr;
            t->name = tok.text;
            t->span = s;
            expect("(");
            t->binders.push_back(name());
            expect(",");
            t->binders.push_back(name());
            expect(".");
            t->motive = type();
            expect(";");
            STermP base = term();
            expect(")");
            t->args = {base, term()};
            return t;
        }
        if (tok.text == "compose" || tok.text == "symCore" || tok.text == "unitL" ||
            tok.text == "unitR") {
            lex_.next();
            return make(STerm::App, tok.text, term_list(), s);
        }
        const std::string n = name();
        if (at("(")) return make(STerm::App, n, term_list(), s);
        if (accept("@")) return make(STerm::At, n, term_list(), s);
        return make(STerm::Name, n, {}, s);
    }

    STermP j_general(Span s) {
        auto t = std::make_shared<STerm>();
        t->kind = STerm::JGen;
        t->name = "J";
        t->span = s;
        expect("[");
        t->carrier = type();
        expect("]");
        expect("(");
        t->binders.push_back(name());
        expect(";");
        for (int i = 0; i < 4; ++i) {
            if (i) expect(",");
            t->binders.push_back(name());
        }
        expect(")");
        expect("{");
        t->motive = type();
        expect(";");
        t->args.push_back(term());
        expect("}");
        expect("(");
        t->args.push_back(term());
        expect(";");
        for (int i = 0; i < 4; ++i) {
            if (i) expect(",");
            t->args.push_back(term());
        }
        expect(")");
        return t;
    }

    Lexer lex_;
};

}  // namespace

bool is_reserved(const std::string& name) { return kKeywords.count(name) > 0; }

std::vector<SDecl> parse(const std::string& text) { return Parser(text).file(); }

SGoal parse_goal_type(const std::string& text) { return Parser(text).goal(true); }

SGoal parse_expr(const std::string& text) {
    std::optional<SGoal> as_type, as_term;
    std::optional<ParseError> type_err, term_err;
    try {
        as_type = Parser(text).goal(true);
    } catch (const ParseError& e) {
        type_err = e;
    }
    try {
        as_term = Parser(text).goal(false);
    } catch (const ParseError& e) {
        term_err = e;
    }
    if (!as_type && !as_term) {
        // report whichever attempt got further
        const Span a = type_err->span(), b = term_err->span();
        throw (a.line > b.line || (a.line == b.line && a.col > b.col)) ? *type_err : *term_err;
    }
    SGoal g;
    if (as_type) {
        g.context = as_type->context;
        g.type = as_type->type;
    }
    if (as_term) {
        g.context = as_term->context;
        g.term = as_term->term;
    }
    return g;
}

}  // namespace dirtt
