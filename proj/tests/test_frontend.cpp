#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dirtt/equality.hpp"
#include "dirtt/frontend.hpp"
#include "support/gen.hpp"

using namespace dirtt;
using dirtt::testing::Rng;

namespace {

const std::string kPrelude =
    "type A;\n"
    "func c : A;\n"
    "func f (A) : A;\n"
    "func g (A, A) : A;\n"
    "axiom step [a :: A] : Hom A (coe- (inj+ f(coe+ a)), coe+ a);\n";

Program load(const std::string& text) { return elaborate(parse(text)); }

const Entry& only_goal(const Program& p) {
    REQUIRE(!p.entries.empty());
    return p.entries.back();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::filesystem::path> corpus_files() {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::recursive_directory_iterator(CORPUS_DIR))
        if (e.path().extension() == ".dtt") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

Span parse_error_span(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.span();
    }
    FAIL("no parse error");
    return {};
}

}  // namespace

TEST_CASE("declarations elaborate into the signature") {
    const Program p = load(kPrelude + "def twice [a :: A] : A := f(f(coe+ a));\n");
    CHECK(p.sig.base_types == std::vector<std::string>{"A"});
    CHECK(p.sig.symbols.size() == 3);
    REQUIRE(p.sig.find_constant("twice"));
    const ConstantDecl& d = *p.sig.find_constant("twice");
    CHECK(d.is_definition());
    CHECK(equal(d.body, sym_app("f", {sym_app("f", {coe_plus(var_n(0))})})));
    CHECK(p.entries.empty());
}

TEST_CASE("names resolve polar, then neutral, then symbols and constants") {
    const Program p = load(kPrelude +
                           "def k : A := c;\n"
                           "check t [a :: A | a : A] : A := a;\n"
                           "check u [a :: A] : A := k;\n");
    REQUIRE(p.entries.size() == 2);
    CHECK(!p.entries[0].error);
    CHECK(equal(p.entries[0].goal.term, var_p(0)));
    CHECK(equal(p.entries[1].goal.term, axiom_ref("k", {})));
}

TEST_CASE("postfix modalities and hom forms") {
    SGoal g = parse_goal_type("[a :: A] (Hom A (coe- a) (coe+ a))^b^-");
    REQUIRE(g.type);
    CHECK(g.type->kind == SType::Neg);
    CHECK(g.type->inner->kind == SType::Flat);
    CHECK(g.type->inner->inner->kind == SType::Hom);

    const Program prog = load(kPrelude);
    const Elaborated e = elaborate_goal(prog, parse_goal_type("A^-^-"));
    CHECK(equal(normalize_type(&prog.sig, e.type), base("A")));
}

TEST_CASE("expressions read as a type when they can") {
    const SGoal t = parse_expr("A^-");
    CHECK(t.type);
    const SGoal m = parse_expr("coe+ (inj+ c)");
    CHECK(!m.type);
    CHECK(m.term);
    const Program prog = load(kPrelude);
    const Elaborated e = elaborate_goal(prog, m);
    CHECK(equal(normalize_term(&prog.sig, e.term), sym_app("c", {})));
}

TEST_CASE("Id sugar: hom at a core carrier, flat identity otherwise") {
    const Program p = load(kPrelude +
                           "check i1 [a :: A] : Id A^b (a, a) := refl a;\n"
                           "check i2 : Id A (c, c) := refl (inj+ c);\n"
                           "check i3 [a :: A, b :: A | p : Hom A (coe- a, coe+ b)] :\n"
                           "  Id (Hom A (coe- a, coe+ b)) (p, p) := UHP(p, p);\n");
    REQUIRE(p.entries.size() == 3);
    for (const auto& e : p.entries) CHECK_MESSAGE(!e.error, e.goal.name);
    const Type& i3 = p.entries[2].goal.type;
    REQUIRE(i3->kind == TypeKind::Hom);
    CHECK(i3->inner->kind == TypeKind::Hom);
    CHECK(equal(i3->dom, coe_minus(var_p(0))));

    const Program bad = load(kPrelude + "check i4 [| p : A] : Id A (p, p) := refl p;\n");
    REQUIRE(only_goal(bad).error);
    CHECK(only_goal(bad).error->kind() == ErrorKind::PolarityViolation);
}

TEST_CASE("syntax errors carry positions") {
    CHECK(parse_error_span("type A;\ncheck x : A := ;\n").line == 2);
    CHECK(parse_error_span("type A;\ncheck x : A := ;\n").col == 16);
    CHECK(parse_error_span("type A\nfunc c : A;").line == 2);
    const Span dup = parse_error_span("type A;\ntype A;\n");
    CHECK(dup.line == 2);
    CHECK(dup.col == 1);
    CHECK(parse_error_span("type A;\n  check x : A := c $;").col == 20);
    CHECK(parse_error_span("axiom k [| p : A] : A;").line == 1);
    CHECK(parse_error_span("type A; refute r : A in chain2;").col == 25);
}

TEST_CASE("elaboration and kernel errors point into the source") {
    const Program p = load(kPrelude +
                           "check e1 [a :: A] : A :=\n"
                           "  g(a, nope);\n"
                           "check e2 [| p : A] : Hom A (coe- p, coe+ p) :=\n"
                           "    refl p;\n"
                           "check e3 [a :: A] : A := f(a, a);\n"
                           "check e4 : B := c;\n");
    REQUIRE(p.entries.size() == 4);
    for (const auto& e : p.entries) {
        REQUIRE_MESSAGE(e.error, e.goal.name);
        CHECK_MESSAGE(e.error->span().known(), e.goal.name);
    }
    CHECK(p.entries[0].error->kind() == ErrorKind::UnboundVariable);
    CHECK(p.entries[0].error->span().line == 7);
    CHECK(p.entries[0].error->span().col == 8);
    CHECK(p.entries[1].error->span().line == 8);
    CHECK(p.entries[2].error->kind() == ErrorKind::ArityMismatch);
    CHECK(p.entries[3].error->kind() == ErrorKind::UnboundVariable);
    CHECK(p.entries[3].error->span().line == 11);
}

TEST_CASE("every corpus failure has a span") {
    for (const auto& f : corpus_files()) {
        const Program p = load(slurp(f));
        for (const auto& e : p.entries)
            if (e.error) CHECK_MESSAGE(e.error->span().known(), (f.string() + " " + e.goal.name));
    }
}

TEST_CASE("shadowing is allowed with a warning") {
    const Program p = load(kPrelude + "check s [a :: A, a :: A] : A := coe+ a;\n");
    REQUIRE(p.entries.size() == 1);
    CHECK(!p.entries[0].error);
    CHECK(equal(p.entries[0].goal.term, coe_plus(var_n(0))));
    REQUIRE(p.warnings.size() == 1);
    CHECK(p.warnings[0].message.find("shadows") != std::string::npos);
    CHECK(p.warnings[0].span.line == 6);
}

namespace {

// Same declarations, same outcomes, syntactically equal cores.
void same_program(const Program& a, const Program& b, const std::string& what) {
    REQUIRE_MESSAGE(a.sig.base_types == b.sig.base_types, what);
    REQUIRE_MESSAGE(a.sig.symbols.size() == b.sig.symbols.size(), what);
    REQUIRE_MESSAGE(a.sig.constants.size() == b.sig.constants.size(), what);
    for (std::size_t i = 0; i < a.sig.constants.size(); ++i) {
        const ConstantDecl &x = a.sig.constants[i], &y = b.sig.constants[i];
        CHECK_MESSAGE(x.name == y.name, what);
        CHECK_MESSAGE(equal(x.type, y.type), (what + " " + x.name));
        CHECK_MESSAGE(x.is_definition() == y.is_definition(), what);
        if (x.is_definition() && y.is_definition())
            CHECK_MESSAGE(equal(x.body, y.body), (what + " " + x.name));
    }
    std::vector<const Entry*> ok;
    for (const auto& e : a.entries)
        if (!e.error) ok.push_back(&e);
    REQUIRE_MESSAGE(ok.size() == b.entries.size(), what);
    for (std::size_t i = 0; i < ok.size(); ++i) {
        const Entry &x = *ok[i], &y = b.entries[i];
        CHECK_MESSAGE(x.goal.name == y.goal.name, what);
        CHECK_MESSAGE(!y.error, (what + " " + y.goal.name));
        CHECK_MESSAGE(x.goal.context.neutral.size() == y.goal.context.neutral.size(), what);
        CHECK_MESSAGE(x.goal.context.polar.size() == y.goal.context.polar.size(), what);
        for (std::size_t k = 0; k < x.goal.context.neutral.size(); ++k)
            CHECK(equal(x.goal.context.neutral[k], y.goal.context.neutral[k]));
        for (std::size_t k = 0; k < x.goal.context.polar.size(); ++k)
            CHECK(equal(x.goal.context.polar[k], y.goal.context.polar[k]));
        CHECK_MESSAGE(equal(x.goal.type, y.goal.type), (what + " " + x.goal.name));
        if (x.goal.term) CHECK_MESSAGE(equal(x.goal.term, y.goal.term), (what + " " + x.goal.name));
        CHECK(x.model == y.model);
    }
}

}  // namespace

TEST_CASE("corpus files survive parse, elaborate, print") {
    const auto files = corpus_files();
    CHECK(files.size() >= 7);
    for (const auto& f : files) {
        const Program p = load(slurp(f));
        const std::string printed = print_program(p);
        Program q;
        REQUIRE_NOTHROW_MESSAGE(q = load(printed), printed);
        same_program(p, q, f.string());
        // printing is a fixpoint after one pass
        CHECK(print_program(q) == printed);
    }
}

TEST_CASE("property: printed terms re-elaborate to the same core") {
    Rng rng(41);
    const Program prog{testing::fixture_signature()};
    const Context ctx = testing::fixture_context();
    const std::string head = print_context(ctx, &prog.sig) + " ";
    const auto terms = testing::well_typed_terms(rng, 300, 6);
    REQUIRE(terms.size() == 300);
    for (const auto& [t, ty] : terms) {
        for (const Term& m : {t, normalize_term(&prog.sig, t)}) {
            const std::string text = head + print(m, ctx, &prog.sig);
            Elaborated e;
            REQUIRE_NOTHROW_MESSAGE(e = elaborate_goal(prog, parse_expr(text)), text);
            REQUIRE_MESSAGE(e.term, text);
            CHECK_MESSAGE(equal(e.term, m), text);
        }
        const std::string text = head + print(ty, ctx, &prog.sig);
        Elaborated e;
        REQUIRE_NOTHROW_MESSAGE(e = elaborate_goal(prog, parse_goal_type(text)), text);
        CHECK_MESSAGE(equal(e.type, ty), text);
    }
}

TEST_CASE("property: normal forms never print a double negation") {
    Rng rng(7);
    const Signature sig = testing::fixture_signature();
    const Context ctx = testing::fixture_context();
    for (int i = 0; i < 1000; ++i) {
        const Type t = testing::random_type(rng, 5, ctx.neutral.size(), ctx.polar.size());
        const std::string s = print(normalize_type(&sig, t), ctx, &sig);
        CHECK_MESSAGE(s.find("^-^-") == std::string::npos, s);
        CHECK_MESSAGE(s.find("^b^b") == std::string::npos, s);
    }
}

TEST_CASE("printed names avoid keywords, globals and each other") {
    const Program prog = load(kPrelude);
    Context ctx;
    ctx = ctx.with_neutral(base("A"), "c");
    ctx = ctx.with_neutral(base("A"), "J");
    ctx = ctx.with_neutral(base("A"), "c1");
    const std::string text = print_context(ctx, &prog.sig);
    CHECK(text == "[c1 :: A, J1 :: A, c11 :: A]");
    const Elaborated e = elaborate_goal(prog, parse_expr(text + " g(coe+ c1, coe+ J1)"));
    CHECK(equal(e.term, sym_app("g", {coe_plus(var_n(2)), coe_plus(var_n(1))})));
}
