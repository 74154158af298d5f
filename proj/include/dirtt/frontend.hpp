#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirtt/checker.hpp"
#include "dirtt/model.hpp"
#include "dirtt/signature.hpp"
#include "dirtt/syntax.hpp"

namespace dirtt {

/// Lexical or syntactic error, or a duplicate declaration.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, Span span);

    Span span() const { return span_; }
    const std::string& detail() const { return detail_; }

private:
    std::string detail_;
    Span span_;
};

// Surface syntax. Names are unresolved; binders carry their names.

struct STerm;
struct SType;
using STermP = std::shared_ptr<const STerm>;
using STypeP = std::shared_ptr<const SType>;

struct SType {
    enum Kind { Name, Neg, Flat, Hom, Id, IdFlat } kind;
    std::string name;  // Name
    STypeP inner;      // Neg, Flat, carrier of Hom/Id/IdFlat
    STermP lhs, rhs;   // Hom, Id, IdFlat
    Span span;
};

struct STerm {
    enum Kind {
        Name,    // x
        App,     // f(args); also the builtins compose, symCore, unitL, unitR
        At,      // c @ (args)
        Prefix,  // inj+ inj- coe+ coe- refl fwd back; op in `name`
        Uhp,     // UHP(p, q)
        JGen,    // J[A](y; x, z, u, v){M; m}(e; s, t, p, q)
        JShort,  // J {M; m}, J+ {M; m}, J- {M; m}; variant in `name`
        Tr,      // tr+ (y, z. M; m) f; M sees y and z, m sees y
    } kind;
    std::string name;
    std::vector<STermP> args;        // JGen: base, e, s, t, p, q; Tr: base, f
    std::vector<std::string> binders;  // JGen: y, x, z, u, v; Tr: y, z
    STypeP carrier;                  // JGen
    STypeP motive;                   // JGen, JShort, Tr (the family)
    Span span;
};

struct SEntry {
    std::string name;
    bool neutral = false;
    STypeP type;
    Span span;
};

struct SDecl {
    enum Kind { TypeDecl, Func, Axiom, Def, Check, Refute } kind;
    std::string name;
    Span span;
    std::vector<std::string> arg_types;  // Func
    std::string result;                  // Func
    std::vector<SEntry> context;         // telescope or goal context
    STypeP type;
    STermP term;                         // Def, Check
    std::string model_path;              // Refute, relative to the source file
};

/// Parses a whole source file. Declaration names must be unique.
std::vector<SDecl> parse(const std::string& text);

/// A goal type or expression with an optional `[ctx]` prefix, as given on
/// the command line.
struct SGoal {
    std::vector<SEntry> context;
    STypeP type;   // parse_expr sets whichever readings parse
    STermP term;
};
SGoal parse_goal_type(const std::string& text);
/// Tries a type first, then a term.
SGoal parse_expr(const std::string& text);

/// Keywords and builtin names, which cannot be bound.
bool is_reserved(const std::string& name);

enum class EntryKind { Decl, Check, Refute };

/// One reportable item of a file, in declaration order. Decl entries only
/// appear for signature declarations that failed.
struct Entry {
    EntryKind kind;
    Goal goal;            // term is null for Refute; null parts on failure
    std::string model;    // Refute: model file path as written
    std::optional<CheckError> error;  // elaboration or kernel failure
};

struct Warning {
    std::string message;
    Span span;
};

struct Program {
    Signature sig;
    std::vector<Entry> entries;
    std::vector<Warning> warnings;
    /// Successful declarations in source order, for printing: kind and
    /// index into sig.symbols / sig.constants / entries.
    std::vector<std::pair<SDecl::Kind, std::size_t>> order;
    const Entry* find_goal(const std::string& name) const;
};

/// Resolves names, expands sugar and kernel-checks every signature
/// declaration. Failures are recorded per entry; refute models are resolved
/// by the caller.
Program elaborate(const std::vector<SDecl>& decls);

struct Elaborated {
    Context context;
    Type type;  // the goal type, or the inferred type of `term`
    Term term;
};
/// Elaborates a command-line goal or expression against a program's
/// signature and checks it; a type reading wins over a term reading.
/// Throws CheckError.
Elaborated elaborate_goal(const Program& prog, const SGoal& goal);

// Printing. Names are the context's entry names; clashes and missing names
// are replaced by fresh ones.
std::string print(const Type& t, const Context& names, const Signature* sig = nullptr);
std::string print(const Term& t, const Context& names, const Signature* sig = nullptr);
std::string print_context(const Context& ctx, const Signature* sig = nullptr);
/// The successful declarations of a program in core form.
std::string print_program(const Program& prog);

}  // namespace dirtt
