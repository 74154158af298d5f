#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace dirtt {

/// Source position, 1-based. A zero line means "no location".
struct Span {
    int line = 0;
    int col = 0;

    bool known() const { return line > 0; }
};

/// One of the four composites ε, ⁻, ♭, ♭⁻. The canonical reading of
/// {flat, neg} is (A♭)⁻, i.e. negation applied outside the core.
struct Modality {
    bool flat = false;
    bool neg = false;

    static constexpr Modality id() { return {false, false}; }
    static constexpr Modality negation() { return {false, true}; }
    static constexpr Modality core() { return {true, false}; }
    static constexpr Modality core_neg() { return {true, true}; }

    friend bool operator==(Modality, Modality) = default;
};

struct TypeNode;
struct TermNode;
using Type = std::shared_ptr<const TypeNode>;
using Term = std::shared_ptr<const TermNode>;

enum class TypeKind { Base, Hom, RawNeg, RawFlat };

struct TypeNode {
    TypeKind kind;
    std::string name;  // Base
    Modality mod;      // Base, Hom
    Type inner;        // Hom carrier, RawNeg/RawFlat operand
    Term dom;          // Hom
    Term cod;          // Hom
    Span span;
};

enum class TermKind {
    VarP,
    VarN,
    InjPlus,
    InjMinus,
    CoePlus,
    CoeMinus,
    Refl,
    Jpm,
    Uhp,
    Fwd,
    Back,
    Sym,
    Axiom,
};

// Jpm layout: `carrier` is scoped over the ambient neutral zone and is
// polar-closed. `motive` binds one extra neutral variable (the anchor y) and
// a private polar zone of exactly four entries x:A⁻, z:A, u:hom(x,+y),
// v:hom(-y,z); it sees no ambient polar variables. args = {base, anchor, x,
// z, u, v}: the base is scoped over (ambient neutral, y | •), the rest over
// the ambient context.
struct TermNode {
    TermKind kind;
    std::size_t index = 0;     // VarP, VarN
    std::string name;          // Sym, Axiom
    std::vector<Term> args;
    Type carrier;              // Jpm
    Type motive;               // Jpm
    Span span;
};

inline constexpr std::size_t kJBase = 0;
inline constexpr std::size_t kJAnchor = 1;
inline constexpr std::size_t kJx = 2;
inline constexpr std::size_t kJz = 3;
inline constexpr std::size_t kJu = 4;
inline constexpr std::size_t kJv = 5;

/// Two-zone context. Entries are stored outermost first; variable index 0
/// refers to the last entry of its zone.
struct Context {
    std::vector<Type> neutral;
    std::vector<Type> polar;
    std::vector<std::string> neutral_names;  // optional, for printing
    std::vector<std::string> polar_names;

    Context with_neutral(Type t, std::string name = {}) const;
    Context with_polar(Type t, std::string name = {}) const;
    Context without_polar() const;
};

// Constructors.
Type base(std::string name, Modality mod = {}, Span span = {});
Type hom(Type carrier, Term dom, Term cod, Modality mod = {}, Span span = {});
Type raw_neg(Type inner, Span span = {});
Type raw_flat(Type inner, Span span = {});

Term var_p(std::size_t i, Span span = {});
Term var_n(std::size_t i, Span span = {});
Term inj_plus(Term t, Span span = {});
Term inj_minus(Term t, Span span = {});
Term coe_plus(Term t, Span span = {});
Term coe_minus(Term t, Span span = {});
Term refl(Term e, Span span = {});
Term uhp(Term p, Term q, Span span = {});
Term fwd(Term i, Span span = {});
Term back(Term i, Span span = {});
Term sym_app(std::string name, std::vector<Term> args, Span span = {});
Term axiom_ref(std::string name, std::vector<Term> args, Span span = {});
Term jpm(Type carrier, Type motive, Term base, Term anchor, Term x, Term z, Term u, Term v,
         Span span = {});

/// Copy of a node with a different span.
Term with_span(const Term& t, Span span);
Type with_span(const Type& t, Span span);

/// Structural equality; spans are ignored.
bool equal(const Term& a, const Term& b);
bool equal(const Type& a, const Type& b);

std::size_t node_count(const Term& t);
std::size_t node_count(const Type& t);

// Index shifting. Jpm motives and bases live under one extra neutral binder
// and never see ambient polar variables.
Term weaken_polar(const Term& t, std::size_t amount, std::size_t cutoff = 0);
Type weaken_polar(const Type& t, std::size_t amount, std::size_t cutoff = 0);
Term weaken_neutral(const Term& t, std::size_t amount, std::size_t cutoff = 0);
Type weaken_neutral(const Type& t, std::size_t amount, std::size_t cutoff = 0);

/// Simultaneously replaces the trailing args.size() polar variables:
/// args[0] substitutes for the outermost of them. Remaining polar indices
/// are lowered by args.size(). Arguments are scoped in the target context.
Term subst_polar(const Term& t, const std::vector<Term>& args);
Type subst_polar(const Type& t, const std::vector<Term>& args);

/// Replaces VarN(index) by e and lowers the neutral indices above it.
/// e must be polar-closed when the body contains Jpm nodes mentioning the
/// variable (their motives have their own polar zone).
Term subst_neutral(const Term& t, std::size_t index, const Term& e);
Type subst_neutral(const Type& t, std::size_t index, const Term& e);

/// Instantiates a closed neutral telescope of args.size() entries; args[0]
/// is the outermost. The body's free neutral indices beyond the telescope
/// are re-based onto the ambient zone.
Term instantiate(const Term& body, const std::vector<Term>& args);
Type instantiate(const Type& body, const std::vector<Term>& args);

/// Renames polar variables of the private J zone: new index = map[old].
Term rename_polar(const Term& t, const std::vector<std::size_t>& map);
Type rename_polar(const Type& t, const std::vector<std::size_t>& map);

/// Index-level rendering for diagnostics (`#n0`, `#p1`); the frontend
/// printer produces named, parseable text.
std::string debug_string(const Term& t);
std::string debug_string(const Type& t);

bool is_polar_closed(const Term& t);
bool is_polar_closed(const Type& t);

/// True iff VarN(index) occurs (accounting for binders).
bool mentions_neutral(const Term& t, std::size_t index);
bool mentions_neutral(const Type& t, std::size_t index);

}  // namespace dirtt
