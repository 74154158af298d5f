#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirtt/signature.hpp"
#include "dirtt/syntax.hpp"

namespace dirtt {

enum class ErrorKind {
    UnboundVariable,
    PolarityViolation,
    NotPolarClosed,
    TypeMismatch,
    MalformedJTelescope,
    ArityMismatch,
    IllFormedContext,
};

const char* to_string(ErrorKind k);

class CheckError : public std::runtime_error {
public:
    CheckError(ErrorKind kind, std::string detail, Span span = {});

    ErrorKind kind() const { return kind_; }
    Span span() const { return span_; }
    const std::string& detail() const { return detail_; }

    /// Attaches a location if none is known yet.
    void locate(Span span) {
        if (!span_.known()) span_ = span;
    }

private:
    ErrorKind kind_;
    std::string detail_;
    Span span_;
};

/// Bidirectional checker for one signature. Stateless apart from the
/// signature reference; safe to use from several threads.
class Checker {
public:
    explicit Checker(const Signature& sig) : sig_(sig) {}

    void check_context(const Context& ctx) const;
    void check_type(const Context& ctx, const Type& t) const;
    Type infer(const Context& ctx, const Term& t) const;
    void check(const Context& ctx, const Term& t, const Type& expected) const;

    /// Checks a constant (axiom or definition) against the declarations
    /// preceding it; used while building a signature incrementally.
    void check_constant(const ConstantDecl& c) const;
    void check_symbol(const SymbolDecl& s) const;

    /// The private context in which a Jpm motive over `carrier` is checked:
    /// ambient neutral zone extended by y :: carrier, polar zone x, z, u, v.
    static Context j_telescope(const Context& ambient, const Type& carrier);

    const Signature& signature() const { return sig_; }

private:
    Type infer_raw(const Context& ctx, const Term& t) const;
    void check_raw(const Context& ctx, const Term& t, const Type& expected) const;
    Type infer_coercion(const Context& ctx, bool plus, const Term& body) const;
    Type infer_jpm(const Context& ctx, const Term& t) const;
    Type infer_constant(const Context& ctx, const Term& t) const;
    Type nf(const Type& t) const;
    void expect_equal(const Type& got, const Type& want, const char* what) const;

    const Signature& sig_;
};

struct Goal {
    std::string name;
    Context context;
    Term term;
    Type type;
    Span span;
};

struct GoalResult {
    std::string name;
    bool ok = false;
    std::optional<CheckError> error;
};

struct ProgramReport {
    std::vector<GoalResult> signature;  // one entry per failing declaration
    std::vector<GoalResult> goals;

    bool ok() const;
};

/// Checks each signature declaration against its predecessors, then each goal.
ProgramReport check_program(const Signature& sig, const std::vector<Goal>& goals);

/// Runs one goal through context, type and term checking.
GoalResult check_goal(const Checker& checker, const Goal& goal);

}  // namespace dirtt
