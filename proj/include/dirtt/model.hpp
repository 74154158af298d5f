#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirtt/signature.hpp"
#include "dirtt/syntax.hpp"

namespace dirtt {

struct FinPreorder {
    std::vector<std::string> elems;
    std::vector<std::vector<bool>> le;  // le[i][j]: elems[i] ≤ elems[j]

    std::size_t size() const { return elems.size(); }
    bool leq(std::size_t i, std::size_t j) const { return le[i][j]; }
    bool operator==(const FinPreorder&) const = default;
};

/// First missing reflexivity or transitivity instance, if any.
std::optional<std::string> validate_preorder(const FinPreorder& p);
FinPreorder opposite(const FinPreorder& p);
/// The two-sided part: i ~ j iff i ≤ j and j ≤ i.
FinPreorder core(const FinPreorder& p);

FinPreorder chain(std::size_t n);
FinPreorder discrete(std::size_t n);
FinPreorder codiscrete(std::size_t n);
FinPreorder singleton();
FinPreorder empty_preorder();

/// Invalid model file or assignment; the message starts with "line:col"
/// when a position is known.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SizeLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A finite function given by rows; -1 in a pattern is a wildcard and the
/// first matching row wins.
struct Table {
    std::size_t arity = 0;
    std::vector<std::pair<std::vector<int>, int>> rows;

    std::optional<int> lookup(const std::vector<int>& args) const;
};

/// Unresolved contents of a model file.
struct ModelFile {
    struct Assign {
        std::string name;
        std::string value;  // a preorder or an element name; empty for tables
        std::vector<std::pair<std::vector<std::string>, std::string>> rows;
        bool is_table = false;
        Span span;
    };
    std::map<std::string, FinPreorder> preorders;
    std::vector<std::string> preorder_order;
    std::vector<Assign> assigns;
};

/// Parses the model file syntax. `first_line` offsets reported positions
/// for bodies embedded in source files.
ModelFile parse_model(const std::string& text, int first_line = 1);

struct ModelAssignment {
    std::map<std::string, FinPreorder> bases;
    std::map<std::string, Table> tables;  // function symbols and non-hom axioms
    std::vector<std::string> unused;      // assigned names the signature lacks
};

/// Resolves a model file against a signature and validates it: preorders,
/// totality and monotonicity of tables, inhabitation of hom axioms. A model
/// file may cover several signatures; assignments to undeclared names are
/// listed in `unused`.
ModelAssignment bind_model(const ModelFile& file, const Signature& sig);

/// Values of the neutral and polar variables at one point.
struct Env {
    std::vector<int> neutral;
    std::vector<int> polar;
};

/// A finite semantic context: its points and their preorder. The neutral
/// part of `le` is symmetric.
struct SemContext {
    std::vector<Env> points;
    std::vector<std::vector<bool>> le;

    std::size_t size() const { return points.size(); }
};

/// A family of finite preorders over a semantic context. Fibers of the same
/// type share their element set, so reindexing is the identity on element
/// indices where the target is inhabited.
struct DepFamily {
    const SemContext* ctx = nullptr;
    std::vector<FinPreorder> fibers;

    /// Image of `elem` along ctx point p ≤ q, or -1 if undefined.
    int reindex(std::size_t p, std::size_t q, int elem) const;
};

/// Monotonicity of every reindex map, identity and composition laws,
/// checked over all related pairs and triples.
std::optional<std::string> validate_family(const DepFamily& fam);

struct SectionVal {
    std::vector<int> values;  // one fiber element per context point
};

std::optional<std::string> check_section(const DepFamily& fam, const SectionVal& s);

/// Enumeration budget: DIRTT_LIMIT if set, else 10^6.
std::uint64_t default_limit();

/// Exact number of monotone sections. Throws SizeLimitExceeded when more
/// than `limit` search nodes would be visited.
std::uint64_t count_sections(const DepFamily& fam, std::uint64_t limit = default_limit(),
                             unsigned workers = 0);

class Interpreter {
public:
    Interpreter(const Signature& sig, const ModelAssignment& model) : sig_(sig), model_(model) {}

    SemContext interp_ctx(const Context& ctx, std::uint64_t limit = default_limit()) const;
    FinPreorder fiber(const Type& t, const Env& env) const;
    int eval(const Term& t, const Env& env) const;
    DepFamily interp_type(const SemContext& sc, const Type& t) const;
    SectionVal interp_term(const SemContext& sc, const Term& t) const;

private:
    const Signature& sig_;
    const ModelAssignment& model_;
};

}  // namespace dirtt
