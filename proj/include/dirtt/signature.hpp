#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dirtt/syntax.hpp"

namespace dirtt {

/// First-order function symbol, covariant in every argument.
struct SymbolDecl {
    std::string name;
    std::vector<std::string> arg_types;
    std::string result;
    Span span;
};

/// An axiom or a definition over a neutral telescope. Each telescope entry
/// is scoped over the preceding ones; the type (and body) over all of them,
/// with an empty polar zone.
struct ConstantDecl {
    std::string name;
    std::vector<Type> telescope;
    std::vector<std::string> telescope_names;
    Type type;
    Term body;  // null for axioms
    Span span;

    bool is_definition() const { return body != nullptr; }
};

struct Signature {
    std::vector<std::string> base_types;
    std::vector<SymbolDecl> symbols;
    std::vector<ConstantDecl> constants;  // axioms and definitions, in order

    bool has_base(const std::string& name) const;
    const SymbolDecl* find_symbol(const std::string& name) const;
    const ConstantDecl* find_constant(const std::string& name) const;
    bool has_name(const std::string& name) const;
};

}  // namespace dirtt
