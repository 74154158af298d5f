#include "dirtt/signature.hpp"

#include <algorithm>

namespace dirtt {

bool Signature::has_base(const std::string& name) const {
    return std::find(base_types.begin(), base_types.end(), name) != base_types.end();
}

const SymbolDecl* Signature::find_symbol(const std::string& name) const {
    for (const auto& s : symbols)
        if (s.name == name) return &s;
    return nullptr;
}

const ConstantDecl* Signature::find_constant(const std::string& name) const {
    for (const auto& c : constants)
        if (c.name == name) return &c;
    return nullptr;
}

bool Signature::has_name(const std::string& name) const {
    return has_base(name) || find_symbol(name) || find_constant(name);
}

}  // namespace dirtt
