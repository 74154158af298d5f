#pragma once

#include <cstddef>

#include "dirtt/signature.hpp"
#include "dirtt/syntax.hpp"

namespace dirtt {

/// Composite of applying `outer` to a type already carrying `inner`.
Modality mod_compose(Modality outer, Modality inner);

/// Rewrite counter, used to bound normalization in tests.
struct NormStats {
    std::size_t steps = 0;
};

// Normalization is context-free: every rule is syntax-directed and the only
// side condition (polar-closedness for the η-rules) is syntactic. A null
// signature disables unfolding of definitions.
Type normalize_type(const Signature* sig, const Type& t, NormStats* stats = nullptr);
Term normalize_term(const Signature* sig, const Term& t, NormStats* stats = nullptr);

bool type_equal(const Signature* sig, const Type& a, const Type& b);
bool term_equal(const Signature* sig, const Term& a, const Term& b);

/// For a normal type: whether it is judgmentally its own core
/// (a ♭-headed base, or any hom-type).
bool is_core(const Type& nf);

/// For a core normal type A♭ (or a hom), the A with A♭ ≡ the input.
Type unflat(const Type& nf);

}  // namespace dirtt
