#pragma once

#include <optional>
#include <string>

#include "dirtt/checker.hpp"
#include "dirtt/syntax.hpp"

namespace dirtt {

/// A library entry: `term` checks at `type` in `context`.
struct DerivedDecl {
    std::string name;
    Context context;
    Term term;
    Type type;
};

enum class Side { Plus, Minus };
enum class UnitSide { Left, Right };

/// One-sided telescopes over y :: A (A scoped over `ambient`'s neutral zone):
///   plus:  (ambient, y :: A | z : A,  v : hom(-y, z))
///   minus: (ambient, y :: A | x : A⁻, u : hom(x, +y))
Context one_sided_telescope(const Context& ambient, const Type& a, Side side);

/// J+ / J- from the two-sided rule. `motive` is scoped over the one-sided
/// telescope, `base` over (ambient, y :: A | •) at the refl instance.
DerivedDecl derive_one_sided(const Context& ambient, const Type& a, const Type& motive,
                             const Term& base, Side side);

/// In the J telescope over A: from u : hom(x, +y), v : hom(-y, z) a term of
/// hom(x, z). Motive hom(x, z), base refl_y.
DerivedDecl make_compose(const Context& ambient, const Type& a);

/// Transport along v : hom(-y, z) in the plus telescope. `family` is a type
/// over (ambient | z : A); `base` lives in (ambient, y :: A | •) at the
/// instance z := +y.
DerivedDecl make_transport_plus(const Context& ambient, const Type& a, const Type& family,
                                const Term& base);

/// From v : hom(-y, z) over the carrier B♭ a term of hom(-z, +y).
DerivedDecl make_core_symmetry(const Context& ambient, const Type& b);

/// The same construction at an arbitrary carrier; only checks for core ones.
DerivedDecl core_symmetry_at(const Context& ambient, const Type& carrier);

/// The two symmetry motives over the J telescope of `carrier`:
/// hom(-y, +x) and hom(-z, +y).
Type symmetry_motive_x(const Type& carrier);
Type symmetry_motive_z(const Type& carrier);

/// Id♭(s, t) as hom over A♭ between the injected endpoints.
Type make_id_flat(const Type& a, const Term& s, const Term& t);

/// UHP witness relating refl·g to g (Left) or f·refl to f (Right).
DerivedDecl make_unit_law(const Context& ambient, const Type& a, UnitSide side);

// General instances used by the surface sugar. Endpoint terms are scoped in
// the ambient context; `a` is the carrier, anchors are polar-closed.
Term compose_at(const Type& a, const Term& anchor, const Term& x, const Term& z, const Term& f,
                const Term& g);
Term transport_plus_at(const Type& a, const Type& family, const Term& base, const Term& anchor,
                       const Term& target, const Term& f);
Term core_symmetry_term(const Type& carrier, const Term& anchor, const Term& target,
                        const Term& v);

/// Recovers e from an endpoint: +e ↦ e, otherwise inj+ (resp. inj-) of a
/// polar-closed endpoint. Empty if neither applies.
std::optional<Term> anchor_from_cod(const Term& cod);
std::optional<Term> anchor_from_dom(const Term& dom);

// Checker-driven sugar: infer the hom types of the arguments and build the
// corresponding J instance. Errors are CheckErrors.
Term build_compose(const Checker& ck, const Context& ctx, const Term& f, const Term& g);
Term build_core_symmetry(const Checker& ck, const Context& ctx, const Term& v);
Term build_unit(const Checker& ck, const Context& ctx, const Term& f, UnitSide side);

/// Canonical J instance for a context ending in the (one- or two-sided)
/// telescope; MalformedJTelescope when the tail does not match.
Term build_canonical_j(const Checker& ck, const Context& ctx, const Type& motive,
                       const Term& base);
Term build_canonical_one_sided(const Checker& ck, const Context& ctx, Side side,
                               const Type& motive, const Term& base);

}  // namespace dirtt
