#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dirtt/checker.hpp"
#include "dirtt/signature.hpp"
#include "dirtt/syntax.hpp"

namespace dirtt::testing {

using Rng = std::mt19937_64;

/// Scope-respecting but untyped syntax of bounded depth over `nn` neutral and
/// `np` polar variables. Jpm nodes get a motive and base in their own scope.
Term random_term(Rng& rng, int depth, std::size_t nn, std::size_t np);
Type random_type(Rng& rng, int depth, std::size_t nn, std::size_t np);

std::size_t depth(const Term& t);
std::size_t depth(const Type& t);

/// A small fixed signature: base A, symbols c : A, f(A) : A, g(A, A) : A,
/// axiom step [a :: A] : Hom A (-(inj+ f(+a)), +a).
Signature fixture_signature();

/// (a :: A, b :: A | p : A, q : A⁻, h : hom(-a, +b)).
Context fixture_context();

struct Typed {
    Term term;
    Type type;
};

/// Draws terms of depth <= max_depth from the fixture and keeps those the
/// checker accepts. Returns exactly `count` terms unless the attempt budget
/// runs out first.
std::vector<Typed> well_typed_terms(Rng& rng, std::size_t count, int max_depth);

}  // namespace dirtt::testing
