#pragma once

#include "ggt/derivation.hpp"
#include "ggt/literal.hpp"

namespace ggt {

/// Applies one of the inference rules with pivot literal `x` (expected in
/// `a`; its negation expected in `b`).
///
/// All modes require that \bar x is not in `a` and x is not in `b`.
/// kResolve additionally requires x in `a` and \bar x in `b`
/// (kMissingPivot otherwise). kWResolve treats absent pivots as phantom
/// literals. kDegenResolve returns the premise that lacks its pivot
/// occurrence, or the lexicographically smaller premise when both do.
/// A resolvent containing a complementary pair raises kTautology.
Clause apply_rule(Rule mode, const Clause& a, const Clause& b, Lit x);

}  // namespace ggt
