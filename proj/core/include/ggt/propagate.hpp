#pragma once

#include <span>
#include <vector>

#include "ggt/literal.hpp"

namespace ggt {

struct PropagationResult {
  /// Initial literals followed by forced literals, in assignment order.
  std::vector<Lit> trail;
  /// Per trail entry: index of the clause that forced it, or -1 for an
  /// initial literal.
  std::vector<int> reason;
  bool conflict = false;
  /// Index of a clause falsified by the final assignment, or -1.
  int conflict_clause = -1;

  bool assigned_true(Lit l) const;
};

/// Unit propagation to fixpoint from the literals in `assumptions` (all set
/// true). Throws kContract if the assumptions are inconsistent.
PropagationResult unit_propagate(std::span<const Clause> clauses,
                                 std::span<const Lit> assumptions);

/// True iff every total assignment satisfying `clauses` satisfies `c`.
/// Exhaustive; refuses (kSize) for n > 5.
bool semantic_entails(std::span<const Clause> clauses, const Clause& c, int n);

}  // namespace ggt
