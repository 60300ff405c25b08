#pragma once

#include <optional>
#include <vector>

#include "ggt/bpo.hpp"
#include "ggt/derivation.hpp"
#include "ggt/formula.hpp"

namespace ggt {

/// A P_pi dag together with, for each node, the triple of the transitivity
/// axiom it holds (empty for alpha leaves and inferences).
struct TaggedDag {
  Derivation dag;
  std::vector<std::optional<Triple>> triple_of;
};

/// Regular dag derivation of bpo_clause(pi) from gen_gt_pi(n, pi) by
/// downward elimination over the minimal elements. Node ids are a
/// topological order with the root last.
TaggedDag build_ppi_tagged(const Bpo& pi, int n);

Derivation build_ppi(const Bpo& pi, int n);

/// P_n: the refutation of GT_n obtained for the empty order.
Derivation build_pn(int n);

}  // namespace ggt
