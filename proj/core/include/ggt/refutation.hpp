#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ggt/derivation.hpp"
#include "ggt/formula.hpp"

namespace ggt {

enum class LemmaMode { kPool, kInput };

struct RefutationStats {
  /// Unfinished leaves handled.
  long stages = 0;
  /// Stages that abandoned P_pi and learned a transitivity clause.
  long case_iv = 0;
  /// Transitivity axioms classified as cases (i), (ii), (iii) across stages
  /// that kept P_pi.
  long case_i = 0;
  long case_ii = 0;
  long case_iii = 0;
  /// Sum over P'_pi segments of size times depth, plus all case-(iv)
  /// subproof nodes. Upper bound for input-lemma unfolding.
  long segment_bound = 0;
  size_t lines = 0;
  size_t max_width = 0;
  /// One line per stage: index, case, leaf width, unfinished count.
  std::vector<std::string> trace;
};

struct Refutation {
  Derivation proof;
  RefutationStats stats;
};

/// Pool refutation of gen_ggt(n, seed): tree with lemmas referring to any
/// clause earlier in postorder. Throws kConstruction if an internal
/// invariant fails (unfinished leaf not equal to its order clause, stage or
/// case-(iv) bound exceeded, propagation into a lemma target).
Refutation build_pool_refutation(int n, uint64_t seed);

/// Same construction with P'_pi segments unfolded. Every lemma is derived
/// by an input derivation.
Refutation build_regrti_refutation(int n, uint64_t seed);

Refutation build_refutation(int n, uint64_t seed, LemmaMode mode);

/// Tree-with-lemmas form of a dag. Pool mode references the first copy of
/// each shared node; input mode references a copy only once it is derived
/// by an input derivation and re-expands otherwise.
Derivation unfold(const Derivation& dag, LemmaMode mode);

/// Convenience for the input-lemma unfolding.
Derivation unfold_to_input_lemmas(const Derivation& dag);

}  // namespace ggt
