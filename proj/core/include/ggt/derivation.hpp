#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ggt/formula.hpp"
#include "ggt/literal.hpp"

namespace ggt {

enum class Rule : uint8_t { kAxiom, kLemmaRef, kResolve, kWResolve, kDegenResolve };

enum class Shape : uint8_t { kDag, kTreeWithLemmas };

using NodeId = int32_t;
constexpr NodeId kNoNode = -1;

/// One line of a derivation. For inferences, `pivot` is the literal expected
/// in the first premise; the second premise carries its negation.
struct ProofNode {
  Clause clause;
  Rule rule = Rule::kAxiom;
  NodeId p1 = kNoNode;
  NodeId p2 = kNoNode;
  Lit pivot;
  NodeId lemma = kNoNode;

  bool is_leaf() const { return rule == Rule::kAxiom || rule == Rule::kLemmaRef; }

  friend bool operator==(const ProofNode& a, const ProofNode& b) {
    return a.clause == b.clause && a.rule == b.rule && a.p1 == b.p1 &&
           a.p2 == b.p2 && a.pivot == b.pivot && a.lemma == b.lemma;
  }
};

/// A proof object. Every premise and lemma target has a smaller id than its
/// user; for trees the ids follow postorder and
/// the root is the last node.
struct Derivation {
  Family family = Family::kGT;
  int n = 0;
  uint64_t seed = 0;
  Shape shape = Shape::kDag;
  std::vector<ProofNode> nodes;
  NodeId root = kNoNode;

  NodeId add_axiom(Clause c);
  NodeId add_lemma_ref(NodeId target);
  NodeId add_inference(Rule rule, Lit pivot, NodeId p1, NodeId p2, Clause c);

  const ProofNode& operator[](NodeId id) const { return nodes[id]; }
  size_t size() const { return nodes.size(); }
  const Clause& conclusion() const { return nodes[root].clause; }

  size_t max_width() const;
  /// Longest premise chain from the root to a leaf (lemma refs are leaves).
  size_t depth() const;

  friend bool operator==(const Derivation& a, const Derivation& b) {
    return a.family == b.family && a.n == b.n && a.seed == b.seed &&
           a.shape == b.shape && a.root == b.root && a.nodes == b.nodes;
  }
};

char rule_code(Rule r);

}  // namespace ggt
