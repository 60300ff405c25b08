#include "ggt/derivation.hpp"

#include <algorithm>

namespace ggt {

NodeId Derivation::add_axiom(Clause c) {
  ProofNode node;
  node.clause = std::move(c);
  node.rule = Rule::kAxiom;
  nodes.push_back(std::move(node));
  root = static_cast<NodeId>(nodes.size() - 1);
  return root;
}

NodeId Derivation::add_lemma_ref(NodeId target) {
  ProofNode node;
  node.clause = nodes.at(target).clause;
  node.rule = Rule::kLemmaRef;
  node.lemma = target;
  nodes.push_back(std::move(node));
  root = static_cast<NodeId>(nodes.size() - 1);
  return root;
}

NodeId Derivation::add_inference(Rule rule, Lit pivot, NodeId p1, NodeId p2,
                                 Clause c) {
  ProofNode node;
  node.clause = std::move(c);
  node.rule = rule;
  node.pivot = pivot;
  node.p1 = p1;
  node.p2 = p2;
  nodes.push_back(std::move(node));
  root = static_cast<NodeId>(nodes.size() - 1);
  return root;
}

size_t Derivation::max_width() const {
  size_t w = 0;
  for (const auto& node : nodes) w = std::max(w, node.clause.size());
  return w;
}

size_t Derivation::depth() const {
  std::vector<size_t> height(nodes.size(), 0);
  for (size_t id = 0; id < nodes.size(); ++id) {
    const auto& node = nodes[id];
    if (node.is_leaf()) continue;
    height[id] = 1 + std::max(height[node.p1], height[node.p2]);
  }
  return root == kNoNode ? 0 : height[root];
}

char rule_code(Rule r) {
  switch (r) {
    case Rule::kAxiom:
      return 'A';
    case Rule::kLemmaRef:
      return 'L';
    case Rule::kResolve:
      return 'R';
    case Rule::kWResolve:
      return 'W';
    case Rule::kDegenResolve:
      return 'D';
  }
  return '?';
}

}  // namespace ggt
