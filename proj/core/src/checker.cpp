#include "ggt/checker.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "ggt/propagate.hpp"
#include "ggt/rules.hpp"

namespace ggt {

std::string profile_name(Profile p) {
  switch (p) {
    case Profile::kValid: return "valid";
    case Profile::kRegular: return "regular";
    case Profile::kPool: return "pool";
    case Profile::kInputLemma: return "input_lemma";
    case Profile::kGreedyUp: return "greedy_up";
  }
  return "?";
}

Profile parse_profile(const std::string& name) {
  for (Profile p : {Profile::kValid, Profile::kRegular, Profile::kPool,
                    Profile::kInputLemma, Profile::kGreedyUp}) {
    if (profile_name(p) == name) return p;
  }
  throw Error(ErrorKind::kParse, "unknown profile '" + name + "'");
}

std::vector<Profile> parse_profiles(const std::string& list) {
  std::vector<Profile> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_profile(item));
  }
  if (out.empty()) throw Error(ErrorKind::kParse, "empty profile list");
  return out;
}

bool Report::passed(Profile p) const {
  return std::none_of(violations.begin(), violations.end(),
                      [p](const Violation& v) { return v.profile == p; });
}

std::string Report::str() const {
  std::ostringstream os;
  for (const Violation& v : violations) {
    os << "FAIL " << profile_name(v.profile) << " node " << (v.node + 1) << ": "
       << v.message << '\n';
  }
  for (const std::string& n : notes) os << "note " << n << '\n';
  return os.str();
}

void check_structure(const Derivation& d) {
  auto fail = [](NodeId id, const std::string& msg) {
    throw Error(ErrorKind::kStructure, "node " + std::to_string(id + 1) + ": " + msg);
  };
  const NodeId size = static_cast<NodeId>(d.nodes.size());
  if (size == 0) throw Error(ErrorKind::kStructure, "empty derivation");
  if (d.root < 0 || d.root >= size) throw Error(ErrorKind::kStructure, "root out of range");
  std::vector<int> parents(size, 0);
  for (NodeId id = 0; id < size; ++id) {
    const ProofNode& node = d.nodes[id];
    switch (node.rule) {
      case Rule::kAxiom:
        if (node.p1 != kNoNode || node.p2 != kNoNode) fail(id, "axiom with premises");
        break;
      case Rule::kLemmaRef:
        if (node.p1 != kNoNode || node.p2 != kNoNode) fail(id, "lemma with premises");
        if (node.lemma < 0 || node.lemma >= size || node.lemma == id) {
          fail(id, "lemma target out of range");
        }
        break;
      default:
        if (node.p1 < 0 || node.p1 >= id || node.p2 < 0 || node.p2 >= id) {
          fail(id, "premise does not precede its conclusion");
        }
        if (!node.pivot.valid()) fail(id, "inference without pivot");
        ++parents[node.p1];
        ++parents[node.p2];
        break;
    }
  }
  if (d.shape == Shape::kTreeWithLemmas) {
    for (NodeId id = 0; id < size; ++id) {
      if (id == d.root) {
        if (parents[id] != 0) fail(id, "root used as a premise");
      } else if (parents[id] != 1) {
        fail(id, parents[id] == 0 ? "node is not part of the tree"
                                  : "node has more than one parent");
      }
    }
  }
}

std::vector<NodeId> postorder(const Derivation& d) {
  std::vector<NodeId> order;
  std::vector<char> seen(d.nodes.size(), 0);
  std::vector<std::pair<NodeId, int>> stack{{d.root, 0}};
  while (!stack.empty()) {
    auto& [id, state] = stack.back();
    const ProofNode& node = d.nodes[id];
    if (node.is_leaf() || state == 2) {
      if (!seen[id]) {
        seen[id] = 1;
        order.push_back(id);
      }
      stack.pop_back();
      continue;
    }
    NodeId next = state == 0 ? node.p1 : node.p2;
    ++state;
    if (!seen[next]) stack.push_back({next, 0});
  }
  return order;
}

std::vector<bool> input_nodes(const Derivation& d) {
  std::vector<bool> input(d.nodes.size(), false);
  for (size_t id = 0; id < d.nodes.size(); ++id) {
    const ProofNode& node = d.nodes[id];
    if (node.is_leaf()) {
      input[id] = true;
      continue;
    }
    const bool leaf_premise = d.nodes[node.p1].is_leaf() || d.nodes[node.p2].is_leaf();
    input[id] = leaf_premise && input[node.p1] && input[node.p2];
  }
  return input;
}

namespace {

class PivotSets {
 public:
  PivotSets(size_t nodes, int vars) : words_((vars + 64) / 64), bits_(nodes * words_, 0) {}
  uint64_t* row(NodeId id) { return bits_.data() + static_cast<size_t>(id) * words_; }
  bool test(NodeId id, int32_t v) { return (row(id)[v / 64] >> (v % 64)) & 1; }
  void set(NodeId id, int32_t v) { row(id)[v / 64] |= uint64_t{1} << (v % 64); }
  void merge(NodeId into, NodeId from) {
    uint64_t* a = row(into);
    const uint64_t* b = row(from);
    for (size_t w = 0; w < words_; ++w) a[w] |= b[w];
  }

 private:
  size_t words_;
  std::vector<uint64_t> bits_;
};

void check_valid(const Derivation& d, const FormulaInstance& f, Report& r) {
  std::unordered_set<Clause, ClauseHash> axioms(f.clauses.begin(), f.clauses.end());
  VarCodec codec(d.n);
  for (NodeId id = 0; id < static_cast<NodeId>(d.nodes.size()); ++id) {
    const ProofNode& node = d.nodes[id];
    auto fail = [&](const std::string& msg) { r.violations.push_back({Profile::kValid, id, msg}); };
    for (Lit l : node.clause) {
      if (!codec.in_range(l)) {
        fail("literal out of range");
        break;
      }
    }
    switch (node.rule) {
      case Rule::kAxiom:
        if (!axioms.count(node.clause)) fail("axiom " + node.clause.str() + " is not in the formula");
        break;
      case Rule::kLemmaRef:
        if (d.nodes[node.lemma].clause != node.clause) fail("lemma clause differs from its target");
        break;
      default:
        try {
          Clause c = apply_rule(node.rule, d.nodes[node.p1].clause, d.nodes[node.p2].clause,
                                node.pivot);
          if (c != node.clause) {
            fail("conclusion " + node.clause.str() + " differs from resolvent " + c.str());
          }
        } catch (const Error& e) {
          fail(e.what());
        }
        break;
    }
  }
}

bool check_regular(const Derivation& d, Profile profile, Report& r) {
  VarCodec codec(d.n);
  const NodeId size = static_cast<NodeId>(d.nodes.size());
  PivotSets below(size, codec.num_vars());
  bool ok = true;
  for (NodeId id = 0; id < size; ++id) {
    const ProofNode& node = d.nodes[id];
    if (node.is_leaf()) continue;
    const int32_t v = node.pivot.var();
    if (below.test(node.p1, v) || below.test(node.p2, v)) {
      r.violations.push_back({profile, id, "pivot variable " + std::to_string(v) +
                                               " repeats on a path through this node"});
      ok = false;
    }
    below.merge(id, node.p1);
    below.merge(id, node.p2);
    below.set(id, v);
  }
  for (Lit l : d.conclusion()) {
    if (below.test(d.root, l.var())) {
      r.violations.push_back({profile, d.root, "pivot variable " + std::to_string(l.var()) +
                                                   " occurs in the root clause"});
      ok = false;
    }
  }
  return ok;
}

void check_pool(const Derivation& d, Report& r) {
  if (d.shape != Shape::kTreeWithLemmas) {
    r.violations.push_back({Profile::kPool, d.root, "shape is not a tree with lemmas"});
  }
  check_regular(d, Profile::kPool, r);
  if (!d.conclusion().empty()) {
    r.violations.push_back({Profile::kPool, d.root, "root clause is not empty"});
  }
  std::vector<NodeId> order = postorder(d);
  std::vector<long> pos(d.nodes.size(), -1);
  for (size_t k = 0; k < order.size(); ++k) pos[order[k]] = static_cast<long>(k);
  for (NodeId id : order) {
    const ProofNode& node = d.nodes[id];
    if (node.rule != Rule::kLemmaRef) continue;
    if (pos[node.lemma] < 0 || pos[node.lemma] >= pos[id]) {
      r.violations.push_back({Profile::kPool, id,
                              "lemma target " + std::to_string(node.lemma + 1) +
                                  " does not precede the reference in postorder"});
    }
  }
}

void check_input_lemma(const Derivation& d, Report& r) {
  std::vector<bool> input = input_nodes(d);
  for (NodeId id = 0; id < static_cast<NodeId>(d.nodes.size()); ++id) {
    const ProofNode& node = d.nodes[id];
    if (node.rule == Rule::kLemmaRef && !input[node.lemma]) {
      r.violations.push_back({Profile::kInputLemma, id,
                              "lemma target " + std::to_string(node.lemma + 1) +
                                  " is not derived by an input derivation"});
    }
  }
}

void check_greedy(const Derivation& d, const FormulaInstance& f, Report& r) {
  if (d.shape != Shape::kTreeWithLemmas) {
    r.violations.push_back({Profile::kGreedyUp, d.root, "greedy check needs a tree"});
    return;
  }
  const size_t size = d.nodes.size();
  std::vector<bool> input = input_nodes(d);

  // C+ for every node, top-down; phantom pivot literals count.
  std::vector<std::vector<Lit>> cplus(size);
  std::vector<NodeId> order = postorder(d);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId id = *it;
    const ProofNode& node = d.nodes[id];
    std::vector<Lit>& mine = cplus[id];
    mine.insert(mine.end(), node.clause.begin(), node.clause.end());
    std::sort(mine.begin(), mine.end(), lit_less);
    mine.erase(std::unique(mine.begin(), mine.end()), mine.end());
    if (node.is_leaf()) continue;
    for (int side = 0; side < 2; ++side) {
      NodeId child = side == 0 ? node.p1 : node.p2;
      cplus[child] = mine;
      cplus[child].push_back(side == 0 ? node.pivot : ~node.pivot);
    }
  }

  std::vector<Clause> gamma(f.clauses.begin(), f.clauses.end());
  std::vector<char> closed(size, 0);
  for (NodeId id : order) {
    const ProofNode& node = d.nodes[id];
    std::vector<Lit> assume;
    std::vector<char> cvar(VarCodec(d.n).num_vars() + 1, 0);
    for (Lit l : cplus[id]) {
      assume.push_back(~l);
      cvar[l.var()] = 1;
    }
    bool conflict;
    try {
      conflict = unit_propagate(gamma, assume).conflict;
    } catch (const Error&) {
      r.violations.push_back({Profile::kGreedyUp, id, "C+ contains complementary literals"});
      continue;
    }
    if (conflict) {
      bool trivial = input[id];
      if (trivial && !node.is_leaf()) {
        std::vector<NodeId> stack{id};
        while (!stack.empty() && trivial) {
          const ProofNode& s = d.nodes[stack.back()];
          stack.pop_back();
          if (s.is_leaf()) continue;
          if (cvar[s.pivot.var()]) trivial = false;
          stack.push_back(s.p1);
          stack.push_back(s.p2);
        }
      }
      if (trivial) {
        closed[id] = 1;
      } else if (!node.is_leaf() && closed[node.p1] && closed[node.p2]) {
        closed[id] = 1;
        r.notes.push_back("node " + std::to_string(id + 1) +
                          " combines two unit-propagating subproofs");
      } else {
        r.violations.push_back({Profile::kGreedyUp, id,
                                "unit propagation refutes C+ but the clause is not derived by "
                                "an input derivation avoiding C+ variables"});
      }
    }
    if (!node.is_leaf() && input[id]) gamma.push_back(node.clause);
  }
}

}  // namespace

Report check_proof(const Derivation& d, const FormulaInstance& f,
                   std::span<const Profile> profiles) {
  check_structure(d);
  if (d.n != f.n) throw Error(ErrorKind::kStructure, "proof and formula disagree on n");
  Report r;
  for (Profile p : profiles) {
    switch (p) {
      case Profile::kValid: check_valid(d, f, r); break;
      case Profile::kRegular: check_regular(d, Profile::kRegular, r); break;
      case Profile::kPool: check_pool(d, r); break;
      case Profile::kInputLemma: check_input_lemma(d, r); break;
      case Profile::kGreedyUp: check_greedy(d, f, r); break;
    }
  }
  return r;
}

}  // namespace ggt
