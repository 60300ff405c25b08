#include "ggt/solver.hpp"

#include <algorithm>

#include "ggt/bpo.hpp"
#include "ggt/rules.hpp"

namespace ggt {

namespace {

size_t slot(Lit l) { return 2 * static_cast<size_t>(l.var()) + (l.positive() ? 1 : 0); }

uint64_t mix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

size_t triple_index(int n, const Triple& t) {
  Triple c = t.canonical();
  return (static_cast<size_t>(c.i) * n + c.j) * n + c.k;
}

}  // namespace

struct Solver::PiEntry {
  TaggedDag tagged;
  // Per dag node, the guard variables of T leaves below it.
  std::vector<std::vector<uint64_t>> guard_vars;
  std::vector<int> guard_of;  // per node; 0 when not a T leaf
};

Solver::Solver(const FormulaInstance& f, SolverConfig config)
    : f_(f), config_(config), codec_(f.n), num_vars_(codec_.num_vars()) {
  if (f.family != Family::kGT && f.family != Family::kGGT) {
    throw Error(ErrorKind::kUnsupported,
                "solver supports GT and GGT instances, not " + family_name(f.family));
  }
  db_ = f.clauses;
  num_input_ = db_.size();
  occ_.assign(2 * static_cast<size_t>(num_vars_) + 2, {});
  for (size_t c = 0; c < db_.size(); ++c) {
    for (Lit l : db_[c]) occ_[slot(l)].push_back(static_cast<int>(c));
  }
  value_.assign(num_vars_ + 1, -1);
  reason_.assign(num_vars_ + 1, -1);
  learned_set_.assign(static_cast<size_t>(f.n) * f.n * f.n, 0);
  node_of_.assign(db_.size(), kNoNode);
  proof_.family = f.family;
  proof_.n = f.n;
  proof_.seed = f.seed;
  proof_.shape = Shape::kTreeWithLemmas;
  // Clauses that are already unit or empty need an initial inspection.
  for (size_t c = 0; c < db_.size(); ++c) {
    if (db_[c].size() <= 1) pending_.push_back(static_cast<int>(c));
  }
}

Solver::~Solver() = default;

int Solver::value(Lit l) const {
  int v = value_[l.var()];
  if (v < 0) return -1;
  return l.positive() ? v : 1 - v;
}

void Solver::assign(Lit l, int reason) {
  value_[l.var()] = l.positive() ? 1 : 0;
  reason_[l.var()] = reason;
  trail_.push_back(l);
  if (reason >= 0) ++stats_.propagations;
}

void Solver::undo_to(size_t pos) {
  while (trail_.size() > pos) {
    Lit l = trail_.back();
    trail_.pop_back();
    value_[l.var()] = -1;
    reason_[l.var()] = -1;
  }
  qhead_ = std::min(qhead_, pos);
}

void Solver::mark(Lit l) {
  if (config_.trace) marks_.push_back({static_cast<NodeId>(proof_.size()), l});
}

void Solver::decide(Lit l) {
  if (!codec_.in_range(l) || value(l) >= 0) {
    throw Error(ErrorKind::kContract, "decision on an assigned or unknown literal");
  }
  ++stats_.decisions;
  stack_.push_back({l, false, trail_.size(), kNoNode, {}});
  mark(l);
  assign(l, -1);
}

int Solver::propagate() {
  // Inspects one clause; returns true on conflict.
  auto inspect = [&](int c) {
    Lit unit;
    int open = 0;
    for (Lit l : db_[c]) {
      int v = value(l);
      if (v == 1) return false;
      if (v < 0) {
        unit = l;
        if (++open > 1) return false;
      }
    }
    if (open == 0) return true;
    assign(unit, c);
    return false;
  };
  while (!pending_.empty()) {
    int c = pending_.back();
    pending_.pop_back();
    if (inspect(c)) return c;
  }
  while (qhead_ < trail_.size()) {
    Lit l = trail_[qhead_++];
    for (int c : occ_[slot(~l)]) {
      if (inspect(c)) return c;
    }
  }
  return -1;
}

NodeId Solver::leaf_for(int clause) {
  if (static_cast<size_t>(clause) < num_input_) return proof_.add_axiom(db_[clause]);
  return proof_.add_lemma_ref(node_of_[clause]);
}

void Solver::add_learned(const Clause& c, const Triple& t, NodeId node) {
  int idx = static_cast<int>(db_.size());
  db_.push_back(c);
  node_of_.push_back(node);
  for (Lit l : c) occ_[slot(l)].push_back(idx);
  pending_.push_back(idx);
  learned_set_[triple_index(f_.n, t)] = 1;
  learned_.push_back(c);
  learned_triples_.push_back(t.canonical());
  ++stats_.learned;
}

bool Solver::on_conflict(int conflict) {
  for (Lit l : db_[conflict]) {
    if (value(l) != 0) {
      throw Error(ErrorKind::kContract, "conflict clause is not falsified by the trail");
    }
  }
  ++stats_.conflicts;
  const bool trace = config_.trace;
  Clause cur = db_[conflict];
  NodeId node = trace ? leaf_for(conflict) : kNoNode;
  bool learned = false;
  // Input derivation: resolve out propagated literals in reverse trail order.
  for (size_t t = trail_.size(); t-- > 0;) {
    Lit l = trail_[t];
    int r = reason_[l.var()];
    if (r < 0 || !cur.contains(~l)) continue;
    cur = apply_rule(Rule::kResolve, db_[r], cur, l);
    if (trace) {
      NodeId rn = leaf_for(r);
      node = proof_.add_inference(Rule::kResolve, l, rn, node, cur);
    }
    if (!learned) {
      auto tri = match_transitivity(codec_, cur);
      if (tri && !learned_set_[triple_index(f_.n, *tri)] &&
          std::find(db_.begin(), db_.begin() + num_input_, cur) == db_.begin() + num_input_) {
        add_learned(cur, *tri, node);
        learned = true;
      }
    }
    if (!trace && learned) break;
  }
  if (trace) {
    // Every remaining literal is the negation of a decision.
    for (Lit l : cur) {
      if (reason_[l.var()] >= 0) {
        throw Error(ErrorKind::kConstruction, "conflict derivation kept a propagated literal");
      }
    }
  }
  close_branch(node, std::move(cur));
  return !done_;
}

// Closes the current branch with derived clause `clause`, flipping the
// deepest unflipped decision or finishing the search.
void Solver::close_branch(NodeId node, Clause clause) {
  while (!stack_.empty()) {
    Decision& top = stack_.back();
    if (!top.flipped) {
      top.flipped = true;
      top.first = node;
      top.first_clause = std::move(clause);
      undo_to(top.trail_pos);
      ++stats_.decisions;
      mark(~top.lit);
      assign(~top.lit, -1);
      return;
    }
    // Both branches are closed: first has lit true, second has it false.
    Lit x = ~top.lit;
    Clause& first = top.first_clause;
    if (config_.trace) {
      Rule rule = first.contains(x) && clause.contains(~x) ? Rule::kResolve
                                                           : Rule::kDegenResolve;
      Clause out = apply_rule(rule, first, clause, x);
      node = proof_.add_inference(rule, x, top.first, node, out);
      clause = std::move(out);
    }
    undo_to(top.trail_pos);
    stack_.pop_back();
  }
  done_ = true;
  root_ = node;
  undo_to(0);
}

const Solver::PiEntry& Solver::pi_entry(const Bpo& pi) {
  std::string key = pi.str();
  auto it = pi_cache_.find(key);
  if (it != pi_cache_.end()) return *it->second;
  if (pi_cache_.size() >= 4096) pi_cache_.clear();
  auto e = std::make_unique<PiEntry>();
  e->tagged = build_ppi_tagged(pi, f_.n);
  const Derivation& d = e->tagged.dag;
  size_t words = static_cast<size_t>(num_vars_) / 64 + 1;
  e->guard_vars.assign(d.size(), std::vector<uint64_t>(words, 0));
  e->guard_of.assign(d.size(), 0);
  for (size_t u = 0; u < d.size(); ++u) {
    const ProofNode& p = d.nodes[u];
    auto& g = e->guard_vars[u];
    if (p.is_leaf()) {
      if (e->tagged.triple_of[u] && f_.guard_map && !f_.unguarded) {
        int v = f_.guard_map->guard_lit(codec_, *e->tagged.triple_of[u]).var();
        e->guard_of[u] = v;
        g[v / 64] |= uint64_t{1} << (v % 64);
      }
      continue;
    }
    for (size_t w = 0; w < words; ++w) {
      g[w] = e->guard_vars[p.p1][w] | e->guard_vars[p.p2][w];
    }
  }
  return *pi_cache_.emplace(std::move(key), std::move(e)).first->second;
}

// A literal falsifying a not-yet-learned T leaf below `u` whose guard is
// `guard_var`, if any such leaf is still open under the trail.
std::optional<Lit> Solver::blocking_literal(const PiEntry& e, NodeId u, int guard_var) {
  const Derivation& d = e.tagged.dag;
  std::vector<char> seen(d.size(), 0);
  std::vector<NodeId> stack{u};
  while (!stack.empty()) {
    NodeId w = stack.back();
    stack.pop_back();
    if (seen[w]) continue;
    seen[w] = 1;
    if (!((e.guard_vars[w][guard_var / 64] >> (guard_var % 64)) & 1)) continue;
    const ProofNode& p = d.nodes[w];
    if (!p.is_leaf()) {
      stack.push_back(p.p2);
      stack.push_back(p.p1);
      continue;
    }
    if (e.guard_of[w] != guard_var) continue;
    const Triple& t = *e.tagged.triple_of[w];
    if (learned_set_[triple_index(f_.n, t)]) continue;
    Clause tc = transitivity_clause(codec_, t);
    bool satisfied = false;
    std::optional<Lit> open;
    for (Lit l : tc) {
      int v = value(l);
      if (v == 1) satisfied = true;
      if (v < 0 && !open) open = l;
    }
    if (!satisfied && open) return ~*open;
  }
  return std::nullopt;
}

Lit Solver::pick_decision() {
  if (trail_.size() >= static_cast<size_t>(num_vars_)) {
    throw Error(ErrorKind::kContract, "pick_decision with every variable assigned");
  }
  const int n = f_.n;
  // Closure of the order given by the trail.
  std::vector<VertexSet> reach(n, 0);
  for (Lit l : trail_) {
    auto [i, j] = codec_.decode(l);
    reach[i] |= bit(j);
  }
  for (Vertex k = 0; k < n; ++k) {
    for (Vertex i = 0; i < n; ++i) {
      if ((reach[i] >> k) & 1) reach[i] |= reach[k];
    }
  }
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      Lit x = codec_.encode(i, j);
      if (value(x) >= 0) continue;
      if ((reach[i] >> j) & 1) {
        ++stats_.closure_decisions;
        return codec_.encode(j, i);
      }
      if ((reach[j] >> i) & 1) {
        ++stats_.closure_decisions;
        return x;
      }
    }
  }
  // The trail order is acyclic here, so its associated bipartite order exists.
  std::vector<VertexPair> pairs;
  VertexSet has_pred = 0;
  for (Vertex i = 0; i < n; ++i) has_pred |= reach[i];
  for (Vertex i = 0; i < n; ++i) {
    if ((has_pred >> i) & 1) continue;
    for (Vertex j = 0; j < n; ++j) {
      if ((reach[i] >> j) & 1) pairs.emplace_back(i, j);
    }
  }
  if (n >= 2) {
    const PiEntry& e = pi_entry(Bpo(n, pairs));
    const Derivation& d = e.tagged.dag;
    NodeId u = d.root;
    while (!d.nodes[u].is_leaf()) {
      const ProofNode& p = d.nodes[u];
      int v = value(p.pivot);
      if (v == 1) {
        u = p.p2;
      } else if (v == 0) {
        u = p.p1;
      } else {
        if (auto b = blocking_literal(e, u, p.pivot.var())) {
          ++stats_.blocking_decisions;
          return *b;
        }
        ++stats_.traversal_decisions;
        bool flip = mix(config_.seed ^ static_cast<uint64_t>(p.pivot.var())) & 1;
        return flip ? p.pivot : ~p.pivot;
      }
    }
  }
  ++stats_.fallback_decisions;
  for (int v = 1; v <= num_vars_; ++v) {
    if (value_[v] < 0) return Lit(v);
  }
  throw Error(ErrorKind::kContract, "no unassigned variable");
}

SolveResult Solver::solve() {
  while (!done_) {
    int c = propagate();
    if (c >= 0) {
      on_conflict(c);
      if (config_.max_conflicts && stats_.conflicts >= config_.max_conflicts && !done_) break;
      continue;
    }
    decide(pick_decision());
  }
  SolveResult r;
  r.status = done_ ? SolveStatus::kUnsat : SolveStatus::kUnknown;
  r.stats = stats_;
  r.learned = learned_;
  r.learned_triples = learned_triples_;
  if (config_.trace && done_) {
    proof_.root = root_;
    r.trace = proof_;
    r.marks = marks_;
  }
  return r;
}

SolveResult solve(const FormulaInstance& f, SolverConfig config) {
  Solver s(f, config);
  return s.solve();
}

}  // namespace ggt
