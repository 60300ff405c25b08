#include "ggt/refutation.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

#include "ggt/bpo.hpp"
#include "ggt/pn.hpp"
#include "ggt/rules.hpp"

namespace ggt {

namespace {

[[noreturn]] void construction_error(const std::string& msg) {
  throw Error(ErrorKind::kConstruction, msg);
}

enum class Kind : uint8_t { kAxiom, kLemma, kResolve, kUnfinished };

/// Node of the growing tree. `pivot` is the literal carried by the left
/// premise.
struct RNode {
  Clause clause;
  Kind kind = Kind::kAxiom;
  int left = -1, right = -1, parent = -1;
  Lit pivot;
  int lemma = -1;
  bool target = false;
  bool input = true;
  /// Transitivity leaf of a case-(iv) subproof awaiting classification.
  bool pending = false;
  Triple triple;
};

/// Node of a dag segment about to be unfolded. kLemma refers to a tree node.
struct SNode {
  Clause clause;
  Kind kind = Kind::kAxiom;
  int p1 = -1, p2 = -1;
  Lit pivot;
  int lemma = -1;
};

class Arena {
 public:
  std::vector<RNode> nodes;

  int add(RNode n) {
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size() - 1);
  }

  int leaf(Clause c) {
    RNode n;
    n.clause = std::move(c);
    return add(std::move(n));
  }

  int lemma_ref(int target) {
    nodes[target].target = true;
    RNode n;
    n.clause = nodes[target].clause;
    n.kind = Kind::kLemma;
    n.lemma = target;
    return add(std::move(n));
  }

  /// Makes `slot` (or a new node) an inference over existing children.
  int join(int slot, int left, int right, Lit pivot) {
    Clause c = apply_rule(Rule::kResolve, nodes[left].clause, nodes[right].clause, pivot);
    if (slot < 0) slot = add(RNode{});
    RNode& n = nodes[slot];
    n.clause = std::move(c);
    n.kind = Kind::kResolve;
    n.left = left;
    n.right = right;
    n.pivot = pivot;
    n.input = (is_leaf(left) || is_leaf(right)) && nodes[left].input && nodes[right].input;
    nodes[left].parent = slot;
    nodes[right].parent = slot;
    return slot;
  }

  bool is_leaf(int id) const {
    return nodes[id].kind == Kind::kAxiom || nodes[id].kind == Kind::kLemma;
  }

  /// Recomputes conclusions below `from` until one is unchanged.
  void propagate_down(int from) {
    for (int p = nodes[from].parent; p >= 0; p = nodes[p].parent) {
      RNode& n = nodes[p];
      Clause c = apply_rule(Rule::kResolve, nodes[n.left].clause, nodes[n.right].clause, n.pivot);
      if (c == n.clause) return;
      if (n.target) construction_error("literal propagation would modify a lemma target");
      n.clause = std::move(c);
    }
  }

  /// Literals on the branch from `id` to the root.
  std::vector<char> cplus(int id, int num_vars) const {
    std::vector<char> mark(2 * (num_vars + 1), 0);
    for (int p = id; p >= 0; p = nodes[p].parent) {
      for (Lit l : nodes[p].clause) mark[slot(l)] = 1;
    }
    return mark;
  }

  static size_t slot(Lit l) { return 2 * static_cast<size_t>(l.var()) + (l.positive() ? 1 : 0); }
};

/// Copies a dag segment into tree form. Pool mode references the first
/// copy of a shared node; input mode references only copies derived by
/// input derivations and re-expands the rest.
class Unfolder {
 public:
  Unfolder(const std::vector<SNode>& dag, Arena& arena, LemmaMode mode)
      : dag_(dag), arena_(arena), mode_(mode), copy_(dag.size(), -1) {}

  int emit(int v, int slot = -1) {
    const SNode& s = dag_[v];
    if (copy_[v] >= 0 && slot < 0) return arena_.lemma_ref(copy_[v]);
    int id;
    switch (s.kind) {
      case Kind::kAxiom:
        id = place_leaf(slot, s.clause);
        return id;
      case Kind::kLemma: {
        int r = arena_.lemma_ref(s.lemma);
        if (slot < 0) return r;
        arena_.nodes[slot].clause = arena_.nodes[r].clause;
        arena_.nodes[slot].kind = Kind::kLemma;
        arena_.nodes[slot].lemma = s.lemma;
        arena_.nodes[slot].input = true;
        arena_.nodes.pop_back();
        return slot;
      }
      default: {
        int l = emit(s.p1);
        int r = emit(s.p2);
        id = arena_.join(slot, l, r, s.pivot);
        if (mode_ == LemmaMode::kPool || arena_.nodes[id].input) copy_[v] = id;
        return id;
      }
    }
  }

  int copy_of(int v) const { return copy_[v]; }

 private:
  int place_leaf(int slot, const Clause& c) {
    if (slot < 0) return arena_.leaf(c);
    RNode& n = arena_.nodes[slot];
    n.clause = c;
    n.kind = Kind::kAxiom;
    n.input = true;
    return slot;
  }

  const std::vector<SNode>& dag_;
  Arena& arena_;
  LemmaMode mode_;
  std::vector<int> copy_;
};

Derivation to_derivation(const Arena& arena, int root, Family family, int n, uint64_t seed) {
  Derivation d;
  d.family = family;
  d.n = n;
  d.seed = seed;
  d.shape = Shape::kTreeWithLemmas;
  std::vector<NodeId> id(arena.nodes.size(), kNoNode);
  std::vector<std::pair<int, int>> stack{{root, 0}};
  while (!stack.empty()) {
    auto [v, state] = stack.back();
    const RNode& node = arena.nodes[v];
    if (node.kind == Kind::kResolve && state < 2) {
      stack.back().second = state + 1;
      stack.push_back({state == 0 ? node.left : node.right, 0});
      continue;
    }
    stack.pop_back();
    switch (node.kind) {
      case Kind::kAxiom:
        id[v] = d.add_axiom(node.clause);
        break;
      case Kind::kLemma:
        if (id[node.lemma] == kNoNode) construction_error("lemma target is not earlier in postorder");
        id[v] = d.add_lemma_ref(id[node.lemma]);
        break;
      case Kind::kResolve:
        id[v] = d.add_inference(Rule::kResolve, node.pivot, id[node.left], id[node.right], node.clause);
        break;
      case Kind::kUnfinished:
        construction_error("unfinished leaf left in the tree");
    }
  }
  return d;
}

long dag_depth(const std::vector<SNode>& dag, int root) {
  std::vector<long> depth(dag.size(), -1);
  std::function<long(int)> go = [&](int v) -> long {
    if (depth[v] >= 0) return depth[v];
    const SNode& s = dag[v];
    long d = 0;
    if (s.kind == Kind::kResolve) d = 1 + std::max(go(s.p1), go(s.p2));
    return depth[v] = d;
  };
  return go(root);
}

/// Dag postorder (first premise first) from `root`.
std::vector<int> dag_postorder(const std::vector<SNode>& dag, int root) {
  std::vector<int> order;
  std::vector<char> seen(dag.size(), 0);
  std::vector<std::pair<int, int>> stack{{root, 0}};
  while (!stack.empty()) {
    auto [v, state] = stack.back();
    const SNode& s = dag[v];
    if (s.kind == Kind::kResolve && state < 2) {
      stack.back().second = state + 1;
      int next = state == 0 ? s.p1 : s.p2;
      if (!seen[next]) stack.push_back({next, 0});
      continue;
    }
    stack.pop_back();
    if (!seen[v]) {
      seen[v] = 1;
      order.push_back(v);
    }
  }
  return order;
}

struct Event {
  bool release;
  int node;
  Triple triple;
};

class Engine {
 public:
  Engine(int n, uint64_t seed, LemmaMode mode)
      : n_(n), seed_(seed), mode_(mode), codec_(n), guards_(n, seed) {}

  Refutation run() {
    const long triples = static_cast<long>(n_) * (n_ - 1) * (n_ - 2) / 6;
    RNode root;
    root.kind = Kind::kUnfinished;
    int r = arena_.add(std::move(root));
    work_.push_back({false, r, {}});
    unfinished_ = 1;
    while (!work_.empty()) {
      Event e = work_.front();
      work_.pop_front();
      if (e.release) {
        learned_.emplace(key(e.triple), e.node);
        continue;
      }
      ++stats_.stages;
      if (stats_.stages > 6 * triples) construction_error("stage bound exceeded");
      handle(e.node);
      if (stats_.case_iv > 2 * triples) construction_error("case (iv) bound exceeded");
    }
    Refutation out;
    out.proof = to_derivation(arena_, r, Family::kGGT, n_, seed_);
    stats_.lines = out.proof.size();
    stats_.max_width = out.proof.max_width();
    out.stats = std::move(stats_);
    return out;
  }

 private:
  static long key(const Triple& t) {
    Triple c = t.canonical();
    return (static_cast<long>(c.i) * 64 + c.j) * 64 + c.k;
  }

  bool learned(const Triple& t) const { return learned_.count(key(t)) > 0; }

  void handle(int u) {
    const int nv = codec_.num_vars();
    std::vector<char> cp = arena_.cplus(u, nv);
    std::vector<VertexPair> pairs;
    for (int32_t v = 1; v <= nv; ++v) {
      for (Lit l : {Lit(v), Lit(-v)}) {
        if (cp[Arena::slot(l)]) pairs.push_back(codec_.decode_neg(l));
      }
    }
    Bpo pi;
    try {
      pi = associated_bpo(PartialSpec(n_, pairs));
    } catch (const Error& e) {
      construction_error("stage " + std::to_string(stats_.stages) +
                         ": branch literals are not a partial order: " + e.what());
    }
    const Clause& c = arena_.nodes[u].clause;
    if (c != bpo_clause(pi, codec_)) {
      construction_error("stage " + std::to_string(stats_.stages) + ": unfinished clause " +
                         c.str() + " differs from the order clause of " + pi.str());
    }

    TaggedDag ppi = build_ppi_tagged(pi, n_);
    const int size = static_cast<int>(ppi.dag.size());
    const size_t words = (nv + 64) / 64;
    std::vector<uint64_t> above(size * words, 0);
    for (int v = size - 1; v >= 0; --v) {
      const ProofNode& node = ppi.dag[v];
      if (node.is_leaf()) continue;
      for (int p : {node.p1, node.p2}) {
        for (size_t w = 0; w < words; ++w) above[p * words + w] |= above[v * words + w];
        int32_t pv = node.pivot.var();
        above[p * words + pv / 64] |= uint64_t{1} << (pv % 64);
      }
    }

    std::vector<SNode> dag(size);
    for (int v = 0; v < size; ++v) {
      const ProofNode& node = ppi.dag[v];
      dag[v].clause = node.clause;
      dag[v].kind = node.is_leaf() ? Kind::kAxiom : Kind::kResolve;
      dag[v].p1 = node.p1;
      dag[v].p2 = node.p2;
      dag[v].pivot = node.pivot;
    }
    const int root = ppi.dag.root;
    std::vector<int> order = dag_postorder(dag, root);

    enum class Case { kLearned, kGuarded, kDerive };
    std::vector<std::pair<int, Case>> plan;
    std::vector<Lit> guard_used(size);
    for (int v : order) {
      if (!ppi.triple_of[v]) continue;
      const Triple t = *ppi.triple_of[v];
      if (learned(t)) {
        plan.push_back({v, Case::kLearned});
        continue;
      }
      Lit g = guards_.guard_lit(codec_, t);
      if (cp[Arena::slot(g)] || cp[Arena::slot(~g)]) {
        guard_used[v] = cp[Arena::slot(g)] ? g : ~g;
        plan.push_back({v, Case::kGuarded});
        continue;
      }
      if (!((above[v * words + g.var() / 64] >> (g.var() % 64)) & 1)) {
        plan.push_back({v, Case::kDerive});
        continue;
      }
      ++stats_.case_iv;
      trace("iv", u);
      learn_by_branching(u, pi, t);
      return;
    }

    std::vector<std::pair<int, Triple>> derived;
    for (auto [v, kind] : plan) {
      const Triple t = *ppi.triple_of[v];
      SNode& s = dag[v];
      switch (kind) {
        case Case::kLearned:
          ++stats_.case_i;
          s.kind = Kind::kLemma;
          s.lemma = learned_.at(key(t));
          break;
        case Case::kGuarded:
          ++stats_.case_ii;
          s.clause.insert(guard_used[v]);
          break;
        case Case::kDerive: {
          ++stats_.case_iii;
          Lit g = guards_.guard_lit(codec_, t);
          SNode a, b;
          a.clause = s.clause;
          a.clause.insert(g);
          b.clause = s.clause;
          b.clause.insert(~g);
          dag.push_back(std::move(a));
          dag.push_back(std::move(b));
          SNode& s2 = dag[v];
          s2.kind = Kind::kResolve;
          s2.p1 = static_cast<int>(dag.size()) - 2;
          s2.p2 = static_cast<int>(dag.size()) - 1;
          s2.pivot = g;
          derived.push_back({v, t});
          break;
        }
      }
    }
    for (int v : dag_postorder(dag, root)) {
      SNode& s = dag[v];
      if (s.kind == Kind::kResolve) {
        s.clause = apply_rule(Rule::kResolve, dag[s.p1].clause, dag[s.p2].clause, s.pivot);
      }
    }
    stats_.segment_bound += static_cast<long>(dag.size()) * std::max(1L, dag_depth(dag, root));

    trace("P", u);
    Unfolder unf(dag, arena_, mode_);
    unf.emit(root, u);
    for (auto [v, t] : derived) learned_.emplace(key(t), unf.copy_of(v));
    arena_.propagate_down(u);
    --unfinished_;
  }

  /// Case (iv): replaces the leaf by a short left-branching subproof that
  /// derives T from its guarded pair, with bridge chains leading to new
  /// unfinished leaves.
  void learn_by_branching(int u, const Bpo& pi, const Triple& t) {
    const size_t before = arena_.nodes.size();
    auto nb = [&](Vertex a, Vertex b) { return codec_.encode_neg(a, b); };
    auto prec = [&](Vertex a, Vertex b) { return pi.precedes(a, b); };
    const Clause base = arena_.nodes[u].clause;
    auto minus = [&](std::function<bool(Vertex, Vertex)> drop) {
      std::vector<Lit> lits;
      for (Lit l : base) {
        auto [a, b] = codec_.decode_neg(l);
        if (!drop(a, b)) lits.push_back(l);
      }
      return lits;
    };
    auto make = [](std::vector<Lit> lits, std::initializer_list<Lit> extra) {
      lits.insert(lits.end(), extra.begin(), extra.end());
      return Clause::from(lits);
    };
    auto t_leaf = [&](const Triple& tr) {
      RNode n;
      n.clause = transitivity_clause(codec_, tr);
      n.pending = true;
      n.triple = tr;
      return arena_.add(std::move(n));
    };
    auto node = [&](Clause c) {
      RNode n;
      n.clause = std::move(c);
      n.kind = Kind::kUnfinished;
      return arena_.add(std::move(n));
    };
    auto link = [&](int at, int left, int right, Lit pivot) {
      RNode& n = arena_.nodes[at];
      n.kind = Kind::kResolve;
      n.left = left;
      n.right = right;
      n.pivot = pivot;
      arena_.nodes[left].parent = at;
      arena_.nodes[right].parent = at;
    };
    struct Step {
      Vertex b, a, l;
      bool remove;
    };
    // Each step replaces \bar x_{a,l} by \bar x_{b,l} using T_{b,a,l}.
    auto chain = [&](int bottom, const std::vector<Step>& steps) {
      int d = bottom;
      for (const Step& s : steps) {
        Clause up = arena_.nodes[d].clause;
        up.insert(nb(s.b, s.l));
        if (s.remove) up.erase(nb(s.a, s.l));
        int tl = t_leaf(Triple{s.b, s.a, s.l});
        int next = node(std::move(up));
        link(d, tl, next, nb(s.l, s.b));
        d = next;
      }
    };

    std::vector<Vertex> verts(n_);
    for (Vertex v = 0; v < n_; ++v) verts[v] = v;

    if (auto g = gamma_rotation(pi, t)) {
      const Vertex i = g->i, j = g->j, k = g->k;
      int left = node(make(minus([&](Vertex a, Vertex b) { return a == j && prec(i, b); }),
                           {nb(i, j)}));
      int c2 = node(make(minus([&](Vertex a, Vertex b) { return a == i && prec(j, b); }),
                         {nb(j, i)}));
      link(u, left, c2, nb(i, j));
      int tder = t_leaf(Triple{i, j, k});
      int c1 = node(make(minus([&](Vertex a, Vertex b) {
                           return a == j && (b == k || prec(i, b));
                         }),
                         {nb(i, j), nb(i, k)}));
      link(left, tder, c1, nb(k, i));
      std::vector<Step> s1, s2;
      for (Vertex l : verts) {
        if (l != k && prec(j, l) && !prec(i, l)) s1.push_back({i, j, l, true});
        if (prec(i, l) && !prec(j, l)) s2.push_back({j, i, l, true});
      }
      chain(c1, s1);
      chain(c2, s2);
    } else {
      const Vertex i = t.i, j = t.j, k = t.k;
      if (!pi.is_minimal(i) || !pi.is_minimal(j) || !pi.is_minimal(k)) {
        construction_error("case (iv) triple is neither of type beta nor gamma");
      }
      int left1 = node(make(minus([&](Vertex a, Vertex b) {
                              return a == j && prec(i, b) && prec(k, b);
                            }),
                            {nb(i, j)}));
      int c5 = node(make(minus([&](Vertex a, Vertex b) { return a == i && prec(j, b); }),
                         {nb(j, i)}));
      link(u, left1, c5, nb(i, j));
      auto drop_left2 = [&](Vertex a, Vertex b) {
        return (a == j && prec(i, b)) || (a == k && (prec(i, b) || prec(j, b)));
      };
      int left2 = node(make(minus(drop_left2), {nb(i, j), nb(j, k)}));
      int c4 = node(make(minus([&](Vertex a, Vertex b) {
                           return a == j && prec(i, b) && prec(k, b);
                         }),
                         {nb(i, j), nb(k, j)}));
      link(left1, left2, c4, nb(j, k));
      int tder = t_leaf(Triple{i, j, k});
      int c3 = node(make(minus(drop_left2), {nb(i, j), nb(i, k)}));
      link(left2, tder, c3, nb(k, i));
      std::vector<Step> s3, s4, s5;
      for (Vertex l : verts) {
        if (!prec(i, l)) {
          if (prec(j, l)) s3.push_back({i, j, l, true});
          else if (prec(k, l)) s3.push_back({i, k, l, true});
        }
        if (prec(j, l) && !(prec(i, l) && prec(k, l))) {
          if (prec(k, l)) {
            s4.push_back({i, j, l, true});
          } else if (prec(i, l)) {
            s4.push_back({k, j, l, true});
          } else {
            s4.push_back({i, j, l, false});
            s4.push_back({k, j, l, true});
          }
        }
        if (prec(i, l) && !prec(j, l)) s5.push_back({j, i, l, true});
      }
      chain(c3, s3);
      chain(c4, s4);
      chain(c5, s5);
    }

    // Classify the transitivity leaves of the subproof in postorder and
    // queue the new unfinished leaves behind the lemmas they may use.
    std::vector<Event> events;
    std::map<long, int> local;
    std::vector<std::pair<int, int>> stack{{u, 0}};
    const int nv = codec_.num_vars();
    while (!stack.empty()) {
      auto [v, state] = stack.back();
      RNode& node_v = arena_.nodes[v];
      if (node_v.kind == Kind::kResolve && state < 2) {
        stack.back().second = state + 1;
        stack.push_back({state == 0 ? node_v.left : node_v.right, 0});
        continue;
      }
      stack.pop_back();
      if (node_v.kind == Kind::kUnfinished) {
        events.push_back({false, v, {}});
        ++unfinished_;
        continue;
      }
      if (!node_v.pending) continue;
      node_v.pending = false;
      const Triple tr = node_v.triple;
      auto it = local.find(key(tr));
      if (it != local.end() || learned(tr)) {
        int target = it != local.end() ? it->second : learned_.at(key(tr));
        arena_.nodes[target].target = true;
        RNode& leaf = arena_.nodes[v];
        leaf.kind = Kind::kLemma;
        leaf.lemma = target;
        continue;
      }
      Lit g = guards_.guard_lit(codec_, tr);
      std::vector<char> cp = arena_.cplus(v, nv);
      if (cp[Arena::slot(g)] || cp[Arena::slot(~g)]) {
        arena_.nodes[v].clause.insert(cp[Arena::slot(g)] ? g : ~g);
        arena_.propagate_down(v);
        continue;
      }
      Clause tc = arena_.nodes[v].clause;
      Clause a = tc, b = tc;
      a.insert(g);
      b.insert(~g);
      int la = arena_.leaf(std::move(a));
      int lb = arena_.leaf(std::move(b));
      arena_.join(v, la, lb, g);
      local.emplace(key(tr), v);
      events.push_back({true, v, tr});
    }
    --unfinished_;
    stats_.segment_bound += static_cast<long>(arena_.nodes.size() - before);
    for (auto it = events.rbegin(); it != events.rend(); ++it) work_.push_front(*it);
  }

  void trace(const char* what, int u) {
    std::ostringstream os;
    os << "stage=" << stats_.stages << " case=" << what
       << " width=" << arena_.nodes[u].clause.size() << " unfinished=" << unfinished_
       << " learned=" << learned_.size() << " case_iv=" << stats_.case_iv;
    stats_.trace.push_back(os.str());
  }

  int n_;
  uint64_t seed_;
  LemmaMode mode_;
  VarCodec codec_;
  GuardMap guards_;
  Arena arena_;
  std::deque<Event> work_;
  std::map<long, int> learned_;
  long unfinished_ = 0;
  RefutationStats stats_;
};

}  // namespace

Refutation build_refutation(int n, uint64_t seed, LemmaMode mode) {
  if (n < 4) throw Error(ErrorKind::kSize, "guarded refutations need n >= 4");
  return Engine(n, seed, mode).run();
}

Refutation build_pool_refutation(int n, uint64_t seed) {
  return build_refutation(n, seed, LemmaMode::kPool);
}

Refutation build_regrti_refutation(int n, uint64_t seed) {
  return build_refutation(n, seed, LemmaMode::kInput);
}

Derivation unfold(const Derivation& d, LemmaMode mode) {
  std::vector<SNode> dag(d.size());
  for (size_t v = 0; v < d.size(); ++v) {
    const ProofNode& node = d.nodes[v];
    if (node.rule == Rule::kLemmaRef) {
      throw Error(ErrorKind::kUnsupported, "unfold expects a dag without lemma references");
    }
    if (!node.is_leaf() && node.rule != Rule::kResolve) {
      throw Error(ErrorKind::kUnsupported, "unfold expects plain resolution inferences");
    }
    dag[v].clause = node.clause;
    dag[v].kind = node.is_leaf() ? Kind::kAxiom : Kind::kResolve;
    dag[v].p1 = node.p1;
    dag[v].p2 = node.p2;
    dag[v].pivot = node.pivot;
  }
  Arena arena;
  Unfolder unf(dag, arena, mode);
  int root = unf.emit(d.root);
  return to_derivation(arena, root, d.family, d.n, d.seed);
}

Derivation unfold_to_input_lemmas(const Derivation& dag) {
  return unfold(dag, LemmaMode::kInput);
}

}  // namespace ggt
