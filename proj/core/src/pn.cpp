#include "ggt/pn.hpp"

#include "ggt/rules.hpp"

namespace ggt {

namespace {

class DagBuilder {
 public:
  DagBuilder(const VarCodec& codec, TaggedDag& out) : codec_(codec), out_(out) {}

  NodeId axiom(Clause c, std::optional<Triple> t = std::nullopt) {
    NodeId id = out_.dag.add_axiom(std::move(c));
    out_.triple_of.push_back(t);
    return id;
  }

  NodeId resolve(NodeId a, NodeId b, Lit pivot) {
    Clause c = apply_rule(Rule::kResolve, out_.dag[a].clause, out_.dag[b].clause, pivot);
    NodeId id = out_.dag.add_inference(Rule::kResolve, pivot, a, b, std::move(c));
    out_.triple_of.push_back(std::nullopt);
    return id;
  }

  /// Resolves `a` with the axiom T_{t.i,t.j,t.k} on `pivot`.
  NodeId resolve_with_t(NodeId a, const Triple& t, Lit pivot) {
    NodeId leaf = axiom(transitivity_clause(codec_, t), t);
    return resolve(a, leaf, pivot);
  }

 private:
  const VarCodec& codec_;
  TaggedDag& out_;
};

}  // namespace

TaggedDag build_ppi_tagged(const Bpo& pi, int n) {
  if (n < 2) throw Error(ErrorKind::kSize, "P_pi needs n >= 2");
  if (pi.n() != n && !(pi.n() == 0 && pi.empty())) {
    throw Error(ErrorKind::kDomain, "order and size disagree");
  }
  VarCodec codec(n);
  TaggedDag out;
  out.dag.family = pi.empty() ? Family::kGT : Family::kGTPi;
  out.dag.n = n;
  out.dag.shape = Shape::kDag;
  DagBuilder b(codec, out);

  auto precedes = [&](Vertex i, Vertex k) { return !pi.empty() && pi.precedes(i, k); };
  std::vector<Vertex> mins;
  std::vector<Vertex> others;
  std::vector<Vertex> first_pred(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    bool minimal = pi.empty() || pi.is_minimal(v);
    (minimal ? mins : others).push_back(v);
  }
  for (Vertex k : others) {
    for (Vertex j : mins) {
      if (precedes(j, k)) {
        first_pred[k] = j;
        break;
      }
    }
  }

  const int m = static_cast<int>(mins.size());
  std::vector<NodeId> a_node(m);
  for (int a = 0; a < m; ++a) {
    Vertex i = mins[a];
    NodeId cur = b.axiom(alpha_clause(codec, i));
    for (Vertex k : others) {
      if (precedes(i, k)) continue;
      cur = b.resolve_with_t(cur, Triple{i, first_pred[k], k}, codec.encode(k, i));
    }
    a_node[a] = cur;
  }

  for (int t = m - 1; t >= 1; --t) {
    const Vertex vt = mins[t];
    for (int a = 0; a < t; ++a) {
      const Vertex va = mins[a];
      NodeId chain = a_node[t];
      for (int c = 0; c < t; ++c) {
        if (c == a) continue;
        const Vertex vc = mins[c];
        chain = b.resolve_with_t(chain, Triple{vc, vt, va}, codec.encode(vc, vt));
      }
      a_node[a] = b.resolve(a_node[a], chain, codec.encode(vt, va));
    }
  }
  if (m == 0) throw Error(ErrorKind::kDomain, "order has no minimal element");
  out.dag.root = a_node[0];
  return out;
}

Derivation build_ppi(const Bpo& pi, int n) { return build_ppi_tagged(pi, n).dag; }

Derivation build_pn(int n) { return build_ppi(Bpo(n, {}), n); }

}  // namespace ggt
