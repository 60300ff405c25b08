#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ggt/literal.hpp"

namespace ggt {

using VertexPair = std::pair<Vertex, Vertex>;

/// Bit row per vertex; supports n <= 64.
using VertexSet = uint64_t;

constexpr VertexSet bit(Vertex v) { return VertexSet{1} << v; }

/// A set of ordered pairs consistent with some partial order, together with
/// its transitive closure.
class PartialSpec {
 public:
  /// Throws kDomain if the pairs contain a cycle or a loop.
  PartialSpec(int n, std::span<const VertexPair> pairs);

  /// The pair set {(i,j) : \bar x_{i,j} in lits}.
  static PartialSpec from_literals(const VarCodec& codec,
                                   std::span<const Lit> lits);

  int n() const { return n_; }
  const std::vector<VertexPair>& pairs() const { return pairs_; }
  bool precedes(Vertex i, Vertex j) const { return (direct_[i] >> j) & 1; }
  bool precedes_closure(Vertex i, Vertex j) const {
    return (closure_[i] >> j) & 1;
  }
  VertexSet closure_row(Vertex i) const { return closure_[i]; }
  bool minimal(Vertex i) const;

 private:
  int n_;
  std::vector<VertexPair> pairs_;
  std::vector<VertexSet> direct_;
  std::vector<VertexSet> closure_;
};

/// Bipartite partial order: a relation whose domain and range are disjoint.
class Bpo {
 public:
  Bpo() = default;
  /// Throws kDomain if domain and range intersect or a vertex is out of
  /// range.
  Bpo(int n, std::span<const VertexPair> pairs);

  int n() const { return n_; }
  bool precedes(Vertex i, Vertex k) const { return (succ_[i] >> k) & 1; }
  VertexSet successors(Vertex i) const { return succ_[i]; }
  bool is_minimal(Vertex v) const { return (minimals_ >> v) & 1; }
  VertexSet minimals() const { return minimals_; }
  std::vector<Vertex> minimal_list() const;
  /// Pairs in lexicographic order.
  std::vector<VertexPair> pairs() const;
  size_t size() const;
  bool empty() const { return size() == 0; }
  std::string str() const;

  friend bool operator==(const Bpo& a, const Bpo& b) {
    return a.n_ == b.n_ && a.succ_ == b.succ_;
  }

 private:
  int n_ = 0;
  std::vector<VertexSet> succ_;
  VertexSet minimals_ = 0;
};

/// pi = {(i,j) : i is tau-minimal and i precedes j in the closure of tau}.
Bpo associated_bpo(const PartialSpec& tau);

/// The clause {\bar x_{i,j} : i precedes j in pi}.
Clause bpo_clause(const Bpo& pi, const VarCodec& codec);

}  // namespace ggt
