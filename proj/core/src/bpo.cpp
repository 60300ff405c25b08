#include "ggt/bpo.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace ggt {

namespace {

void check_vertex(int n, Vertex v) {
  if (v < 0 || v >= n) {
    throw Error(ErrorKind::kDomain, "vertex " + std::to_string(v) +
                                        " out of range for n=" +
                                        std::to_string(n));
  }
}

}  // namespace

PartialSpec::PartialSpec(int n, std::span<const VertexPair> pairs)
    : n_(n), direct_(n, 0), closure_(n, 0) {
  if (n < 1 || n > 64) throw Error(ErrorKind::kSize, "n must be in [1,64]");
  for (auto [i, j] : pairs) {
    check_vertex(n, i);
    check_vertex(n, j);
    if (i == j) throw Error(ErrorKind::kDomain, "loop in partial specification");
    direct_[i] |= bit(j);
  }
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = 0; j < n; ++j) {
      if (precedes(i, j)) pairs_.emplace_back(i, j);
    }
  }
  closure_ = direct_;
  // Warshall over bit rows.
  for (Vertex k = 0; k < n; ++k) {
    for (Vertex i = 0; i < n; ++i) {
      if ((closure_[i] >> k) & 1) closure_[i] |= closure_[k];
    }
  }
  for (Vertex i = 0; i < n; ++i) {
    if ((closure_[i] >> i) & 1) {
      throw Error(ErrorKind::kDomain,
                  "partial specification is cyclic through vertex " +
                      std::to_string(i));
    }
  }
}

PartialSpec PartialSpec::from_literals(const VarCodec& codec,
                                       std::span<const Lit> lits) {
  std::vector<VertexPair> pairs;
  pairs.reserve(lits.size());
  for (Lit l : lits) pairs.push_back(codec.decode_neg(l));
  return PartialSpec(codec.n(), pairs);
}

bool PartialSpec::minimal(Vertex i) const {
  for (Vertex j = 0; j < n_; ++j) {
    if (precedes(j, i)) return false;
  }
  return true;
}

Bpo::Bpo(int n, std::span<const VertexPair> pairs) : n_(n), succ_(n, 0) {
  if (n < 1 || n > 64) throw Error(ErrorKind::kSize, "n must be in [1,64]");
  VertexSet domain = 0;
  VertexSet range = 0;
  for (auto [i, j] : pairs) {
    check_vertex(n, i);
    check_vertex(n, j);
    if (i == j) throw Error(ErrorKind::kDomain, "loop in bipartite order");
    succ_[i] |= bit(j);
    domain |= bit(i);
    range |= bit(j);
  }
  if (domain & range) {
    throw Error(ErrorKind::kDomain,
                "domain and range of bipartite order intersect");
  }
  VertexSet all = n == 64 ? ~VertexSet{0} : (bit(n) - 1);
  minimals_ = all & ~range;
}

std::vector<Vertex> Bpo::minimal_list() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n_; ++v) {
    if (is_minimal(v)) out.push_back(v);
  }
  return out;
}

std::vector<VertexPair> Bpo::pairs() const {
  std::vector<VertexPair> out;
  for (Vertex i = 0; i < n_; ++i) {
    for (Vertex j = 0; j < n_; ++j) {
      if (precedes(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

size_t Bpo::size() const {
  size_t s = 0;
  for (VertexSet row : succ_) s += std::popcount(row);
  return s;
}

std::string Bpo::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto [i, j] : pairs()) {
    if (!first) os << ',';
    os << i << '<' << j;
    first = false;
  }
  return os.str();
}

Bpo associated_bpo(const PartialSpec& tau) {
  std::vector<VertexPair> pairs;
  for (Vertex i = 0; i < tau.n(); ++i) {
    if (!tau.minimal(i)) continue;
    for (Vertex j = 0; j < tau.n(); ++j) {
      if (tau.precedes_closure(i, j)) pairs.emplace_back(i, j);
    }
  }
  return Bpo(tau.n(), pairs);
}

Clause bpo_clause(const Bpo& pi, const VarCodec& codec) {
  std::vector<Lit> lits;
  for (auto [i, j] : pi.pairs()) lits.push_back(codec.encode_neg(i, j));
  return Clause::from(lits);
}

}  // namespace ggt
