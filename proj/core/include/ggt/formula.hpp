#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ggt/bpo.hpp"
#include "ggt/literal.hpp"

namespace ggt {

enum class Family { kGT, kGGT, kGTPi };

std::string family_name(Family f);
Family parse_family(const std::string& name);

/// Vertices of a transitivity clause T_{i,j,k} = \bar x_{i,j} v \bar x_{j,k}
/// v \bar x_{k,i}. The three rotations denote the same clause.
struct Triple {
  Vertex i = 0, j = 0, k = 0;

  /// Rotation with the smallest vertex first.
  Triple canonical() const;
  Triple rotated() const { return {j, k, i}; }
  friend bool operator==(const Triple&, const Triple&) = default;
};

Clause transitivity_clause(const VarCodec& codec, const Triple& t);

/// Recognises a clause of the form T_{i,j,k}; returns the canonical triple.
std::optional<Triple> match_transitivity(const VarCodec& codec,
                                         const Clause& c);

/// Canonical representatives of all cyclic classes of distinct triples, in
/// lexicographic order.
std::vector<Triple> canonical_triples(int n);

/// Guard pair (r,s) per cyclic class, drawn from a seeded generator.
class GuardMap {
 public:
  GuardMap() = default;
  GuardMap(int n, uint64_t seed);

  int n() const { return n_; }
  uint64_t seed() const { return seed_; }
  std::pair<Vertex, Vertex> at(const Triple& t) const;
  /// The literal x_{r,s}; the other guarded copy carries its negation.
  Lit guard_lit(const VarCodec& codec, const Triple& t) const {
    auto [r, s] = at(t);
    return codec.encode(r, s);
  }

 private:
  size_t index(const Triple& t) const {
    return (static_cast<size_t>(t.i) * n_ + t.j) * n_ + t.k;
  }

  int n_ = 0;
  uint64_t seed_ = 0;
  std::vector<std::pair<Vertex, Vertex>> table_;
};

struct FormulaInstance {
  Family family = Family::kGT;
  int n = 0;
  uint64_t seed = 0;
  /// Set when a GGT instance was requested for n < 4 and plain GT clauses
  /// were emitted instead.
  bool unguarded = false;
  std::vector<Clause> clauses;
  std::optional<GuardMap> guard_map;
  std::optional<Bpo> pi;

  friend bool operator==(const FormulaInstance& a, const FormulaInstance& b) {
    return a.family == b.family && a.n == b.n && a.seed == b.seed &&
           a.unguarded == b.unguarded && a.clauses == b.clauses &&
           a.pi == b.pi;
  }
};

/// The clause \/_{j != i} x_{j,i}.
Clause alpha_clause(const VarCodec& codec, Vertex i);

GuardMap guards(int n, uint64_t seed);
FormulaInstance gen_gt(int n);
FormulaInstance gen_ggt(int n, uint64_t seed);
FormulaInstance gen_gt_pi(int n, const Bpo& pi);

/// For a GT_{pi,n} triple class, the rotation (i,j,k) with i,j minimal,
/// i not before k and j before k, if the class is of that kind.
std::optional<Triple> gamma_rotation(const Bpo& pi, const Triple& t);

}  // namespace ggt
