#include "ggt/formula.hpp"

#include <algorithm>
#include <cctype>
#include <random>

namespace ggt {

std::string family_name(Family f) {
  switch (f) {
    case Family::kGT:
      return "GT";
    case Family::kGGT:
      return "GGT";
    case Family::kGTPi:
      return "GT_PI";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  std::string up = name;
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (up == "GT") return Family::kGT;
  if (up == "GGT") return Family::kGGT;
  if (up == "GT_PI" || up == "GTPI") return Family::kGTPi;
  throw Error(ErrorKind::kUnsupported, "unknown family '" + name + "'");
}

Triple Triple::canonical() const {
  if (i < j && i < k) return *this;
  if (j < i && j < k) return {j, k, i};
  return {k, i, j};
}

Clause transitivity_clause(const VarCodec& codec, const Triple& t) {
  return Clause::from({codec.encode_neg(t.i, t.j), codec.encode_neg(t.j, t.k),
                       codec.encode_neg(t.k, t.i)});
}

std::optional<Triple> match_transitivity(const VarCodec& codec,
                                         const Clause& c) {
  if (c.size() != 3) return std::nullopt;
  std::pair<Vertex, Vertex> e[3];
  for (int t = 0; t < 3; ++t) e[t] = codec.decode_neg(c[t]);
  // The three pairs must form a directed 3-cycle i->j->k->i.
  for (int first = 0; first < 3; ++first) {
    auto [i, j] = e[first];
    for (int second = 0; second < 3; ++second) {
      if (second == first || e[second].first != j) continue;
      Vertex k = e[second].second;
      int third = 3 - first - second;
      if (e[third] == std::pair{k, i} && k != i) {
        return Triple{i, j, k}.canonical();
      }
    }
  }
  return std::nullopt;
}

std::vector<Triple> canonical_triples(int n) {
  std::vector<Triple> out;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      for (Vertex c = a + 1; c < n; ++c) {
        if (c != b) out.push_back({a, b, c});
      }
    }
  }
  return out;
}

GuardMap::GuardMap(int n, uint64_t seed)
    : n_(n), seed_(seed), table_(static_cast<size_t>(n) * n * n) {
  if (n < 4) {
    throw Error(ErrorKind::kSize, "guards need n >= 4, got " + std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  for (const Triple& t : canonical_triples(n)) {
    std::vector<std::pair<Vertex, Vertex>> admissible;
    for (Vertex r = 0; r < n; ++r) {
      for (Vertex s = 0; s < n; ++s) {
        if (r == s) continue;
        auto inside = [&](Vertex v) { return v == t.i || v == t.j || v == t.k; };
        if (inside(r) && inside(s)) continue;
        admissible.emplace_back(r, s);
      }
    }
    table_[index(t)] = admissible[rng() % admissible.size()];
  }
}

std::pair<Vertex, Vertex> GuardMap::at(const Triple& t) const {
  return table_[index(t.canonical())];
}

Clause alpha_clause(const VarCodec& codec, Vertex i) {
  std::vector<Lit> lits;
  for (Vertex j = 0; j < codec.n(); ++j) {
    if (j != i) lits.push_back(codec.encode(j, i));
  }
  return Clause::from(lits);
}

GuardMap guards(int n, uint64_t seed) { return GuardMap(n, seed); }

FormulaInstance gen_gt(int n) {
  if (n < 2) throw Error(ErrorKind::kSize, "GT needs n >= 2");
  VarCodec codec(n);
  FormulaInstance f;
  f.family = Family::kGT;
  f.n = n;
  for (Vertex i = 0; i < n; ++i) f.clauses.push_back(alpha_clause(codec, i));
  for (const Triple& t : canonical_triples(n)) {
    f.clauses.push_back(transitivity_clause(codec, t));
  }
  return f;
}

FormulaInstance gen_ggt(int n, uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::kSize, "GGT needs n >= 2");
  if (n < 4) {
    FormulaInstance f = gen_gt(n);
    f.family = Family::kGGT;
    f.seed = seed;
    f.unguarded = true;
    return f;
  }
  VarCodec codec(n);
  FormulaInstance f;
  f.family = Family::kGGT;
  f.n = n;
  f.seed = seed;
  f.guard_map = GuardMap(n, seed);
  for (Vertex i = 0; i < n; ++i) f.clauses.push_back(alpha_clause(codec, i));
  for (const Triple& t : canonical_triples(n)) {
    Clause base = transitivity_clause(codec, t);
    Lit g = f.guard_map->guard_lit(codec, t);
    Clause pos = base;
    pos.insert(g);
    Clause neg = base;
    neg.insert(~g);
    f.clauses.push_back(std::move(pos));
    f.clauses.push_back(std::move(neg));
  }
  return f;
}

std::optional<Triple> gamma_rotation(const Bpo& pi, const Triple& t) {
  Triple r = t;
  for (int rot = 0; rot < 3; ++rot, r = r.rotated()) {
    if (pi.is_minimal(r.i) && pi.is_minimal(r.j) && !pi.is_minimal(r.k) &&
        !pi.precedes(r.i, r.k) && pi.precedes(r.j, r.k)) {
      return r;
    }
  }
  return std::nullopt;
}

FormulaInstance gen_gt_pi(int n, const Bpo& pi) {
  if (n < 2) throw Error(ErrorKind::kSize, "GT_pi needs n >= 2");
  if (pi.n() != n) {
    throw Error(ErrorKind::kDomain, "bipartite order is over a different n");
  }
  VarCodec codec(n);
  FormulaInstance f;
  f.family = Family::kGTPi;
  f.n = n;
  f.pi = pi;
  for (Vertex i = 0; i < n; ++i) {
    if (pi.is_minimal(i)) f.clauses.push_back(alpha_clause(codec, i));
  }
  for (const Triple& t : canonical_triples(n)) {
    bool beta = pi.is_minimal(t.i) && pi.is_minimal(t.j) && pi.is_minimal(t.k);
    if (beta || gamma_rotation(pi, t)) {
      f.clauses.push_back(transitivity_clause(codec, t));
    }
  }
  return f;
}

}  // namespace ggt
