#include "ggt/propagate.hpp"

#include <algorithm>

namespace ggt {

bool PropagationResult::assigned_true(Lit l) const {
  return std::find(trail.begin(), trail.end(), l) != trail.end();
}

PropagationResult unit_propagate(std::span<const Clause> clauses,
                                 std::span<const Lit> assumptions) {
  int32_t max_var = 0;
  for (const Clause& c : clauses) {
    for (Lit l : c) max_var = std::max(max_var, l.var());
  }
  for (Lit l : assumptions) max_var = std::max(max_var, l.var());

  std::vector<int8_t> value(max_var + 1, 0);
  auto val = [&](Lit l) -> int8_t {
    int8_t v = value[l.var()];
    return l.positive() ? v : static_cast<int8_t>(-v);
  };

  // occurrence lists of negative images: clauses that lose a literal when
  // `l` becomes true are those containing ~l.
  std::vector<std::vector<int>> occ(2 * (max_var + 1));
  auto slot = [](Lit l) { return 2 * l.var() + (l.positive() ? 1 : 0); };
  for (size_t ci = 0; ci < clauses.size(); ++ci) {
    for (Lit l : clauses[ci]) occ[slot(l)].push_back(static_cast<int>(ci));
  }

  PropagationResult res;
  std::vector<int> false_count(clauses.size(), 0);
  size_t head = 0;

  auto assign = [&](Lit l, int reason) {
    value[l.var()] = l.positive() ? 1 : -1;
    res.trail.push_back(l);
    res.reason.push_back(reason);
  };

  for (Lit l : assumptions) {
    int8_t v = val(l);
    if (v < 0) throw Error(ErrorKind::kContract, "inconsistent assumptions");
    if (v == 0) assign(l, -1);
  }

  auto examine = [&](int ci) -> bool {
    const Clause& c = clauses[ci];
    Lit unassigned;
    int free = 0;
    for (Lit l : c) {
      int8_t v = val(l);
      if (v > 0) return true;
      if (v == 0) {
        ++free;
        unassigned = l;
      }
    }
    if (free == 0) {
      res.conflict = true;
      res.conflict_clause = ci;
      return false;
    }
    if (free == 1) assign(unassigned, ci);
    return true;
  };

  for (size_t ci = 0; ci < clauses.size(); ++ci) {
    if (clauses[ci].size() <= 1 && !examine(static_cast<int>(ci))) return res;
  }
  while (head < res.trail.size()) {
    Lit l = res.trail[head++];
    for (int ci : occ[slot(~l)]) {
      ++false_count[ci];
      if (false_count[ci] + 1 >= static_cast<int>(clauses[ci].size()) &&
          !examine(ci)) {
        return res;
      }
    }
  }
  return res;
}

bool semantic_entails(std::span<const Clause> clauses, const Clause& c, int n) {
  if (n > 5) {
    throw Error(ErrorKind::kSize, "semantic oracle is limited to n <= 5");
  }
  const int vars = n * (n - 1) / 2;
  auto masks = [](const Clause& cl) {
    uint32_t pos = 0, neg = 0;
    for (Lit l : cl) {
      if (l.positive()) pos |= 1u << (l.var() - 1);
      else neg |= 1u << (l.var() - 1);
    }
    return std::pair{pos, neg};
  };
  std::vector<std::pair<uint32_t, uint32_t>> cm;
  cm.reserve(clauses.size());
  for (const Clause& cl : clauses) {
    for (Lit l : cl) {
      if (l.var() > vars) throw Error(ErrorKind::kDomain, "literal exceeds n");
    }
    cm.push_back(masks(cl));
  }
  auto [tp, tn] = masks(c);
  for (uint32_t a = 0; a < (1u << vars); ++a) {
    bool sat = true;
    for (auto [p, q] : cm) {
      if (!((p & a) | (q & ~a))) {
        sat = false;
        break;
      }
    }
    if (sat && !((tp & a) | (tn & ~a))) return false;
  }
  return true;
}

}  // namespace ggt
