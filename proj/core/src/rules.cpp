#include "ggt/rules.hpp"

#include <algorithm>

namespace ggt {

namespace {

Clause union_without(const Clause& a, const Clause& b, Lit x) {
  std::vector<Lit> lits;
  lits.reserve(a.size() + b.size());
  for (Lit l : a) {
    if (l != x) lits.push_back(l);
  }
  for (Lit l : b) {
    if (l != ~x) lits.push_back(l);
  }
  return Clause::from(lits);
}

}  // namespace

Clause apply_rule(Rule mode, const Clause& a, const Clause& b, Lit x) {
  if (!x.valid()) throw Error(ErrorKind::kMissingPivot, "no pivot given");
  if (a.contains(~x) || b.contains(x)) {
    throw Error(ErrorKind::kMissingPivot,
                "pivot " + std::to_string(x.code) + " has the wrong polarity in a premise");
  }
  bool in_a = a.contains(x);
  bool in_b = b.contains(~x);
  switch (mode) {
    case Rule::kResolve:
      if (!in_a || !in_b) {
        throw Error(ErrorKind::kMissingPivot,
                    "pivot " + std::to_string(x.code) + " missing from " +
                        (in_a ? "second" : "first") + " premise");
      }
      return union_without(a, b, x);
    case Rule::kWResolve:
      return union_without(a, b, x);
    case Rule::kDegenResolve:
      if (in_a && in_b) return union_without(a, b, x);
      if (in_a) return b;
      if (in_b) return a;
      return std::min(a, b);
    default:
      throw Error(ErrorKind::kContract, "apply_rule needs an inference rule");
  }
}

}  // namespace ggt
