#include "ggt/literal.hpp"

#include <algorithm>
#include <sstream>

namespace ggt {

VarCodec::VarCodec(int n) : n_(n) {
  if (n < 1 || n > 64) {
    throw Error(ErrorKind::kSize, "vertex count must be in [1,64], got " +
                                      std::to_string(n));
  }
  pairs_.reserve(num_vars());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs_.emplace_back(i, j);
  }
}

Lit VarCodec::encode(Vertex i, Vertex j) const {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw Error(ErrorKind::kInvalidPair, "invalid pair (" + std::to_string(i) +
                                             "," + std::to_string(j) + ")");
  }
  if (i < j) return Lit(i * n_ - i * (i + 1) / 2 + (j - i));
  return Lit(-(j * n_ - j * (j + 1) / 2 + (i - j)));
}

std::pair<Vertex, Vertex> VarCodec::decode(Lit lit) const {
  if (!in_range(lit)) {
    throw Error(ErrorKind::kInvalidPair,
                "literal out of range: " + std::to_string(lit.code));
  }
  auto [i, j] = pairs_[lit.var() - 1];
  return lit.positive() ? std::pair{i, j} : std::pair{j, i};
}

Clause Clause::from(std::span<const Lit> lits) {
  Clause c;
  c.lits_.assign(lits.begin(), lits.end());
  std::sort(c.lits_.begin(), c.lits_.end(), lit_less);
  c.lits_.erase(std::unique(c.lits_.begin(), c.lits_.end()), c.lits_.end());
  for (size_t k = 0; k < c.lits_.size(); ++k) {
    if (!c.lits_[k].valid()) throw Error(ErrorKind::kDomain, "zero literal");
    if (k > 0 && c.lits_[k].var() == c.lits_[k - 1].var()) {
      throw Error(ErrorKind::kTautology,
                  "tautological clause on variable " +
                      std::to_string(c.lits_[k].var()));
    }
  }
  return c;
}

Clause Clause::from_codes(std::span<const int32_t> codes) {
  std::vector<Lit> lits;
  lits.reserve(codes.size());
  for (int32_t c : codes) lits.emplace_back(c);
  return from(lits);
}

namespace {
auto find_var(const std::vector<Lit>& lits, int32_t var) {
  return std::lower_bound(lits.begin(), lits.end(), var,
                          [](Lit l, int32_t v) { return l.var() < v; });
}
}  // namespace

bool Clause::contains(Lit lit) const {
  auto it = find_var(lits_, lit.var());
  return it != lits_.end() && *it == lit;
}

bool Clause::contains_var(int32_t var) const {
  auto it = find_var(lits_, var);
  return it != lits_.end() && it->var() == var;
}

bool Clause::insert(Lit lit) {
  auto it = find_var(lits_, lit.var());
  if (it != lits_.end() && it->var() == lit.var()) {
    if (*it == lit) return false;
    throw Error(ErrorKind::kTautology,
                "inserting " + std::to_string(lit.code) + " into " + str());
  }
  lits_.insert(it, lit);
  return true;
}

bool Clause::erase(Lit lit) {
  auto it = find_var(lits_, lit.var());
  if (it == lits_.end() || *it != lit) return false;
  lits_.erase(it);
  return true;
}

bool Clause::subset_of(const Clause& other) const {
  return std::includes(other.lits_.begin(), other.lits_.end(), lits_.begin(),
                       lits_.end(), lit_less);
}

bool operator<(const Clause& a, const Clause& b) {
  return std::lexicographical_compare(a.lits_.begin(), a.lits_.end(),
                                      b.lits_.begin(), b.lits_.end(), lit_less);
}

std::string Clause::str() const {
  std::ostringstream os;
  os << '{';
  for (size_t k = 0; k < lits_.size(); ++k) {
    if (k) os << ',';
    os << lits_[k].code;
  }
  os << '}';
  return os.str();
}

size_t ClauseHash::operator()(const Clause& c) const {
  size_t h = 0xcbf29ce484222325ULL;
  for (Lit l : c) {
    h ^= static_cast<uint32_t>(l.code);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ggt
