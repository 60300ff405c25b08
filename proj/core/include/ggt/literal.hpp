#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ggt {

enum class ErrorKind {
  kInvalidPair,
  kSize,
  kDomain,
  kParse,
  kMissingPivot,
  kTautology,
  kContract,
  kStructure,
  kConstruction,
  kUnsupported,
};

/// Single exception type for the library; `kind()` tells callers which
/// contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

using Vertex = int;

/// A literal over the order variables. The value is a signed DIMACS index:
/// +v(i,j) is x_{i,j} for i < j, and -v(i,j) is its negation, which is the
/// same literal as x_{j,i}.
struct Lit {
  int32_t code = 0;

  constexpr Lit() = default;
  constexpr explicit Lit(int32_t c) : code(c) {}

  constexpr int32_t var() const { return code < 0 ? -code : code; }
  constexpr bool positive() const { return code > 0; }
  constexpr Lit operator~() const { return Lit(-code); }
  constexpr bool valid() const { return code != 0; }

  friend constexpr bool operator==(Lit a, Lit b) { return a.code == b.code; }
  friend constexpr bool operator!=(Lit a, Lit b) { return a.code != b.code; }
};

/// Canonical literal order: by variable, negative polarity first.
constexpr bool lit_less(Lit a, Lit b) {
  if (a.var() != b.var()) return a.var() < b.var();
  return a.code < b.code;
}

/// Bijection between ordered vertex pairs and signed DIMACS literals.
class VarCodec {
 public:
  explicit VarCodec(int n);

  int n() const { return n_; }
  int num_vars() const { return n_ * (n_ - 1) / 2; }

  /// Literal x_{i,j}, meaning i precedes j.
  Lit encode(Vertex i, Vertex j) const;
  /// Literal \bar x_{i,j}, i.e. x_{j,i}.
  Lit encode_neg(Vertex i, Vertex j) const { return encode(j, i); }
  /// Ordered pair (i,j) such that the literal is x_{i,j}.
  std::pair<Vertex, Vertex> decode(Lit lit) const;
  /// Pair (i,j) with the literal equal to \bar x_{i,j}.
  std::pair<Vertex, Vertex> decode_neg(Lit lit) const {
    auto [a, b] = decode(lit);
    return {b, a};
  }
  bool in_range(Lit lit) const {
    return lit.valid() && lit.var() <= num_vars();
  }

 private:
  int n_;
  std::vector<std::pair<Vertex, Vertex>> pairs_;  // index var-1 -> (i<j)
};

/// Duplicate-free, non-tautological set of literals kept sorted in canonical
/// order.
class Clause {
 public:
  Clause() = default;
  /// Throws kTautology if both polarities of a variable occur. Duplicates
  /// merge.
  static Clause from(std::span<const Lit> lits);
  static Clause from(std::initializer_list<Lit> lits) {
    return from(std::span<const Lit>(lits.begin(), lits.size()));
  }
  static Clause from_codes(std::span<const int32_t> codes);

  bool empty() const { return lits_.empty(); }
  size_t size() const { return lits_.size(); }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  Lit operator[](size_t k) const { return lits_[k]; }
  const std::vector<Lit>& lits() const { return lits_; }

  bool contains(Lit lit) const;
  bool contains_var(int32_t var) const;
  /// Returns false and leaves the clause unchanged if the literal is already
  /// present. Throws kTautology if its negation is present.
  bool insert(Lit lit);
  bool erase(Lit lit);
  bool subset_of(const Clause& other) const;

  friend bool operator==(const Clause& a, const Clause& b) {
    return a.lits_ == b.lits_;
  }
  friend bool operator!=(const Clause& a, const Clause& b) { return !(a == b); }
  /// Lexicographic order on canonical literal lists.
  friend bool operator<(const Clause& a, const Clause& b);

  std::string str() const;

 private:
  std::vector<Lit> lits_;
};

struct ClauseHash {
  size_t operator()(const Clause& c) const;
};

}  // namespace ggt
