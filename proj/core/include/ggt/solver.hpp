#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ggt/derivation.hpp"
#include "ggt/formula.hpp"
#include "ggt/literal.hpp"
#include "ggt/pn.hpp"
#include "ggt/proof_io.hpp"

namespace ggt {

struct SolverConfig {
  // Tie-break seed for the polarity of traversal decisions.
  uint64_t seed = 0;
  bool trace = false;
  // Zero means unlimited. When exceeded, solve() returns kUnknown.
  uint64_t max_conflicts = 0;
};

struct SolverStats {
  uint64_t decisions = 0;
  uint64_t propagations = 0;
  uint64_t conflicts = 0;
  uint64_t learned = 0;
  uint64_t restarts = 0;
  uint64_t closure_decisions = 0;
  uint64_t traversal_decisions = 0;
  uint64_t blocking_decisions = 0;
  uint64_t fallback_decisions = 0;
};

enum class SolveStatus { kUnsat, kUnknown };

struct SolveResult {
  SolveStatus status = SolveStatus::kUnknown;
  SolverStats stats;
  std::vector<Clause> learned;
  std::vector<Triple> learned_triples;
  // Tree-with-lemmas refutation replaying the search, when tracing is on.
  std::optional<Derivation> trace;
  std::vector<DecisionMark> marks;
};

/// Chronological DPLL with T-clause learning for GT/GGT instances.
/// The decision cascade follows the transitive closure of the trail first,
/// then a traversal of the P_pi dag for the order induced by the trail.
class Solver {
 public:
  Solver(const FormulaInstance& f, SolverConfig config = {});
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  /// Pushes a decision literal onto the trail. The literal must be unassigned.
  void decide(Lit l);
  /// Runs unit propagation; returns the index of a falsified clause, or -1.
  int propagate();
  /// Chooses the next decision literal. Throws kContract if all variables are assigned.
  Lit pick_decision();
  /// Handles a conflict on clause `conflict`. Returns false once the search is
  /// exhausted, i.e. the formula has been refuted.
  bool on_conflict(int conflict);

  SolveResult solve();

  int value(Lit l) const;
  const std::vector<Lit>& trail() const { return trail_; }
  /// Index of the clause that propagated `var`, or -1 for decisions and unassigned variables.
  int reason(int var) const { return reason_[var]; }
  const std::vector<Clause>& clauses() const { return db_; }
  const SolverStats& stats() const { return stats_; }
  size_t num_learned() const { return db_.size() - num_input_; }

 private:
  struct Decision {
    Lit lit;
    bool flipped = false;
    size_t trail_pos = 0;
    NodeId first = kNoNode;
    Clause first_clause;
  };
  struct PiEntry;

  void assign(Lit l, int reason);
  void undo_to(size_t pos);
  void add_learned(const Clause& c, const Triple& t, NodeId node);
  NodeId leaf_for(int clause);
  void close_branch(NodeId node, Clause clause);
  void mark(Lit l);
  const PiEntry& pi_entry(const Bpo& pi);
  std::optional<Lit> blocking_literal(const PiEntry& e, NodeId u, int guard_var);

  const FormulaInstance& f_;
  SolverConfig config_;
  VarCodec codec_;
  int num_vars_;
  size_t num_input_;
  std::vector<Clause> db_;
  std::vector<std::vector<int>> occ_;  // by slot 2*var+positive
  std::vector<int8_t> value_;          // by var: -1 unassigned, 0 false, 1 true
  std::vector<int> reason_;            // by var: clause index or -1
  std::vector<Lit> trail_;
  size_t qhead_ = 0;
  std::vector<int> pending_;  // learned clauses not yet inspected
  std::vector<Decision> stack_;
  std::vector<char> learned_set_;  // by canonical triple (i*n+j)*n+k
  std::vector<NodeId> node_of_;  // by clause index, for learned clauses
  SolverStats stats_;
  std::vector<Clause> learned_;
  std::vector<Triple> learned_triples_;
  Derivation proof_;
  std::vector<DecisionMark> marks_;
  NodeId root_ = kNoNode;
  bool done_ = false;
  std::map<std::string, std::unique_ptr<PiEntry>> pi_cache_;
};

SolveResult solve(const FormulaInstance& f, SolverConfig config = {});

}  // namespace ggt
