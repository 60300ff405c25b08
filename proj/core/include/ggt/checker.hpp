#pragma once

#include <span>
#include <string>
#include <vector>

#include "ggt/derivation.hpp"
#include "ggt/formula.hpp"

namespace ggt {

enum class Profile { kValid, kRegular, kPool, kInputLemma, kGreedyUp };

std::string profile_name(Profile p);
/// Accepts the lower-case names used on the command line.
Profile parse_profile(const std::string& name);
/// Comma-separated list, e.g. "valid,regular,pool".
std::vector<Profile> parse_profiles(const std::string& list);

struct Violation {
  Profile profile;
  NodeId node;
  std::string message;
};

struct Report {
  std::vector<Violation> violations;
  /// Observations that do not fail a profile (multi-clause greedy patterns).
  std::vector<std::string> notes;

  bool passed() const { return violations.empty(); }
  bool passed(Profile p) const;
  std::string str() const;
};

/// Throws kStructure if premise references, arities, or the tree shape are
/// malformed.
void check_structure(const Derivation& d);

/// Runs each requested profile independently. POOL includes regularity;
/// INPUT_LEMMA only adds the input condition on lemma targets.
Report check_proof(const Derivation& d, const FormulaInstance& f,
                   std::span<const Profile> profiles);

/// Postorder of the nodes reachable from the root (premises left first).
std::vector<NodeId> postorder(const Derivation& d);

/// Per node: the subderivation is an input derivation, i.e. every inference
/// in it has a leaf premise.
std::vector<bool> input_nodes(const Derivation& d);

}  // namespace ggt
