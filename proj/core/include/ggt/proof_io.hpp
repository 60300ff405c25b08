#pragma once

#include <istream>
#include <span>
#include <string>
#include <vector>

#include "ggt/derivation.hpp"

namespace ggt {

/// Text interchange format, one node per line:
///
///   p proof <family> n=<n> seed=<s> shape=<dag|tree>
///   <id> A <lits> 0
///   <id> L <target-id>
///   <id> R|W|D <pivot> <p1> <p2> <lits> 0
///
/// Ids start at 1 and increase strictly; the last node is the root.
/// Lines starting with `c` are comments and `d <lit>` lines are decision
/// markers, both ignored by the parser.
std::string write_proof(const Derivation& d);
void write_proof(std::ostream& os, const Derivation& d);

/// A decision marker: the literal decided just before node `before` was emitted.
struct DecisionMark {
  NodeId before;
  Lit lit;
};

void write_proof(std::ostream& os, const Derivation& d, std::span<const DecisionMark> marks);

Derivation read_proof(std::istream& in);
Derivation read_proof_string(const std::string& text);

}  // namespace ggt
