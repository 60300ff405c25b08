#pragma once

#include <istream>
#include <string>

#include "ggt/formula.hpp"

namespace ggt {

/// Writes the instance as DIMACS CNF. The first comment line carries the
/// metadata: `c family=<F> n=<n> [seed=<s>] [unguarded=1] [pi=<i<j,...>]`.
std::string write_dimacs(const FormulaInstance& f);

/// Reads a file produced by write_dimacs. Errors are kParse and name the
/// offending line.
FormulaInstance read_dimacs(std::istream& in);
FormulaInstance read_dimacs_string(const std::string& text);

/// Parses an order written as `0<2,1<3` (the form used in DIMACS headers).
Bpo parse_bpo(int n, const std::string& text);

}  // namespace ggt
