#include "ggt/dimacs.hpp"

#include <sstream>
#include <unordered_set>

namespace ggt {

namespace {

[[noreturn]] void parse_error(size_t line, const std::string& msg) {
  throw Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + msg);
}

std::vector<VertexPair> parse_pairs(const std::string& text, size_t line) {
  std::vector<VertexPair> pairs;
  if (text.empty()) return pairs;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto lt = item.find('<');
    if (lt == std::string::npos) parse_error(line, "bad pair '" + item + "'");
    try {
      pairs.emplace_back(std::stoi(item.substr(0, lt)),
                         std::stoi(item.substr(lt + 1)));
    } catch (const std::exception&) {
      parse_error(line, "bad pair '" + item + "'");
    }
  }
  return pairs;
}

}  // namespace

std::string write_dimacs(const FormulaInstance& f) {
  std::ostringstream os;
  os << "c family=" << family_name(f.family) << " n=" << f.n;
  if (f.family == Family::kGGT) os << " seed=" << f.seed;
  if (f.unguarded) os << " unguarded=1";
  if (f.pi) os << " pi=" << f.pi->str();
  os << '\n';
  VarCodec codec(f.n);
  os << "p cnf " << codec.num_vars() << ' ' << f.clauses.size() << '\n';
  for (const Clause& c : f.clauses) {
    for (Lit l : c) os << l.code << ' ';
    os << "0\n";
  }
  return os.str();
}

FormulaInstance read_dimacs(std::istream& in) {
  FormulaInstance f;
  bool have_meta = false;
  bool have_p = false;
  long declared_vars = 0;
  long declared_clauses = 0;
  std::optional<std::vector<VertexPair>> pi_pairs;
  std::unordered_set<Clause, ClauseHash> seen;
  std::vector<int32_t> pending;
  size_t pending_line = 0;

  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == 'c') {
      if (have_meta || line.find("family=") == std::string::npos) continue;
      std::istringstream ss(line.substr(1));
      std::string tok;
      bool have_n = false;
      while (ss >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) parse_error(lineno, "bad header token '" + tok + "'");
        std::string key = tok.substr(0, eq);
        std::string val = tok.substr(eq + 1);
        try {
          if (key == "family") {
            f.family = parse_family(val);
          } else if (key == "n") {
            f.n = std::stoi(val);
            have_n = true;
          } else if (key == "seed") {
            f.seed = std::stoull(val);
          } else if (key == "unguarded") {
            f.unguarded = val == "1";
          } else if (key == "pi") {
            pi_pairs = parse_pairs(val, lineno);
          }
        } catch (const Error&) {
          throw;
        } catch (const std::exception&) {
          parse_error(lineno, "bad value in '" + tok + "'");
        }
      }
      if (!have_n || f.n < 2 || f.n > 64) parse_error(lineno, "header lacks a valid n");
      have_meta = true;
      continue;
    }
    if (line[0] == 'p') {
      if (!have_meta) parse_error(lineno, "missing 'c family=' header before problem line");
      std::istringstream ss(line);
      std::string p, cnf;
      if (!(ss >> p >> cnf >> declared_vars >> declared_clauses) || cnf != "cnf") {
        parse_error(lineno, "malformed problem line");
      }
      if (declared_vars != VarCodec(f.n).num_vars()) {
        parse_error(lineno, "variable count does not match n");
      }
      have_p = true;
      continue;
    }
    if (!have_p) parse_error(lineno, "clause before problem line");
    std::istringstream ss(line);
    long v;
    if (pending.empty()) pending_line = lineno;
    while (ss >> v) {
      if (v == 0) {
        Clause c;
        try {
          c = Clause::from_codes(pending);
        } catch (const Error& e) {
          parse_error(pending_line, e.what());
        }
        if (c.size() != pending.size()) parse_error(pending_line, "duplicate literal in clause");
        if (!seen.insert(c).second) parse_error(pending_line, "duplicate clause");
        f.clauses.push_back(std::move(c));
        pending.clear();
        pending_line = lineno;
        continue;
      }
      if (v > declared_vars || v < -declared_vars) {
        parse_error(lineno, "literal " + std::to_string(v) + " out of range");
      }
      pending.push_back(static_cast<int32_t>(v));
    }
    if (!ss.eof()) parse_error(lineno, "non-numeric token");
  }
  if (!have_p) parse_error(lineno, "missing problem line");
  if (!pending.empty()) parse_error(pending_line, "unterminated clause");
  if (static_cast<long>(f.clauses.size()) != declared_clauses) {
    parse_error(lineno, "clause count " + std::to_string(f.clauses.size()) +
                            " differs from declared " + std::to_string(declared_clauses));
  }
  if (f.family == Family::kGGT && !f.unguarded && f.n >= 4) {
    f.guard_map = GuardMap(f.n, f.seed);
  }
  if (pi_pairs) {
    try {
      f.pi = Bpo(f.n, *pi_pairs);
    } catch (const Error& e) {
      parse_error(1, e.what());
    }
  }
  return f;
}

FormulaInstance read_dimacs_string(const std::string& text) {
  std::istringstream in(text);
  return read_dimacs(in);
}

Bpo parse_bpo(int n, const std::string& text) {
  std::vector<VertexPair> pairs;
  try {
    pairs = parse_pairs(text, 0);
  } catch (const Error&) {
    throw Error(ErrorKind::kParse, "bad order '" + text + "'");
  }
  return Bpo(n, pairs);
}

}  // namespace ggt
