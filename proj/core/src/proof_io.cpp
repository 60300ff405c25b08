#include "ggt/proof_io.hpp"

#include <sstream>
#include <unordered_map>

namespace ggt {

namespace {

[[noreturn]] void parse_error(size_t line, const std::string& msg) {
  throw Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + msg);
}

void write_lits(std::ostream& os, const Clause& c) {
  for (Lit l : c) os << ' ' << l.code;
  os << " 0\n";
}

}  // namespace

void write_proof(std::ostream& os, const Derivation& d) { write_proof(os, d, {}); }

void write_proof(std::ostream& os, const Derivation& d, std::span<const DecisionMark> marks) {
  size_t next_mark = 0;
  os << "p proof " << family_name(d.family) << " n=" << d.n << " seed=" << d.seed
     << " shape=" << (d.shape == Shape::kDag ? "dag" : "tree") << '\n';
  for (size_t k = 0; k < d.nodes.size(); ++k) {
    for (; next_mark < marks.size() && marks[next_mark].before <= static_cast<NodeId>(k);
         ++next_mark) {
      os << "d " << marks[next_mark].lit.code << '\n';
    }
    const ProofNode& node = d.nodes[k];
    os << (k + 1) << ' ' << rule_code(node.rule);
    switch (node.rule) {
      case Rule::kAxiom:
        write_lits(os, node.clause);
        break;
      case Rule::kLemmaRef:
        os << ' ' << (node.lemma + 1) << '\n';
        break;
      default:
        os << ' ' << node.pivot.code << ' ' << (node.p1 + 1) << ' ' << (node.p2 + 1);
        write_lits(os, node.clause);
        break;
    }
  }
  for (; next_mark < marks.size(); ++next_mark) {
    os << "d " << marks[next_mark].lit.code << '\n';
  }
}

std::string write_proof(const Derivation& d) {
  std::ostringstream os;
  write_proof(os, d);
  return os.str();
}

Derivation read_proof(std::istream& in) {
  Derivation d;
  bool have_header = false;
  std::unordered_map<long, NodeId> index;
  long last_id = 0;
  std::string line;
  size_t lineno = 0;

  auto read_clause = [&](std::istringstream& ss) {
    std::vector<int32_t> codes;
    long v;
    while (ss >> v) {
      if (v == 0) {
        std::string rest;
        if (ss >> rest) parse_error(lineno, "trailing tokens after clause");
        try {
          Clause c = Clause::from_codes(codes);
          if (c.size() != codes.size()) parse_error(lineno, "duplicate literal");
          VarCodec codec(d.n);
          for (Lit l : c) {
            if (!codec.in_range(l)) parse_error(lineno, "literal out of range");
          }
          return c;
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::kParse) throw;
          parse_error(lineno, e.what());
        }
      }
      codes.push_back(static_cast<int32_t>(v));
    }
    parse_error(lineno, "clause not terminated by 0");
  };
  auto resolve_ref = [&](long ref, long id, const char* what) {
    auto it = index.find(ref);
    if (ref >= id || it == index.end()) {
      parse_error(lineno, std::string(what) + " " + std::to_string(ref) +
                              " does not name an earlier node");
    }
    return it->second;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c' || line[0] == 'd') continue;
    std::istringstream ss(line);
    if (line[0] == 'p') {
      if (have_header) parse_error(lineno, "duplicate header");
      std::string p, proof, fam, tok;
      if (!(ss >> p >> proof >> fam) || proof != "proof") {
        parse_error(lineno, "malformed header");
      }
      try {
        d.family = parse_family(fam);
      } catch (const Error& e) {
        parse_error(lineno, e.what());
      }
      bool have_n = false, have_shape = false;
      while (ss >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) parse_error(lineno, "bad header token '" + tok + "'");
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        try {
          if (key == "n") {
            d.n = std::stoi(val);
            have_n = true;
          } else if (key == "seed") {
            d.seed = std::stoull(val);
          } else if (key == "shape") {
            if (val == "dag") d.shape = Shape::kDag;
            else if (val == "tree") d.shape = Shape::kTreeWithLemmas;
            else parse_error(lineno, "unknown shape '" + val + "'");
            have_shape = true;
          }
        } catch (const Error&) {
          throw;
        } catch (const std::exception&) {
          parse_error(lineno, "bad value in '" + tok + "'");
        }
      }
      if (!have_n || !have_shape || d.n < 1 || d.n > 64) {
        parse_error(lineno, "header needs n= and shape=");
      }
      have_header = true;
      continue;
    }
    if (!have_header) parse_error(lineno, "node before header");
    long id;
    std::string code;
    if (!(ss >> id >> code) || code.size() != 1) parse_error(lineno, "malformed node line");
    if (id <= last_id) {
      parse_error(lineno, "id " + std::to_string(id) + " is not strictly increasing");
    }
    switch (code[0]) {
      case 'A':
        d.add_axiom(read_clause(ss));
        break;
      case 'L': {
        long target;
        if (!(ss >> target)) parse_error(lineno, "lemma without target");
        d.add_lemma_ref(resolve_ref(target, id, "lemma target"));
        break;
      }
      case 'R':
      case 'W':
      case 'D': {
        long pivot, p1, p2;
        if (!(ss >> pivot >> p1 >> p2)) parse_error(lineno, "malformed inference");
        NodeId a = resolve_ref(p1, id, "premise");
        NodeId b = resolve_ref(p2, id, "premise");
        Rule rule = code[0] == 'R'   ? Rule::kResolve
                    : code[0] == 'W' ? Rule::kWResolve
                                     : Rule::kDegenResolve;
        Clause c = read_clause(ss);
        if (pivot == 0 || !VarCodec(d.n).in_range(Lit(static_cast<int32_t>(pivot)))) {
          parse_error(lineno, "pivot out of range");
        }
        d.add_inference(rule, Lit(static_cast<int32_t>(pivot)), a, b, std::move(c));
        break;
      }
      default:
        parse_error(lineno, "unknown rule '" + code + "'");
    }
    index.emplace(id, static_cast<NodeId>(d.nodes.size() - 1));
    last_id = id;
  }
  if (!have_header) parse_error(lineno, "missing header");
  if (d.nodes.empty()) parse_error(lineno, "empty proof");
  return d;
}

Derivation read_proof_string(const std::string& text) {
  std::istringstream in(text);
  return read_proof(in);
}

}  // namespace ggt
