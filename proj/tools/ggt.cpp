// ggt: command-line front end for the ordering-principle library. Each
// subcommand is documented by --help.
//
// Exit codes: 0 success, 1 check or refutation failure, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ggt/bench.hpp"
#include "ggt/checker.hpp"
#include "ggt/dimacs.hpp"
#include "ggt/pn.hpp"
#include "ggt/proof_io.hpp"
#include "ggt/refutation.hpp"
#include "ggt/solver.hpp"

namespace {

using namespace ggt;

constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

FormulaInstance load_formula(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  return read_dimacs(in);
}

Derivation load_proof(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  return read_proof(in);
}

// Expands "4..12" or "4,6,8" (or a mix) into a list.
std::vector<long> parse_range(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) {
      auto dots = item.find("..");
      if (dots == std::string::npos) {
        out.push_back(std::stol(item));
        continue;
      }
      long lo = std::stol(item.substr(0, dots)), hi = std::stol(item.substr(dots + 2));
      if (hi < lo) throw UsageError("empty range '" + item + "'");
      for (long v = lo; v <= hi; ++v) out.push_back(v);
    }
  } catch (const std::logic_error&) {
    throw UsageError("bad range '" + text + "'");
  }
  if (out.empty()) throw UsageError("empty range");
  return out;
}

std::vector<Profile> profiles_or_usage(const std::string& text) {
  try {
    return parse_profiles(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

struct GenArgs {
  std::string family = "ggt";
  int n = 0;
  uint64_t seed = 0;
  std::string pi;
  std::string out;
};

int run_gen(const GenArgs& a) {
  FormulaInstance f;
  if (a.family == "gt") {
    f = gen_gt(a.n);
  } else if (a.family == "ggt") {
    f = gen_ggt(a.n, a.seed);
  } else {
    Bpo pi;
    try {
      pi = parse_bpo(a.n, a.pi);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    f = gen_gt_pi(a.n, pi);
  }
  emit(a.out, write_dimacs(f));
  return 0;
}

struct RefuteArgs {
  std::string mode = "pool";
  std::string in;
  std::string out;
};

int run_refute(const RefuteArgs& a) {
  FormulaInstance f = load_formula(a.in);
  Derivation proof;
  std::vector<Profile> profiles{Profile::kValid, Profile::kRegular};
  if (a.mode == "pn") {
    if (f.family == Family::kGGT) throw UsageError("mode pn needs a GT or GTpi formula");
    proof = build_ppi(f.pi.value_or(Bpo()), f.n);
    if (proof.nodes[proof.root].clause != (f.pi ? bpo_clause(*f.pi, VarCodec(f.n)) : Clause())) {
      std::cerr << "error: built root does not match the formula's order\n";
      return kFail;
    }
  } else {
    if (f.family != Family::kGGT || f.unguarded) {
      throw UsageError("mode " + a.mode + " needs a GGT formula");
    }
    if (!(f == gen_ggt(f.n, f.seed))) {
      std::cerr << "error: formula is not the generated GGT instance for n=" << f.n
                << " seed=" << f.seed << '\n';
      return kFail;
    }
    bool pool = a.mode == "pool";
    Refutation r = build_refutation(f.n, f.seed, pool ? LemmaMode::kPool : LemmaMode::kInput);
    proof = std::move(r.proof);
    profiles.push_back(Profile::kPool);
    if (!pool) profiles.push_back(Profile::kInputLemma);
    std::cerr << "c lines=" << proof.size() << " width=" << proof.max_width()
              << " stages=" << r.stats.stages << " case_iv=" << r.stats.case_iv << '\n';
  }
  Report rep = check_proof(proof, f, profiles);
  if (!rep.passed()) {
    std::cerr << "error: self-check failed\n" << rep.str();
    return kFail;
  }
  emit(a.out, write_proof(proof));
  return 0;
}

struct CheckArgs {
  std::string formula;
  std::string proof;
  std::string profiles = "valid";
};

int run_check(const CheckArgs& a) {
  std::vector<Profile> profiles = profiles_or_usage(a.profiles);
  FormulaInstance f = load_formula(a.formula);
  Derivation d;
  try {
    d = load_proof(a.proof);
  } catch (const Error& e) {
    std::cout << "FAIL parse: " << e.what() << '\n';
    return kFail;
  }
  Report rep;
  try {
    rep = check_proof(d, f, profiles);
  } catch (const Error& e) {
    std::cout << "FAIL structure: " << e.what() << '\n';
    return kFail;
  }
  std::cout << rep.str();
  for (Profile p : profiles) {
    std::cout << (rep.passed(p) ? "PASS " : "FAIL ") << profile_name(p) << '\n';
  }
  return rep.passed() ? 0 : kFail;
}

struct SolveArgs {
  std::string in;
  uint64_t seed = 0;
  uint64_t max_conflicts = 0;
  std::string trace;
};

int run_solve(const SolveArgs& a) {
  FormulaInstance f = load_formula(a.in);
  SolverConfig config;
  config.seed = a.seed;
  config.trace = !a.trace.empty();
  config.max_conflicts = a.max_conflicts;
  SolveResult r = solve(f, config);
  const SolverStats& s = r.stats;
  std::cout << "s " << (r.status == SolveStatus::kUnsat ? "UNSAT" : "UNKNOWN") << '\n'
            << "c decisions=" << s.decisions << " propagations=" << s.propagations
            << " conflicts=" << s.conflicts << " learned=" << s.learned
            << " restarts=" << s.restarts << '\n';
  if (r.trace) {
    std::ostringstream os;
    write_proof(os, *r.trace, r.marks);
    emit(a.trace, os.str());
  }
  return r.status == SolveStatus::kUnsat ? 0 : kFail;
}

struct BenchArgs {
  std::string artifacts = "pn,pool,regrti,dpll";
  std::string ns = "4..8";
  std::string seeds = "0";
  int jobs = 1;
  double time_limit = 300;
  uint64_t memory_mb = 2048;
  bool no_timing = false;
  int min_n = 6;
  std::string out;
};

int run_bench(const BenchArgs& a) {
  BenchPlan plan;
  std::stringstream ss(a.artifacts);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) plan.artifacts.push_back(parse_artifact(item));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  for (long n : parse_range(a.ns)) plan.ns.push_back(static_cast<int>(n));
  plan.seeds.clear();
  for (long s : parse_range(a.seeds)) {
    if (s < 0) throw UsageError("seeds must be nonnegative");
    plan.seeds.push_back(static_cast<uint64_t>(s));
  }
  plan.jobs = a.jobs;
  plan.time_limit_s = a.time_limit;
  plan.memory_limit_mb = a.memory_mb;
  plan.record_time = !a.no_timing;
  std::vector<BenchRecord> rows;
  try {
    rows = bench_run(plan);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kSize) throw UsageError(e.what());
    throw;
  }
  emit(a.out, bench_csv(rows, a.min_n));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ordering-principle refutations, proof checking and DPLL"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write a GT, GGT or GTpi formula in DIMACS");
  g->add_option("--family", gen.family)->check(CLI::IsMember({"gt", "ggt", "gtpi"}));
  g->add_option("--n", gen.n, "Number of elements")->required()->check(CLI::Range(2, 64));
  g->add_option("--seed", gen.seed, "Guard seed (ggt)");
  g->add_option("--pi", gen.pi, "Bipartite order for gtpi, e.g. 0<2,1<3");
  g->add_option("-o,--output", gen.out, "Output file (default stdout)");

  RefuteArgs ref;
  auto* r = app.add_subcommand("refute", "Build a refutation and self-check it");
  r->add_option("--mode", ref.mode)->check(CLI::IsMember({"pool", "regrti", "pn"}));
  r->add_option("-i,--input", ref.in, "DIMACS formula")->required();
  r->add_option("-o,--output", ref.out, "Proof file (default stdout)");

  CheckArgs chk;
  auto* c = app.add_subcommand("check", "Check a proof against a formula");
  c->add_option("-f,--formula", chk.formula)->required();
  c->add_option("-p,--proof", chk.proof)->required();
  c->add_option("--profiles", chk.profiles, "Comma list of valid,regular,pool,input_lemma,greedy_up");

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Refute a GT/GGT formula with the DPLL solver");
  s->add_option("-i,--input", sol.in)->required();
  s->add_option("--seed", sol.seed, "Decision tie-break seed");
  s->add_option("--max-conflicts", sol.max_conflicts, "Give up after this many conflicts (0 = never)");
  s->add_option("--trace", sol.trace, "Write the search as a proof with decision markers");

  BenchArgs b;
  auto* bn = app.add_subcommand("bench", "Sweep sizes and seeds, write CSV with slope summary");
  bn->add_option("--artifacts", b.artifacts, "Comma list of pn,pool,regrti,dpll");
  bn->add_option("--n", b.ns, "Sizes, e.g. 4..12 or 8,12,16");
  bn->add_option("--seeds", b.seeds, "Seeds, e.g. 0..2");
  bn->add_option("-j,--jobs", b.jobs)->check(CLI::PositiveNumber);
  bn->add_option("--time-limit", b.time_limit, "Seconds per run")->check(CLI::PositiveNumber);
  bn->add_option("--memory-mb", b.memory_mb, "Address-space cap per run")->check(CLI::PositiveNumber);
  bn->add_flag("--no-timing", b.no_timing, "Write wallMillis as 0 for reproducible output");
  bn->add_option("--min-n", b.min_n, "Smallest n used in slope fits");
  bn->add_option("-o,--output", b.out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*g) {
      if (gen.family == "gtpi" && gen.pi.empty()) throw UsageError("gtpi needs --pi");
      return run_gen(gen);
    }
    if (*r) return run_refute(ref);
    if (*c) return run_check(chk);
    if (*s) return run_solve(sol);
    if (*bn) return run_bench(b);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
