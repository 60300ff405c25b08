#include "ggt/bench.hpp"

#include <signal.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <sstream>
#include <thread>

#include "ggt/formula.hpp"
#include "ggt/literal.hpp"
#include "ggt/pn.hpp"
#include "ggt/refutation.hpp"
#include "ggt/solver.hpp"

namespace ggt {

std::string artifact_name(Artifact a) {
  switch (a) {
    case Artifact::kPool: return "pool";
    case Artifact::kRegrti: return "regrti";
    case Artifact::kPn: return "pn";
    case Artifact::kDpll: return "dpll";
  }
  return "?";
}

Artifact parse_artifact(const std::string& name) {
  for (Artifact a : {Artifact::kPool, Artifact::kRegrti, Artifact::kPn, Artifact::kDpll}) {
    if (artifact_name(a) == name) return a;
  }
  throw Error(ErrorKind::kParse, "unknown artifact '" + name + "'");
}

BenchRecord run_job(Artifact a, int n, uint64_t seed) {
  BenchRecord r;
  r.n = n;
  r.seed = seed;
  r.artifact = a;
  auto t0 = std::chrono::steady_clock::now();
  switch (a) {
    case Artifact::kPool:
    case Artifact::kRegrti: {
      r.family = "GGT";
      Refutation ref = build_refutation(n, seed, a == Artifact::kPool ? LemmaMode::kPool
                                                                     : LemmaMode::kInput);
      r.lines = ref.proof.size();
      r.max_width = ref.proof.max_width();
      r.stages = ref.stats.stages;
      r.case_iv = ref.stats.case_iv;
      break;
    }
    case Artifact::kPn: {
      r.family = "GT";
      r.seed = 0;
      Derivation d = build_pn(n);
      r.lines = d.size();
      r.max_width = d.max_width();
      break;
    }
    case Artifact::kDpll: {
      r.family = "GGT";
      FormulaInstance f = gen_ggt(n, seed);
      SolverConfig config;
      config.seed = seed;
      SolveResult s = solve(f, config);
      r.conflicts = s.stats.conflicts;
      r.decisions = s.stats.decisions;
      break;
    }
  }
  r.wall_millis = static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                            std::chrono::steady_clock::now() - t0)
                                            .count());
  return r;
}

namespace {

std::string encode_counters(const BenchRecord& r) {
  std::ostringstream os;
  os << r.family << ' ' << r.lines << ' ' << r.max_width << ' ' << r.stages << ' ' << r.case_iv
     << ' ' << r.conflicts << ' ' << r.decisions << ' ' << r.wall_millis;
  return os.str();
}

bool decode_counters(const std::string& text, BenchRecord& r) {
  std::istringstream is(text);
  return static_cast<bool>(is >> r.family >> r.lines >> r.max_width >> r.stages >> r.case_iv >>
                           r.conflicts >> r.decisions >> r.wall_millis);
}

struct Child {
  size_t index;
  pid_t pid;
  int fd;
  std::chrono::steady_clock::time_point start;
};

BenchRecord timed_out(Artifact a, int n, uint64_t seed, uint64_t millis) {
  BenchRecord r;
  r.family = a == Artifact::kPn ? "GT" : "GGT";
  r.n = n;
  r.seed = a == Artifact::kPn ? 0 : seed;
  r.artifact = a;
  r.timeout = true;
  r.wall_millis = millis;
  return r;
}

}  // namespace

std::vector<BenchRecord> bench_run(const BenchPlan& plan) {
  struct Job {
    Artifact a;
    int n;
    uint64_t seed;
  };
  std::vector<Job> jobs;
  for (Artifact a : plan.artifacts) {
    for (int n : plan.ns) {
      int lo = (a == Artifact::kPool || a == Artifact::kRegrti) ? 4 : 2;
      if (n < lo || n > 64) {
        throw Error(ErrorKind::kSize, artifact_name(a) + " needs n in [" + std::to_string(lo) +
                                          ",64], got " + std::to_string(n));
      }
      if (a == Artifact::kPn) {
        jobs.push_back({a, n, 0});
        continue;
      }
      for (uint64_t s : plan.seeds) jobs.push_back({a, n, s});
    }
  }
  std::vector<BenchRecord> out(jobs.size());

  if (!plan.isolate) {
    for (size_t k = 0; k < jobs.size(); ++k) {
      out[k] = run_job(jobs[k].a, jobs[k].n, jobs[k].seed);
      if (!plan.record_time) out[k].wall_millis = 0;
    }
    return out;
  }

  const auto limit = std::chrono::duration<double>(plan.time_limit_s);
  std::deque<size_t> queue;
  for (size_t k = 0; k < jobs.size(); ++k) queue.push_back(k);
  std::vector<Child> running;
  const size_t width = static_cast<size_t>(std::max(1, plan.jobs));

  auto finish = [&](const Child& c, bool killed) {
    uint64_t ms = static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                            std::chrono::steady_clock::now() - c.start)
                                            .count());
    std::string text;
    char buf[512];
    ssize_t got;
    while (!killed && (got = read(c.fd, buf, sizeof buf)) > 0) text.append(buf, got);
    close(c.fd);
    const Job& j = jobs[c.index];
    BenchRecord r;
    r.n = j.n;
    r.seed = j.seed;
    r.artifact = j.a;
    if (killed || !decode_counters(text, r)) r = timed_out(j.a, j.n, j.seed, ms);
    if (!plan.record_time) r.wall_millis = 0;
    out[c.index] = r;
  };

  while (!queue.empty() || !running.empty()) {
    while (!queue.empty() && running.size() < width) {
      size_t k = queue.front();
      queue.pop_front();
      int fds[2];
      if (pipe(fds) != 0) throw Error(ErrorKind::kContract, "pipe failed");
      std::fflush(nullptr);
      pid_t pid = fork();
      if (pid < 0) throw Error(ErrorKind::kContract, "fork failed");
      if (pid == 0) {
        close(fds[0]);
        rlimit lim{};
        lim.rlim_cur = lim.rlim_max = static_cast<rlim_t>(plan.memory_limit_mb) << 20;
        setrlimit(RLIMIT_AS, &lim);
        int code = 0;
        try {
          std::string text = encode_counters(run_job(jobs[k].a, jobs[k].n, jobs[k].seed));
          if (write(fds[1], text.data(), text.size()) < 0) code = 4;
        } catch (...) {
          code = 3;
        }
        close(fds[1]);
        _exit(code);
      }
      close(fds[1]);
      running.push_back({k, pid, fds[0], std::chrono::steady_clock::now()});
    }
    bool progressed = false;
    for (size_t c = 0; c < running.size();) {
      int status = 0;
      pid_t w = waitpid(running[c].pid, &status, WNOHANG);
      bool over = std::chrono::steady_clock::now() - running[c].start > limit;
      if (w == 0 && !over) {
        ++c;
        continue;
      }
      bool killed = false;
      if (w == 0) {
        kill(running[c].pid, SIGKILL);
        waitpid(running[c].pid, &status, 0);
        killed = true;
      } else if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        killed = true;
      }
      finish(running[c], killed);
      running.erase(running.begin() + static_cast<long>(c));
      progressed = true;
    }
    if (!progressed) std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  return out;
}

std::optional<double> loglog_slope(const std::vector<BenchRecord>& rows, Artifact a,
                                   const std::function<uint64_t(const BenchRecord&)>& metric,
                                   int min_n, size_t* points) {
  std::vector<double> xs, ys;
  for (const BenchRecord& r : rows) {
    if (r.artifact != a || r.timeout || r.n < min_n) continue;
    uint64_t v = metric(r);
    if (v == 0) continue;
    xs.push_back(std::log(static_cast<double>(r.n)));
    ys.push_back(std::log(static_cast<double>(v)));
  }
  if (points) *points = xs.size();
  if (xs.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0, sxx = 0;
  for (size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

std::vector<SlopeFit> summarize(const std::vector<BenchRecord>& rows, int min_n) {
  std::vector<SlopeFit> fits;
  auto add = [&](Artifact a, const char* name, auto metric) {
    size_t points = 0;
    if (auto s = loglog_slope(rows, a, metric, min_n, &points)) {
      fits.push_back({a, name, *s, points});
    }
  };
  for (Artifact a : {Artifact::kPn, Artifact::kPool, Artifact::kRegrti, Artifact::kDpll}) {
    if (a == Artifact::kDpll) {
      add(a, "conflicts", [](const BenchRecord& r) { return r.conflicts; });
      add(a, "decisions", [](const BenchRecord& r) { return r.decisions; });
    } else {
      add(a, "lines", [](const BenchRecord& r) { return r.lines; });
      add(a, "maxWidth", [](const BenchRecord& r) { return r.max_width; });
    }
  }
  return fits;
}

std::string csv_header() {
  return "family,n,seed,artifact,lines,maxWidth,stages,caseIvCount,conflicts,decisions,wallMillis";
}

std::string csv_row(const BenchRecord& r) {
  std::ostringstream os;
  os << r.family << ',' << r.n << ',' << r.seed << ',' << artifact_name(r.artifact) << ',';
  if (r.timeout) {
    os << "TIMEOUT,,,,,,";
  } else {
    os << r.lines << ',' << r.max_width << ',' << r.stages << ',' << r.case_iv << ','
       << r.conflicts << ',' << r.decisions << ',';
  }
  os << r.wall_millis;
  return os.str();
}

std::string bench_csv(const std::vector<BenchRecord>& rows, int min_n) {
  std::ostringstream os;
  os << csv_header() << '\n';
  for (const BenchRecord& r : rows) os << csv_row(r) << '\n';
  char buf[64];
  for (const SlopeFit& f : summarize(rows, min_n)) {
    std::snprintf(buf, sizeof buf, "%.4f", f.slope);
    os << "# slope," << artifact_name(f.artifact) << ',' << f.metric << ',' << buf << ','
       << f.points << '\n';
  }
  return os.str();
}

}  // namespace ggt
