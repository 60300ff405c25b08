#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ggt {

enum class Artifact { kPool, kRegrti, kPn, kDpll };

std::string artifact_name(Artifact a);
Artifact parse_artifact(const std::string& name);

/// One CSV row. Timed-out rows keep their identifying columns and leave the
/// counters empty.
struct BenchRecord {
  std::string family;
  int n = 0;
  uint64_t seed = 0;
  Artifact artifact = Artifact::kPool;
  bool timeout = false;
  uint64_t lines = 0;
  uint64_t max_width = 0;
  uint64_t stages = 0;
  uint64_t case_iv = 0;
  uint64_t conflicts = 0;
  uint64_t decisions = 0;
  uint64_t wall_millis = 0;
};

struct BenchPlan {
  std::vector<int> ns;
  std::vector<uint64_t> seeds{0};
  std::vector<Artifact> artifacts;
  double time_limit_s = 300;
  uint64_t memory_limit_mb = 2048;
  int jobs = 1;
  // Off gives byte-identical CSV across runs (wallMillis is written as 0).
  bool record_time = true;
  // Run each job in a forked child so the caps can be enforced.
  bool isolate = true;
};

/// Runs one job in-process, without caps.
BenchRecord run_job(Artifact a, int n, uint64_t seed);

/// Runs the plan. Rows come back in plan order: artifact, then n, then seed.
std::vector<BenchRecord> bench_run(const BenchPlan& plan);

struct SlopeFit {
  Artifact artifact;
  std::string metric;
  double slope = 0;
  size_t points = 0;
};

/// Least-squares slope of log(metric) against log(n) over rows with n >= min_n
/// that did not time out and have a positive metric.
std::optional<double> loglog_slope(const std::vector<BenchRecord>& rows, Artifact a,
                                   const std::function<uint64_t(const BenchRecord&)>& metric,
                                   int min_n = 6, size_t* points = nullptr);

std::vector<SlopeFit> summarize(const std::vector<BenchRecord>& rows, int min_n = 6);

std::string csv_header();
std::string csv_row(const BenchRecord& r);
/// Header, rows, then `#`-prefixed summary lines with the fitted slopes.
std::string bench_csv(const std::vector<BenchRecord>& rows, int min_n = 6);

}  // namespace ggt
