#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iorsp/meta.hpp"

namespace iorsp {

// Relative percent deviation of x from the reference x_min.
double rpd(double x, double x_min);

struct RunRecord {
  std::string instance;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::optional<Instant> best;  // empty when the run failed
  double time_to_best_ms = 0.0;
  bool verified = false;        // best schedule passed verify_schedule
  std::string error;
};

struct SummaryRow {
  std::string instance;
  std::string algorithm;
  int runs = 0;
  int failures = 0;
  Instant best = 0;
  double average = 0.0;
  double brpd = 0.0;
  double arpd = 0.0;
  double attb_ms = 0.0;
  bool verified = false;
};

// Groups runs by (instance, algorithm). Deviations are measured against
// reference[instance] when given, otherwise against the best value any
// algorithm reached on that instance.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& runs,
                                  const std::map<std::string, double>& reference = {});

std::string runs_csv(const std::vector<RunRecord>& runs);
std::string summary_csv(const std::vector<SummaryRow>& rows);

struct BenchInstance {
  std::string name;
  Instance instance;
  std::optional<double> time_limit_s;
};

struct BenchConfig {
  std::vector<BenchInstance> instances;
  std::vector<Algorithm> algorithms;
  int replications = 5;
  double time_limit_s = 10.0;
  std::optional<std::int64_t> iterations;
  std::uint64_t seed = 1;
};

// Seed of one replication, a pure function of its coordinates.
std::uint64_t replication_seed(std::uint64_t base, std::size_t instance, std::size_t algorithm, int rep);

std::vector<RunRecord> run_bench(const BenchConfig& cfg);

// Loads every *.json instance of dir in name order. An optional
// manifest.json maps instance names to time limits: {"time_limits": {...}}.
std::vector<BenchInstance> load_suite(const std::filesystem::path& dir);

}  // namespace iorsp
