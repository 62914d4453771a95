#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iorsp/meta.hpp"

namespace iorsp {

struct TttOptions {
  int runs = 100;
  double cap_s = 60.0;                    // per-run wall-clock cap
  std::optional<std::int64_t> iterations; // logical-clock runs instead
  std::uint64_t seed = 1;
};

struct TttSample {
  double time_ms = 0.0;
  bool censored = false;  // the run hit its cap before the target
};

struct TttResult {
  double target = 0.0;
  std::vector<TttSample> samples;                    // ascending time
  std::vector<std::pair<double, double>> points;     // (time, (i - 0.5) / runs), reached runs only
};

// A pilot run must reach the target first; otherwise this throws.
TttResult ttt_experiment(const Instance& inst, Algorithm alg, double target, const TttOptions& options = {});

// Empirical CDF points of the reached samples.
std::vector<std::pair<double, double>> ttt_points(const std::vector<TttSample>& sorted_samples);

std::string ttt_csv(const TttResult& r);
std::string ttt_svg(const TttResult& r);

}  // namespace iorsp
