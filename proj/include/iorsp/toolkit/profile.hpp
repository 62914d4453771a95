#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iorsp {

struct ResultEntry {
  std::string instance;
  std::string algorithm;
  double value = 0.0;
  std::optional<double> reference;  // best known value; defaults to the per-instance best
};

struct ProfilePoint {
  double log2_tau = 0.0;
  double fraction = 0.0;
};

struct ProfileCurve {
  std::string algorithm;
  std::vector<ProfilePoint> points;  // non-decreasing step function
};

// Performance profile over the instances of entries. Ratios are taken
// against the per-instance best value; an entry whose deviation from the
// reference exceeds gap_percent counts as unsolved (infinite ratio).
std::vector<ProfileCurve> performance_profile(const std::vector<ResultEntry>& entries, double gap_percent);

std::string profile_csv(const std::vector<ProfileCurve>& curves);
std::string profile_svg(const std::vector<ProfileCurve>& curves);

// Reads a CSV with instance and algorithm columns and a value column named
// best_minutes, best or value; an optional reference column is honoured.
std::vector<ResultEntry> load_results_csv(std::string_view text);

}  // namespace iorsp
