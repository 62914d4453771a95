#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iorsp/decoder.hpp"
#include "iorsp/qlearning.hpp"
#include "iorsp/rko.hpp"

namespace iorsp {

// Wall-clock budget, or a fixed iteration count. An iteration is one
// generation (BRKGA-QL), one temperature level (SA) or one perturbation
// round (ILS). Iteration budgets run on a logical clock whose "elapsed"
// value is the evaluation count, so traces are reproducible byte for byte.
struct RunBudget {
  double time_limit_s = 10.0;
  std::optional<std::int64_t> iterations;
  std::uint64_t seed = 1;
  std::optional<double> target;  // stop as soon as best <= target
};

struct TraceRow {
  double elapsed_ms = 0.0;
  std::int64_t iteration = 0;
  double best = 0.0;
  // BRKGA-QL only: the parameter values in force for the generation.
  std::optional<std::size_t> population;
  std::optional<double> elite_fraction;
  std::optional<double> mutation;
  std::optional<double> elite_bias;
};

std::string trace_csv(const std::vector<TraceRow>& rows);

struct RunResult {
  RandomKeys best_keys;
  Schedule best_schedule;
  Instant best_makespan = 0;
  double time_to_best_ms = 0.0;
  double elapsed_ms = 0.0;
  std::int64_t iterations = 0;
  std::int64_t evaluations = 0;
  std::vector<TraceRow> trace;
};

enum class Algorithm { brkga_ql, sa, ils };

std::string_view to_string(Algorithm alg);
std::optional<Algorithm> parse_algorithm(std::string_view text);

// Parameter state lists driven by the Q-learning agent.
inline constexpr std::array<std::size_t, 6> kPopulationStates = {233, 377, 610, 987, 1597, 2584};
inline constexpr std::array<double, 5> kEliteFractionStates = {0.10, 0.15, 0.20, 0.25, 0.30};
inline constexpr std::array<double, 5> kMutationStates = {0.01, 0.02, 0.03, 0.04, 0.05};
inline constexpr std::array<double, 6> kEliteBiasStates = {0.55, 0.60, 0.65, 0.70, 0.75, 0.80};

struct BrkgaQlParams {
  double discount = 0.8;
  double epsilon_start = 0.5;
  double epsilon_end = 0.05;
  int q_update_every = 10;        // generations
  int stagnation_generations = 20;
  double cluster_radius_factor = 0.1;  // times sqrt(n)
  ShakeBounds community_shake{0.10, 0.20};
};

// Learning factor: 1 at the start, 0.1 at the end of the budget.
double learning_factor(double progress);
double exploration_rate(double progress, double start, double end);

struct SaParams {
  double initial_temperature = 1e6;
  double cooling = 0.99;
  int inner_iterations = 200;
  ShakeBounds shake{0.05, 0.20};
};

inline constexpr ShakeBounds kIlsShake{0.10, 0.20};

// Metropolis rule: always accept a non-worsening move, otherwise accept
// with probability exp(-delta / temperature).
bool metropolis_accept(double delta, double temperature, Rng& rng);

// Leader clustering: each vector joins the first earlier leader within
// radius (Euclidean), otherwise it becomes a leader. Returns the leader
// index of every vector.
std::vector<std::size_t> leader_clusters(const std::vector<RandomKeys>& vectors, double radius);

RunResult brkga_ql_run(const Instance& inst, const RunBudget& budget, const BrkgaQlParams& params = {});
RunResult sa_run(const Instance& inst, const SaParams& params, const RunBudget& budget);
RunResult ils_run(const Instance& inst, ShakeBounds bounds, const RunBudget& budget);

RunResult run_algorithm(Algorithm alg, const Instance& inst, const RunBudget& budget);

}  // namespace iorsp
