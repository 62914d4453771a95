#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "iorsp/decoder.hpp"
#include "iorsp/rng.hpp"

namespace iorsp {

using Fitness = std::function<double(const RandomKeys&)>;

// Largest double below 1; complements are clamped to it so keys stay in [0,1).
inline constexpr double kKeyMax = 0x1.fffffffffffffp-1;

inline double complement(double key) {
  const double c = 1.0 - key;
  return c < kKeyMax ? c : kKeyMax;
}

RandomKeys random_keys(std::size_t n, Rng& rng);
bool keys_in_range(std::span<const double> keys);

// ---- shaking ----

struct ShakeBounds {
  double beta_min = 0.05;
  double beta_max = 0.20;
};

enum class ShakeMove { swap, swap_neighbor, mirror, random };

struct ShakeTrace {
  double beta = 0.0;
  std::vector<ShakeMove> moves;
};

// ceil(beta * n); any positive beta gives at least one move.
std::size_t shake_move_count(double beta, std::size_t n);

void apply_shake_move(RandomKeys& a, ShakeMove move, Rng& rng);
void shake(RandomKeys& a, ShakeBounds bounds, Rng& rng, ShakeTrace* trace = nullptr);

// ---- blending ----

struct BlendParams {
  double rho = 0.5;
  double mu = 0.02;
  int factor = 1;  // +1 inherits b, -1 inherits the complement of b
};

RandomKeys blend(std::span<const double> a, std::span<const double> b, BlendParams params, Rng& rng);

// ---- Farey bands ----

struct Fraction {
  int num;
  int den;
  double value() const { return static_cast<double>(num) / den; }
};

// Order-7 sequence: 19 fractions, hence 18 sampling bands.
inline constexpr std::array<Fraction, 19> kFarey7 = {{
    {0, 1}, {1, 7}, {1, 6}, {1, 5}, {1, 4}, {2, 7}, {1, 3}, {2, 5}, {3, 7}, {1, 2},
    {4, 7}, {3, 5}, {2, 3}, {5, 7}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 1},
}};

// Uniform draw inside band j, i.e. [F_j, F_{j+1}), kept below 1.
double farey_draw(std::size_t band, Rng& rng);

// ---- elite pool ----

class ElitePool {
 public:
  struct Entry {
    RandomKeys keys;
    double fitness;
  };

  explicit ElitePool(std::size_t capacity = 10) : capacity_(capacity) {}

  // Keeps the pool sorted best-first, without duplicate vectors.
  void offer(const RandomKeys& keys, double fitness);
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::vector<Entry> entries_;
};

// ---- search context ----

// Budget shared by every operator of one run. With a logical clock the
// elapsed time is the evaluation count, which makes traces reproducible.
struct StopRule {
  std::optional<double> time_limit_ms;
  std::optional<double> target;             // stop once best <= target
  std::optional<std::int64_t> max_evaluations;
};

struct NelderMeadParams {
  double rho = 0.5;
  double mu = 0.02;
};

class SearchContext {
 public:
  SearchContext(Fitness fitness, std::uint64_t seed, StopRule stop = {}, bool logical_clock = false,
                std::size_t elite_capacity = 10);

  double evaluate(const RandomKeys& keys);

  bool should_stop() const;
  bool target_reached() const { return stop_.target && best_fitness_ <= *stop_.target; }
  double elapsed_ms() const;

  Rng& rng() { return rng_; }
  ElitePool& pool() { return pool_; }
  const StopRule& stop_rule() const { return stop_; }
  void set_stop_rule(StopRule stop) { stop_ = stop; }

  std::int64_t evaluations() const { return evaluations_; }
  bool has_best() const { return !best_keys_.empty(); }
  const RandomKeys& best_keys() const { return best_keys_; }
  double best_fitness() const { return best_fitness_; }
  double time_to_best_ms() const { return time_to_best_ms_; }

  NelderMeadParams nelder_mead;

 private:
  Fitness fitness_;
  Rng rng_;
  StopRule stop_;
  bool logical_clock_;
  ElitePool pool_;
  std::chrono::steady_clock::time_point started_;
  std::int64_t evaluations_ = 0;
  RandomKeys best_keys_;
  double best_fitness_;
  double time_to_best_ms_ = 0.0;
};

// Fitness of a decoder: the makespan in minutes.
Fitness makespan_fitness(const Decoder& decoder);

// ---- local searches ----
// Each takes the current vector and its fitness, improves the vector in
// place and returns the new fitness, which is never worse.

double swap_ls(RandomKeys& a, double fa, SearchContext& ctx);
double mirror_ls(RandomKeys& a, double fa, SearchContext& ctx);
double farey_ls(RandomKeys& a, double fa, SearchContext& ctx);

std::size_t nelder_mead_iterations(std::size_t n);

struct Simplex {
  RandomKeys keys;
  double fitness;
};

// Three-point simplex search built from blends. Returns the simplex best,
// never worse than the best input.
Simplex nelder_mead_ls(Simplex a1, Simplex a2, Simplex a3, SearchContext& ctx);

// Nelder-Mead around a with two mates from the elite pool (fresh random
// vectors while the pool holds fewer than two entries).
double nelder_mead_neighborhood(RandomKeys& a, double fa, SearchContext& ctx);

enum class Neighborhood { swap, mirror, farey, nelder_mead };

inline constexpr std::array<Neighborhood, 4> kAllNeighborhoods = {
    Neighborhood::swap, Neighborhood::mirror, Neighborhood::farey, Neighborhood::nelder_mead};

double explore(Neighborhood nb, RandomKeys& a, double fa, SearchContext& ctx);

// Randomised variable neighbourhood descent. fitness_trace, if given,
// receives the accepted fitness after every neighbourhood call.
double rvnd(RandomKeys& a, double fa, SearchContext& ctx,
            std::span<const Neighborhood> neighborhoods = kAllNeighborhoods,
            std::vector<double>* fitness_trace = nullptr);

}  // namespace iorsp
