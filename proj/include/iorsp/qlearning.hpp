#pragma once

#include <array>
#include <span>
#include <vector>

#include "iorsp/rng.hpp"

namespace iorsp {

// One temporal-difference step: q + lf * (reward + df * max_next - q).
double q_update_value(double q, double reward, double max_next, double lf, double df);

// Reward for a generation whose best went from prev to curr (minimisation);
// zero unless it improved.
double reward_increment(double prev, double curr, double population_size);

// Argmax with probability 1 - eps (ties to the lowest index), otherwise a
// uniformly random index.
std::size_t epsilon_greedy(std::span<const double> values, double eps, Rng& rng);

// Q-values for one parameter whose states form a chain. From state s the
// actions move to s - 1, stay at s or move to s + 1 where those exist, so
// an action is identified by the state it leads to.
class QTable {
 public:
  explicit QTable(std::size_t states);

  std::size_t states() const { return q_.size(); }
  std::vector<std::size_t> actions(std::size_t s) const;

  double value(std::size_t s, std::size_t target) const { return q_[s][slot(s, target)]; }
  void set_value(std::size_t s, std::size_t target, double v) { q_[s][slot(s, target)] = v; }
  double reward(std::size_t s, std::size_t target) const { return r_[s][slot(s, target)]; }
  double max_value(std::size_t s) const;

  std::size_t select(std::size_t s, double eps, Rng& rng) const;

  void add_reward(std::size_t s, std::size_t target, double r);
  void mark_visited(std::size_t s, std::size_t target);

  // Applies the update to one pair; the next state is the action's target.
  void update(std::size_t s, std::size_t target, double lf, double df);
  // Updates every pair visited since the last call, then clears rewards.
  void update_visited(double lf, double df);

 private:
  static std::size_t slot(std::size_t s, std::size_t target) { return target + 1 - s; }

  std::vector<std::array<double, 3>> q_;
  std::vector<std::array<double, 3>> r_;
  std::vector<std::array<bool, 3>> visited_;
};

}  // namespace iorsp
