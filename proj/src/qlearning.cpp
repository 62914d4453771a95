#include "iorsp/qlearning.hpp"

#include <algorithm>
#include <stdexcept>

namespace iorsp {

double q_update_value(double q, double reward, double max_next, double lf, double df) {
  return q + lf * (reward + df * max_next - q);
}

double reward_increment(double prev, double curr, double population_size) {
  if (!(curr < prev)) return 0.0;
  return (prev / curr - 1.0) / population_size;
}

std::size_t epsilon_greedy(std::span<const double> values, double eps, Rng& rng) {
  if (values.empty()) throw std::invalid_argument("epsilon_greedy needs at least one action");
  if (rng.uniform01() < eps) return rng.index(values.size());
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

QTable::QTable(std::size_t states) : q_(states), r_(states), visited_(states) {
  if (states == 0) throw std::invalid_argument("QTable needs at least one state");
  for (std::size_t s = 0; s < states; ++s) {
    q_[s].fill(0.0);
    r_[s].fill(0.0);
    visited_[s].fill(false);
  }
}

std::vector<std::size_t> QTable::actions(std::size_t s) const {
  std::vector<std::size_t> out;
  if (s > 0) out.push_back(s - 1);
  out.push_back(s);
  if (s + 1 < states()) out.push_back(s + 1);
  return out;
}

double QTable::max_value(std::size_t s) const {
  double best = value(s, s);
  for (std::size_t t : actions(s)) best = std::max(best, value(s, t));
  return best;
}

std::size_t QTable::select(std::size_t s, double eps, Rng& rng) const {
  const auto acts = actions(s);
  std::vector<double> values;
  for (std::size_t t : acts) values.push_back(value(s, t));
  return acts[epsilon_greedy(values, eps, rng)];
}

void QTable::add_reward(std::size_t s, std::size_t target, double r) { r_[s][slot(s, target)] += r; }

void QTable::mark_visited(std::size_t s, std::size_t target) { visited_[s][slot(s, target)] = true; }

void QTable::update(std::size_t s, std::size_t target, double lf, double df) {
  double& q = q_[s][slot(s, target)];
  q = q_update_value(q, reward(s, target), max_value(target), lf, df);
}

void QTable::update_visited(double lf, double df) {
  for (std::size_t s = 0; s < states(); ++s) {
    for (std::size_t t : actions(s)) {
      if (visited_[s][slot(s, t)]) update(s, t, lf, df);
    }
  }
  for (std::size_t s = 0; s < states(); ++s) {
    r_[s].fill(0.0);
    visited_[s].fill(false);
  }
}

}  // namespace iorsp
