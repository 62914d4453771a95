#include "iorsp/rko.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace iorsp {

RandomKeys random_keys(std::size_t n, Rng& rng) {
  RandomKeys a(n);
  for (double& k : a) k = rng.uniform01();
  return a;
}

bool keys_in_range(std::span<const double> keys) {
  return std::all_of(keys.begin(), keys.end(), [](double k) { return k >= 0.0 && k < 1.0; });
}

std::size_t shake_move_count(double beta, std::size_t n) {
  if (beta <= 0.0 || n == 0) return 0;
  // The epsilon absorbs products such as 0.3 * 10 = 3.0000000000000004.
  const double raw = std::ceil(beta * static_cast<double>(n) - 1e-9);
  return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

void apply_shake_move(RandomKeys& a, ShakeMove move, Rng& rng) {
  const std::size_t n = a.size();
  if (n == 0) return;
  switch (move) {
    case ShakeMove::swap: {
      if (n < 2) return;
      const std::size_t i = rng.index(n);
      std::size_t j = rng.index(n - 1);
      if (j >= i) ++j;
      std::swap(a[i], a[j]);
      break;
    }
    case ShakeMove::swap_neighbor: {
      if (n < 2) return;
      const std::size_t i = rng.index(n - 1);
      std::swap(a[i], a[i + 1]);
      break;
    }
    case ShakeMove::mirror: {
      const std::size_t i = rng.index(n);
      a[i] = complement(a[i]);
      break;
    }
    case ShakeMove::random:
      a[rng.index(n)] = rng.uniform01();
      break;
  }
}

void shake(RandomKeys& a, ShakeBounds bounds, Rng& rng, ShakeTrace* trace) {
  const double beta = bounds.beta_min + (bounds.beta_max - bounds.beta_min) * rng.uniform01();
  const std::size_t moves = shake_move_count(beta, a.size());
  if (trace) {
    trace->beta = beta;
    trace->moves.clear();
  }
  for (std::size_t m = 0; m < moves; ++m) {
    const auto move = static_cast<ShakeMove>(rng.index(4));
    apply_shake_move(a, move, rng);
    if (trace) trace->moves.push_back(move);
  }
}

RandomKeys blend(std::span<const double> a, std::span<const double> b, BlendParams params, Rng& rng) {
  if (a.size() != b.size()) throw std::invalid_argument("blend of vectors with different lengths");
  RandomKeys c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (rng.uniform01() < params.mu) {
      c[i] = rng.uniform01();
    } else if (rng.uniform01() < params.rho) {
      c[i] = a[i];
    } else {
      c[i] = params.factor >= 0 ? b[i] : complement(b[i]);
    }
  }
  return c;
}

double farey_draw(std::size_t band, Rng& rng) {
  const double lo = kFarey7[band].value();
  const double hi = kFarey7[band + 1].value();
  const double v = lo + (hi - lo) * rng.uniform01();
  return std::min(v, std::nextafter(hi, lo));
}

void ElitePool::offer(const RandomKeys& keys, double fitness) {
  if (capacity_ == 0) return;
  if (entries_.size() == capacity_ && !(fitness < entries_.back().fitness)) return;
  for (const Entry& e : entries_) {
    if (e.keys == keys) return;
  }
  auto pos = std::upper_bound(entries_.begin(), entries_.end(), fitness,
                              [](double f, const Entry& e) { return f < e.fitness; });
  entries_.insert(pos, Entry{keys, fitness});
  if (entries_.size() > capacity_) entries_.pop_back();
}

SearchContext::SearchContext(Fitness fitness, std::uint64_t seed, StopRule stop, bool logical_clock,
                             std::size_t elite_capacity)
    : fitness_(std::move(fitness)),
      rng_(seed),
      stop_(stop),
      logical_clock_(logical_clock),
      pool_(elite_capacity),
      started_(std::chrono::steady_clock::now()),
      best_fitness_(std::numeric_limits<double>::infinity()) {}

double SearchContext::elapsed_ms() const {
  if (logical_clock_) return static_cast<double>(evaluations_);
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started_).count();
}

double SearchContext::evaluate(const RandomKeys& keys) {
  const double f = fitness_(keys);
  ++evaluations_;
  if (f < best_fitness_) {
    best_fitness_ = f;
    best_keys_ = keys;
    time_to_best_ms_ = elapsed_ms();
  }
  pool_.offer(keys, f);
  return f;
}

bool SearchContext::should_stop() const {
  if (target_reached()) return true;
  if (stop_.max_evaluations && evaluations_ >= *stop_.max_evaluations) return true;
  if (stop_.time_limit_ms && elapsed_ms() >= *stop_.time_limit_ms) return true;
  return false;
}

Fitness makespan_fitness(const Decoder& decoder) {
  return [&decoder](const RandomKeys& keys) { return static_cast<double>(decoder.makespan(keys)); };
}

namespace {

std::vector<std::size_t> random_order(std::size_t n, Rng& rng) {
  std::vector<std::size_t> rk(n);
  std::iota(rk.begin(), rk.end(), std::size_t{0});
  rng.shuffle(rk);
  return rk;
}

}  // namespace

double swap_ls(RandomKeys& a, double fa, SearchContext& ctx) {
  const std::size_t n = a.size();
  const auto rk = random_order(n, ctx.rng());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (ctx.should_stop()) return fa;
      std::swap(a[rk[i]], a[rk[j]]);
      const double f = ctx.evaluate(a);
      if (f < fa) {
        fa = f;
      } else {
        std::swap(a[rk[i]], a[rk[j]]);
      }
    }
  }
  return fa;
}

double mirror_ls(RandomKeys& a, double fa, SearchContext& ctx) {
  const auto rk = random_order(a.size(), ctx.rng());
  for (std::size_t i : rk) {
    if (ctx.should_stop()) return fa;
    const double old = a[i];
    a[i] = complement(old);
    const double f = ctx.evaluate(a);
    if (f < fa) {
      fa = f;
    } else {
      a[i] = old;
    }
  }
  return fa;
}

double farey_ls(RandomKeys& a, double fa, SearchContext& ctx) {
  const auto rk = random_order(a.size(), ctx.rng());
  for (std::size_t i : rk) {
    for (std::size_t band = 0; band + 1 < kFarey7.size(); ++band) {
      if (ctx.should_stop()) return fa;
      const double old = a[i];
      a[i] = farey_draw(band, ctx.rng());
      const double f = ctx.evaluate(a);
      if (f < fa) {
        fa = f;
      } else {
        a[i] = old;
      }
    }
  }
  return fa;
}

std::size_t nelder_mead_iterations(std::size_t n) {
  const double raw = std::floor(static_cast<double>(n) * std::exp(-2.0));
  return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

Simplex nelder_mead_ls(Simplex a1, Simplex a2, Simplex a3, SearchContext& ctx) {
  std::array<Simplex, 3> x = {std::move(a1), std::move(a2), std::move(a3)};
  auto sort_simplex = [&x] {
    std::stable_sort(x.begin(), x.end(), [](const Simplex& p, const Simplex& q) { return p.fitness < q.fitness; });
  };
  const NelderMeadParams nm = ctx.nelder_mead;
  auto mix = [&](const RandomKeys& p, const RandomKeys& q, int factor) {
    return blend(p, q, BlendParams{nm.rho, nm.mu, factor}, ctx.rng());
  };
  auto scored = [&](RandomKeys keys) {
    const double f = ctx.evaluate(keys);
    return Simplex{std::move(keys), f};
  };

  sort_simplex();
  RandomKeys a0 = mix(x[0].keys, x[1].keys, 1);
  const std::size_t iterations = nelder_mead_iterations(x[0].keys.size());
  for (std::size_t iter = 0; iter < iterations && !ctx.should_stop(); ++iter) {
    bool shrink = false;
    Simplex ar = scored(mix(a0, x[2].keys, -1));
    if (ar.fitness < x[0].fitness) {
      Simplex ae = scored(mix(ar.keys, a0, -1));
      x[2] = ae.fitness < ar.fitness ? std::move(ae) : std::move(ar);
    } else if (ar.fitness < x[1].fitness) {
      x[2] = std::move(ar);
    } else if (ar.fitness < x[2].fitness) {
      Simplex ac = scored(mix(ar.keys, a0, 1));
      if (ac.fitness < ar.fitness) {
        x[2] = std::move(ac);
      } else {
        shrink = true;
      }
    } else {
      Simplex ac = scored(mix(a0, x[2].keys, 1));
      if (ac.fitness < x[2].fitness) {
        x[2] = std::move(ac);
      } else {
        shrink = true;
      }
    }
    if (shrink) {
      for (std::size_t i = 1; i < 3; ++i) x[i] = scored(mix(x[0].keys, x[i].keys, 1));
    }
    sort_simplex();
    a0 = mix(x[0].keys, x[1].keys, 1);
  }
  return std::move(x[0]);
}

double nelder_mead_neighborhood(RandomKeys& a, double fa, SearchContext& ctx) {
  const std::size_t n = a.size();
  std::vector<Simplex> mates;
  const auto& pool = ctx.pool().entries();
  if (pool.size() >= 2) {
    const std::size_t i = ctx.rng().index(pool.size());
    std::size_t j = ctx.rng().index(pool.size() - 1);
    if (j >= i) ++j;
    mates.push_back({pool[i].keys, pool[i].fitness});
    mates.push_back({pool[j].keys, pool[j].fitness});
  } else {
    for (int m = 0; m < 2; ++m) {
      RandomKeys r = random_keys(n, ctx.rng());
      const double f = ctx.evaluate(r);
      mates.push_back({std::move(r), f});
    }
  }
  Simplex best = nelder_mead_ls({a, fa}, std::move(mates[0]), std::move(mates[1]), ctx);
  if (best.fitness < fa) {
    a = std::move(best.keys);
    return best.fitness;
  }
  return fa;
}

double explore(Neighborhood nb, RandomKeys& a, double fa, SearchContext& ctx) {
  switch (nb) {
    case Neighborhood::swap: return swap_ls(a, fa, ctx);
    case Neighborhood::mirror: return mirror_ls(a, fa, ctx);
    case Neighborhood::farey: return farey_ls(a, fa, ctx);
    case Neighborhood::nelder_mead: return nelder_mead_neighborhood(a, fa, ctx);
  }
  return fa;
}

double rvnd(RandomKeys& a, double fa, SearchContext& ctx, std::span<const Neighborhood> neighborhoods,
            std::vector<double>* fitness_trace) {
  std::vector<Neighborhood> list(neighborhoods.begin(), neighborhoods.end());
  while (!list.empty() && !ctx.should_stop()) {
    const std::size_t pick = ctx.rng().index(list.size());
    RandomKeys candidate = a;
    const double f = explore(list[pick], candidate, fa, ctx);
    if (f < fa) {
      a = std::move(candidate);
      fa = f;
      list.assign(neighborhoods.begin(), neighborhoods.end());
    } else {
      list.erase(list.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    if (fitness_trace) fitness_trace->push_back(fa);
  }
  return fa;
}

}  // namespace iorsp
