#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "iorsp/rko.hpp"
#include "oracle/fixtures.hpp"
#include "oracle/oracle.hpp"

using namespace iorsp;

namespace {

// Separable score: each key contributes on its own.
Fitness separable(std::vector<double> w) {
  return [w](const RandomKeys& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * a[i];
    return s;
  };
}

// Counts inversions against a target ranking; fitness depends only on order.
Fitness rank_distance(std::vector<std::size_t> target) {
  return [target](const RandomKeys& a) {
    std::vector<std::size_t> order(a.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x] < a[y]; });
    double d = 0;
    for (std::size_t i = 0; i < order.size(); ++i) d += order[i] == target[i] ? 0 : 1;
    return d;
  };
}

}  // namespace

TEST_CASE("shake moves") {
  Rng rng(1);
  RandomKeys a = {0.1, 0.9};
  apply_shake_move(a, ShakeMove::swap, rng);
  CHECK(a == RandomKeys{0.9, 0.1});
  RandomKeys b = {0.3};
  apply_shake_move(b, ShakeMove::mirror, rng);
  CHECK(b[0] == doctest::Approx(0.7));
  RandomKeys z = {0.0};
  apply_shake_move(z, ShakeMove::mirror, rng);
  CHECK(z[0] < 1.0);
  CHECK(complement(0.0) == kKeyMax);
}

TEST_CASE("shake move counts") {
  CHECK(shake_move_count(0.1, 10) == 1);
  CHECK(shake_move_count(0.15, 10) == 2);
  CHECK(shake_move_count(0.0, 10) == 0);
  CHECK(shake_move_count(0.01, 10) == 1);
  Rng rng(2);
  RandomKeys a = random_keys(10, rng);
  ShakeTrace trace;
  shake(a, {0.1, 0.1}, rng, &trace);
  CHECK(trace.moves.size() == 1);
  const RandomKeys before = a;
  shake(a, {0.0, 0.0}, rng, &trace);
  CHECK(a == before);
  for (int i = 0; i < 200; ++i) {
    shake(a, {0.05, 0.5}, rng);
    REQUIRE(keys_in_range(a));
  }
}

TEST_CASE("blend") {
  Rng rng(3);
  const RandomKeys a = {0.1, 0.4, 0.7};
  const RandomKeys b = {0.2, 0.8, 0.5};
  CHECK(blend(a, b, {1.0, 0.0, 1}, rng) == a);
  const auto c = blend(RandomKeys{0.3, 0.3}, RandomKeys{0.2, 0.8}, {0.0, 0.0, -1}, rng);
  CHECK(c[0] == doctest::Approx(0.8));
  CHECK(c[1] == doctest::Approx(0.2));
  const auto fresh = blend(a, b, {0.5, 1.0, 1}, rng);
  CHECK(keys_in_range(fresh));
  CHECK(fresh != a);
  CHECK_THROWS(blend(a, RandomKeys{0.1}, {}, rng));
  for (int i = 0; i < 1000; ++i) {
    const auto d = blend(a, b, {0.5, 0.0, -1}, rng);
    for (std::size_t j = 0; j < d.size(); ++j) REQUIRE((d[j] == a[j] || d[j] == b[j] || d[j] == complement(b[j])));
  }
}

TEST_CASE("Farey bands") {
  CHECK(kFarey7.size() == 19);
  for (std::size_t j = 1; j < kFarey7.size(); ++j) CHECK(kFarey7[j - 1].value() < kFarey7[j].value());
  Rng rng(4);
  for (std::size_t band = 0; band + 1 < kFarey7.size(); ++band) {
    for (int i = 0; i < 100; ++i) {
      const double v = farey_draw(band, rng);
      REQUIRE(v >= kFarey7[band].value());
      REQUIRE(v < 1.0);
      REQUIRE(v <= kFarey7[band + 1].value());
    }
  }
}

TEST_CASE("elite pool keeps the best distinct vectors") {
  ElitePool pool(3);
  pool.offer({0.1}, 5);
  pool.offer({0.2}, 3);
  pool.offer({0.1}, 5);
  pool.offer({0.3}, 9);
  pool.offer({0.4}, 1);
  REQUIRE(pool.size() == 3);
  CHECK(pool.entries()[0].fitness == 1);
  CHECK(pool.entries()[1].fitness == 3);
  CHECK(pool.entries()[2].fitness == 5);
}

TEST_CASE("local searches on one key are fixed points when nothing improves") {
  SearchContext ctx([](const RandomKeys&) { return 1.0; }, 5);
  RandomKeys a = {0.4};
  CHECK(swap_ls(a, 1.0, ctx) == 1.0);
  CHECK(mirror_ls(a, 1.0, ctx) == 1.0);
  CHECK(farey_ls(a, 1.0, ctx) == 1.0);
  CHECK(rvnd(a, 1.0, ctx) == 1.0);
  CHECK(a == RandomKeys{0.4});
}

TEST_CASE("swap search reaches an optimum one transposition away") {
  const std::vector<std::size_t> target = {0, 1, 2};
  SearchContext ctx(rank_distance(target), 6);
  for (const RandomKeys start : {RandomKeys{0.2, 0.1, 0.3}, RandomKeys{0.3, 0.2, 0.1}, RandomKeys{0.1, 0.3, 0.2}}) {
    RandomKeys a = start;
    const double f = swap_ls(a, ctx.evaluate(a), ctx);
    CHECK(f == 0);
  }
}

TEST_CASE("mirror search equals flipping every key that helps on its own") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.index(6);
    std::vector<double> w(n);
    for (double& x : w) x = rng.uniform(-1, 1);
    SearchContext ctx(separable(w), static_cast<std::uint64_t>(trial));
    RandomKeys a = random_keys(n, rng);
    RandomKeys expected = a;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = complement(a[i]);
      if (w[i] * c < w[i] * a[i]) expected[i] = c;
    }
    mirror_ls(a, ctx.evaluate(a), ctx);
    CHECK(a == expected);
  }
}

TEST_CASE("Farey moves that do not cross another key keep an order-based fitness") {
  const Instance inst = fixtures::small_generated(9, 6);
  const Decoder decoder(inst);
  Rng rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    RandomKeys a = random_keys(6, rng);
    const std::size_t i = rng.index(6);
    const double v = farey_draw(rng.index(18), rng);
    bool crosses = false;
    for (std::size_t j = 0; j < 6; ++j) {
      if (j != i && std::min(a[i], v) <= a[j] && a[j] <= std::max(a[i], v)) crosses = true;
    }
    if (crosses) continue;
    RandomKeys b = a;
    b[i] = v;
    CHECK(decoder.makespan(a) == decoder.makespan(b));
  }
}

TEST_CASE("rvnd ends in a swap and mirror local optimum") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = fixtures::small_generated(100 + trial, 6);
    const Decoder decoder(inst);
    const Fitness f = makespan_fitness(decoder);
    SearchContext ctx(f, static_cast<std::uint64_t>(trial));
    RandomKeys a = random_keys(6, rng);
    const double start = ctx.evaluate(a);
    const Neighborhood nbs[] = {Neighborhood::swap, Neighborhood::mirror};
    std::vector<double> trace;
    const double end = rvnd(a, start, ctx, nbs, &trace);
    CHECK(end <= start);
    CHECK(f(a) == end);
    for (std::size_t k = 1; k < trace.size(); ++k) CHECK(trace[k] <= trace[k - 1]);
    for (std::size_t i = 0; i < 6; ++i) {
      RandomKeys m = a;
      m[i] = complement(m[i]);
      REQUIRE(f(m) >= end);
      for (std::size_t j = i + 1; j < 6; ++j) {
        RandomKeys s = a;
        std::swap(s[i], s[j]);
        REQUIRE(f(s) >= end);
      }
    }
  }
}

TEST_CASE("Nelder-Mead") {
  CHECK(nelder_mead_iterations(1) == 1);
  CHECK(nelder_mead_iterations(100) == 13);
  CHECK(nelder_mead_iterations(58) == 7);

  const Instance inst = fixtures::small_generated(13, 6);
  const Decoder decoder(inst);
  SearchContext ctx(makespan_fitness(decoder), 14);
  ctx.nelder_mead.mu = 0.0;
  Rng rng(15);
  const RandomKeys a = random_keys(6, rng);
  const double fa = ctx.evaluate(a);
  const Simplex same = nelder_mead_ls({a, fa}, {a, fa}, {a, fa}, ctx);
  CHECK(same.keys == a);
  CHECK(same.fitness == fa);

  ctx.nelder_mead.mu = 0.02;
  double incumbent = 1e18;
  for (int i = 0; i < 30; ++i) {
    Simplex s[3];
    for (auto& x : s) {
      x.keys = random_keys(6, rng);
      x.fitness = ctx.evaluate(x.keys);
    }
    const double best_in = std::min({s[0].fitness, s[1].fitness, s[2].fitness});
    const Simplex out = nelder_mead_ls(s[0], s[1], s[2], ctx);
    CHECK(out.fitness <= best_in);
    CHECK(keys_in_range(out.keys));
    const double before = incumbent;
    incumbent = std::min(incumbent, out.fitness);
    CHECK(incumbent <= before);
    CHECK(ctx.best_fitness() <= incumbent);
  }
}

TEST_CASE("seeded operators are reproducible") {
  const Instance inst = fixtures::small_generated(16, 7);
  const Decoder decoder(inst);
  auto run = [&] {
    SearchContext ctx(makespan_fitness(decoder), 99);
    RandomKeys a = random_keys(7, ctx.rng());
    double f = ctx.evaluate(a);
    shake(a, {0.1, 0.3}, ctx.rng());
    f = rvnd(a, ctx.evaluate(a), ctx);
    return std::make_pair(a, f);
  };
  CHECK(run() == run());
}

TEST_CASE("search context bookkeeping") {
  SearchContext ctx([](const RandomKeys& a) { return a[0]; }, 1, StopRule{std::nullopt, 0.2, 5}, true);
  CHECK_FALSE(ctx.should_stop());
  ctx.evaluate({0.5});
  ctx.evaluate({0.7});
  ctx.evaluate({0.3});
  CHECK(ctx.best_fitness() == 0.3);
  CHECK(ctx.time_to_best_ms() == 3);
  CHECK(ctx.evaluations() == 3);
  CHECK_FALSE(ctx.should_stop());
  ctx.evaluate({0.1});
  CHECK(ctx.target_reached());
  CHECK(ctx.should_stop());
}
