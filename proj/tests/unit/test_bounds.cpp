#include "doctest.h"
#include "iorsp/bounds.hpp"
#include "iorsp/decoder.hpp"
#include "iorsp/rng.hpp"
#include "oracle/fixtures.hpp"
#include "oracle/oracle.hpp"

using namespace iorsp;
using fixtures::room;
using fixtures::task;

namespace {

Instance three_stage(std::vector<std::array<Duration, 6>> chains, int beds, int ors) {
  Instance inst;
  std::vector<std::string> bed_ids, or_ids;
  for (int b = 1; b <= beds; ++b) {
    bed_ids.push_back("bed-" + std::to_string(b));
    inst.resources.push_back(room(bed_ids.back(), ResourceKind::bed));
  }
  for (int r = 1; r <= ors; ++r) {
    or_ids.push_back("or-" + std::to_string(r));
    inst.resources.push_back(room(or_ids.back(), ResourceKind::operating_room));
  }
  int k = 0;
  for (const auto& c : chains) {
    inst.surgeries.push_back(fixtures::chain("s" + std::to_string(++k),
                                             {task(c[0], bed_ids, c[1]), task(c[2], or_ids, c[3], c[3]), task(c[4], bed_ids, c[5])}));
  }
  return inst;
}

OrTerm term(Duration f, Duration s, Duration l, std::vector<std::size_t> rooms) { return OrTerm{0, f, s, l, std::move(rooms)}; }

}  // namespace

TEST_CASE("relaxation terms of a three-task chain") {
  const Instance inst = three_stage({{60, 10, 120, 15, 240, 0}}, 1, 1);
  const auto beds = bed_terms(inst);
  REQUIRE(beds.size() == 1);
  CHECK(beds[0].stay == 445);
  const OrTerms ors = or_terms(inst);
  REQUIRE(ors.terms.size() == 1);
  CHECK(ors.terms[0].first == 70);
  CHECK(ors.terms[0].surgery_time == 135);
  CHECK(ors.terms[0].last == 240);
}

TEST_CASE("degenerate term shapes") {
  Instance inst;
  inst.resources = {room("bed-1", ResourceKind::bed), room("or-1", ResourceKind::operating_room)};
  inst.surgeries = {fixtures::chain("one", {task(50, {"bed-1"}, 7)}),
                    fixtures::chain("still", {task(10, {"bed-1"}), task(20, {"or-1"}), task(30, {"bed-1"})})};
  const auto beds = bed_terms(inst);
  CHECK(beds[0].stay == 57);
  CHECK(beds[1].stay == 60);
  const OrTerms ors = or_terms(inst);
  CHECK(ors.terms.size() == 1);
  CHECK(ors.warnings.size() == 1);
}

TEST_CASE("bed model") {
  const std::vector<Duration> stays = {30, 50, 20};
  CHECK(solve_bed_model(stays, 1).value == 100);
  const std::vector<Duration> even = {4, 4};
  const auto r = solve_bed_model(even, 2);
  CHECK(r.value == 4);
  CHECK(r.status == BoundStatus::optimal);
  CHECK(solve_bed_model(std::vector<Duration>{}, 3).value == 0);
  CHECK_THROWS_AS(solve_bed_model(even, 0), BoundError);
}

TEST_CASE("OR model") {
  const std::vector<OrTerm> pair = {term(10, 100, 30, {0}), term(20, 100, 5, {0})};
  CHECK(solve_or_model(pair, 1).value == 215);
  const OrTerm* both[] = {&pair[0], &pair[1]};
  CHECK(or_room_cost(both) == 215);
  const OrTerm* lone[] = {&pair[0]};
  CHECK(or_room_cost(lone) == 140);

  // Without first/last terms it is plain load balancing.
  const std::vector<OrTerm> flat = {term(0, 7, 0, {0, 1}), term(0, 5, 0, {0, 1}), term(0, 4, 0, {0, 1}), term(0, 4, 0, {0, 1})};
  CHECK(solve_or_model(flat, 2).value == solve_bed_model(std::vector<Duration>{7, 5, 4, 4}, 2).value);

  const std::vector<OrTerm> orphan = {term(1, 1, 1, {})};
  CHECK_THROWS_AS(solve_or_model(orphan, 1), BoundError);
}

TEST_CASE("bounds agree with brute force on small random models") {
  Rng rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng.index(9);
    const std::size_t m = 1 + rng.index(4);
    std::vector<Duration> stays;
    std::vector<oracle::OrItem> items;
    std::vector<OrTerm> terms;
    for (std::size_t i = 0; i < n; ++i) {
      stays.push_back(1 + static_cast<Duration>(rng.below(300)));
      oracle::OrItem it;
      it.first = static_cast<Duration>(rng.below(80));
      it.surgery = 1 + static_cast<Duration>(rng.below(200));
      it.last = static_cast<Duration>(rng.below(300));
      for (std::size_t r = 0; r < m; ++r) {
        if (rng.bernoulli(0.6)) it.rooms.push_back(r);
      }
      if (it.rooms.empty()) it.rooms.push_back(rng.index(m));
      terms.push_back(OrTerm{i, it.first, it.surgery, it.last, it.rooms});
      items.push_back(std::move(it));
    }
    const auto bed = solve_bed_model(stays, m);
    REQUIRE(bed.status == BoundStatus::optimal);
    REQUIRE(bed.value == oracle::min_max_partition(stays, m));
    const auto orm = solve_or_model(terms, m);
    REQUIRE(orm.status == BoundStatus::optimal);
    REQUIRE(orm.value == oracle::min_max_or_assignment(items, m));
  }
}

TEST_CASE("relabelling rooms leaves the optimum alone") {
  const std::vector<OrTerm> a = {term(5, 40, 10, {0, 1}), term(8, 30, 3, {1, 2}), term(2, 60, 9, {0, 2}), term(4, 20, 1, {0, 1, 2})};
  std::vector<OrTerm> b = a;
  const std::size_t perm[] = {2, 0, 1};
  for (auto& t : b) {
    for (auto& r : t.rooms) r = perm[r];
    std::sort(t.rooms.begin(), t.rooms.end());
  }
  CHECK(solve_or_model(a, 3).value == solve_or_model(b, 3).value);
}

TEST_CASE("node limits yield a valid bound") {
  Rng rng(19);
  std::vector<Duration> stays;
  for (int i = 0; i < 30; ++i) stays.push_back(100 + static_cast<Duration>(rng.below(900)));
  BoundOptions tiny;
  tiny.node_limit = 5;
  tiny.use_time_cap = false;
  const auto cut = solve_bed_model(stays, 7, tiny);
  const auto full = solve_bed_model(stays, 7, BoundOptions{30.0, std::nullopt, true});
  CHECK(cut.value <= full.value);
  if (cut.status == BoundStatus::bound) CHECK(cut.value < full.value + 1);
}

TEST_CASE("best bound takes the larger relaxation") {
  // Stays of 3398, 2686 and 2686 minutes: one bed gives 8770 (6.09 days).
  // Sharing an OR with a long operation never pays, so the first surgery
  // alone sets the OR value at 3398 (2.36 days).
  Instance inst = three_stage({{1000, 0, 398, 0, 2000, 0}, {100, 0, 2486, 0, 100, 0}, {100, 0, 2486, 0, 100, 0}}, 1, 3);
  const BestBound b = best_lower_bound(inst);
  REQUIRE(b.bed);
  REQUIRE(b.operating_room);
  CHECK(b.bed->value == 8770);
  CHECK(b.operating_room->value == 3398);
  CHECK(b.value == 8770);
  CHECK(std::round(to_days(b.value) * 100) / 100 == doctest::Approx(6.09));
  CHECK(std::round(to_days(b.operating_room->value) * 100) / 100 == doctest::Approx(2.36));

  Instance same = three_stage({{10, 0, 10, 0, 10, 0}}, 1, 1);
  CHECK(best_lower_bound(same).value == 30);

  Instance no_or;
  no_or.resources = {room("bed-1", ResourceKind::bed)};
  no_or.surgeries = {fixtures::chain("s", {task(40, {"bed-1"})})};
  const BestBound only_bed = best_lower_bound(no_or);
  CHECK_FALSE(only_bed.operating_room.has_value());
  CHECK(only_bed.value == 40);
  CHECK_THROWS_AS(or_lower_bound(no_or), BoundError);

  Instance empty;
  CHECK_THROWS_AS(best_lower_bound(empty), BoundError);
}

TEST_CASE("bounds never exceed decoded makespans") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = fixtures::small_generated(seed, 9);
    const Duration lb = best_lower_bound(inst).value;
    const Decoder decoder(inst);
    Rng rng(seed);
    for (int i = 0; i < 50; ++i) {
      std::vector<double> keys(inst.surgeries.size());
      for (double& k : keys) k = rng.uniform01();
      REQUIRE(lb <= decoder.makespan(keys));
    }
  }
}
