#include "doctest.h"
#include "iorsp/decoder.hpp"
#include "iorsp/rng.hpp"
#include "iorsp/rko.hpp"
#include "oracle/fixtures.hpp"
#include "oracle/oracle.hpp"

using namespace iorsp;
using fixtures::room;
using fixtures::task;

namespace {

const std::vector<double> kToyKeys = {0.2, 0.6, 0.1, 0.4, 0.3};

std::string room_of(const Instance& inst, const Schedule& s, std::size_t k, std::size_t t) {
  return inst.resources[s.surgeries[k].tasks[t].room].id;
}

}  // namespace

TEST_CASE("surgery order: keys, then priority tiers") {
  const std::vector<int> flat(5, 0);
  CHECK(order_surgeries(kToyKeys, flat) == SurgeryOrder{2, 0, 4, 3, 1});
  const std::vector<double> same = {0.5, 0.5};
  const std::vector<int> tiers = {2, 1};
  CHECK(order_surgeries(same, tiers) == SurgeryOrder{1, 0});
  const std::vector<double> sorted = {0.1, 0.2, 0.3};
  CHECK(order_surgeries(sorted, std::vector<int>(3, 0)) == SurgeryOrder{0, 1, 2});
  CHECK_THROWS(order_surgeries(sorted, flat));
}

TEST_CASE("toy decode follows the greedy insertion pattern") {
  const Instance toy = fixtures::toy5();
  const Decoder decoder(toy);
  CHECK(decoder.order(kToyKeys) == SurgeryOrder{2, 0, 4, 3, 1});

  Schedule s = decoder.empty_schedule();
  decoder.greedy_insert(s, 2);
  decoder.greedy_insert(s, 0);
  // Surgery 3: bed 1, OR 1, back to bed 1 in the first three hour slots.
  CHECK(room_of(toy, s, 2, 0) == "bed-1");
  CHECK(room_of(toy, s, 2, 1) == "or-1");
  CHECK(room_of(toy, s, 2, 2) == "bed-1");
  CHECK(s.surgeries[2].tasks[1].start == 60);
  CHECK(s.surgeries[2].tasks[2].start == 120);
  // Surgery 1: the other bed, OR 2 for slots 2-3, the PSRU in slot 4, home in slot 5.
  CHECK(room_of(toy, s, 0, 0) == "bed-2");
  CHECK(room_of(toy, s, 0, 1) == "or-2");
  CHECK(s.surgeries[0].tasks[1].start == 60);
  CHECK(room_of(toy, s, 0, 2) == "psru-1");
  CHECK(s.surgeries[0].tasks[2].start == 180);
  CHECK(room_of(toy, s, 0, 3) == "bed-2");
  CHECK(s.surgeries[0].tasks[3].start == 240);
  CHECK(s.makespan == 300);
  VerifyOptions partial;
  partial.allow_unscheduled = true;
  CHECK(verify_schedule(s, toy, partial).empty());

  const Schedule full = decoder.decode(kToyKeys);
  CHECK(verify_schedule(full, toy).empty());
  CHECK(full.surgeries[2] == s.surgeries[2]);
  CHECK(full.surgeries[0] == s.surgeries[0]);
}

TEST_CASE("single task on a free room starts at zero") {
  Instance inst;
  inst.resources = {room("bed-1", ResourceKind::bed)};
  inst.surgeries = {fixtures::chain("s1", {task(45, {"bed-1"})})};
  const Schedule s = decode(std::vector<double>{0.3}, inst);
  CHECK(s.surgeries[0].tasks[0].start == 0);
  CHECK(s.makespan == 45);
}

TEST_CASE("one surgery: makespan is the chain length whatever the key") {
  Instance inst;
  inst.resources = {room("bed-1", ResourceKind::bed), room("or-1", ResourceKind::operating_room)};
  inst.surgeries = {fixtures::chain("s1", {task(30, {"bed-1"}, 10), task(90, {"or-1"}, 20, 30), task(200, {"bed-1"})})};
  for (double k : {0.0, 0.4, 0.99}) CHECK(decode(std::vector<double>{k}, inst).makespan == 30 + 10 + 90 + 20 + 200);
}

TEST_CASE("excess blocking shifts the whole chain") {
  Instance inst;
  inst.blocking_limit = 15;
  inst.resources = {room("bed-1", ResourceKind::bed), room("or-1", ResourceKind::operating_room, {100}),
                    room("or-2", ResourceKind::operating_room, {250})};
  inst.surgeries = {fixtures::chain("s1", {task(30, {"bed-1"}), task(60, {"or-1", "or-2"}), task(30, {"bed-1"})})};
  const Schedule s = decode(std::vector<double>{0.5}, inst);
  REQUIRE(verify_schedule(s, inst).empty());
  // The OR opens at 100; waiting there from 30 would block for 70 minutes.
  CHECK(s.surgeries[0].tasks[0].start == 70);
  CHECK(s.surgeries[0].tasks[1].start == 100);
  for (const auto& t : s.surgeries[0].tasks) CHECK(t.blocking <= inst.blocking_limit);
  const auto ref = oracle::sequential_schedule(inst, {0});
  REQUIRE(ref);
  CHECK(ref->makespan == s.makespan);
}

TEST_CASE("bed stays grow when the recovery queue is long") {
  // One PSRU forces the second patient to wait; the bed hold has to extend.
  Instance inst;
  inst.blocking_limit = 1000;
  inst.resources = {room("bed-1", ResourceKind::bed), room("bed-2", ResourceKind::bed),
                    room("or-1", ResourceKind::operating_room), room("or-2", ResourceKind::operating_room),
                    room("psru-1", ResourceKind::recovery_room)};
  for (int i = 0; i < 3; ++i) {
    inst.surgeries.push_back(fixtures::chain("s" + std::to_string(i), {task(20, {"bed-1", "bed-2"}), task(50, {"or-1", "or-2"}, 5, 10),
                                                                     task(100, {"psru-1"}, 5), task(30, {"bed-1", "bed-2"}, 0, 10)}));
  }
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto keys = random_keys(3, rng);
    const Schedule s = decode(keys, inst);
    REQUIRE(verify_schedule(s, inst).empty());
    const auto ref = oracle::sequential_schedule(inst, Decoder(inst).order(keys));
    REQUIRE(ref);
    CHECK(ref->makespan == s.makespan);
  }
}

TEST_CASE("unschedulable surgeries name themselves") {
  Instance inst;
  inst.resources = {room("bed-1", ResourceKind::bed, {0, 100})};
  inst.surgeries = {fixtures::chain("long", {task(200, {"bed-1"})})};
  try {
    decode(std::vector<double>{0.1}, inst);
    FAIL("expected an exception");
  } catch (const UnschedulableSurgery& e) {
    CHECK(e.surgery_id() == "long");
  }
}

TEST_CASE("decode matches the reference scheduler allocation by allocation") {
  Rng rng(21);
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Instance inst = fixtures::small_generated(seed, 7);
    REQUIRE(validate_instance(inst).empty());
    const Decoder decoder(inst);
    for (int trial = 0; trial < 10; ++trial) {
      const auto keys = random_keys(inst.surgeries.size(), rng);
      const Schedule s = decoder.decode(keys);
      REQUIRE(verify_schedule(s, inst).empty());
      const auto ref = oracle::sequential_schedule(inst, decoder.order(keys));
      REQUIRE(ref);
      REQUIRE(ref->makespan == s.makespan);
      for (std::size_t k = 0; k < inst.surgeries.size(); ++k) {
        for (std::size_t t = 0; t < inst.surgeries[k].tasks.size(); ++t) {
          const auto& a = s.surgeries[k].tasks[t];
          const auto& b = ref->surgeries[k][t];
          REQUIRE(a.room == b.room);
          REQUIRE(a.start == b.start);
          REQUIRE(a.blocking == b.blocking);
          REQUIRE(a.equipment == b.equipment);
        }
      }
    }
  }
}

TEST_CASE("determinism and permutation sufficiency") {
  const Instance inst = fixtures::small_generated(4, 8);
  const Decoder decoder(inst);
  Rng rng(5);
  const auto keys = random_keys(inst.surgeries.size(), rng);
  CHECK(decoder.decode(keys) == decoder.decode(keys));
  // Another vector with the same ranks decodes identically.
  const auto order = decoder.order(keys);
  std::vector<double> ranked(keys.size());
  for (std::size_t i = 0; i < order.size(); ++i) ranked[order[i]] = (static_cast<double>(i) + 0.5) / static_cast<double>(order.size());
  CHECK(decoder.decode(ranked) == decoder.decode(keys));
}

TEST_CASE("verifier flags overlaps, availability and blocking") {
  Instance inst;
  inst.resources = {room("bed-1", ResourceKind::bed), room("bed-2", ResourceKind::bed),
                    room("or-1", ResourceKind::operating_room, {420, 1320})};
  inst.surgeries = {fixtures::chain("a", {task(60, {"bed-1", "bed-2"}), task(60, {"or-1"}), task(60, {"bed-1", "bed-2"})}),
                    fixtures::chain("b", {task(60, {"bed-1", "bed-2"}), task(60, {"or-1"}), task(60, {"bed-1", "bed-2"})})};
  const Schedule good = decode(std::vector<double>{0.1, 0.2}, inst);
  REQUIRE(verify_schedule(good, inst).empty());

  auto rules = [&](const Schedule& s) {
    std::vector<std::string> out;
    for (const auto& v : verify_schedule(s, inst, VerifyOptions{false, false})) out.push_back(v.rule);
    return out;
  };
  auto has = [](const std::vector<std::string>& v, const std::string& r) { return std::find(v.begin(), v.end(), r) != v.end(); };

  Schedule clash = good;
  // Put b in the OR at the same time as a.
  auto& b = clash.surgeries[1].tasks;
  const Instant shift = b[0].start - clash.surgeries[0].tasks[0].start;
  for (auto& t : b) t.start -= shift;
  clash.makespan = std::max(clash.surgeries[0].tasks[2].start, b[2].start) + 60;
  CHECK(has(rules(clash), "resource overlap"));

  Schedule night = good;
  for (auto& t : night.surgeries[0].tasks) t.start -= 420;
  night.makespan = std::max(night.surgeries[0].tasks[2].start, night.surgeries[1].tasks[2].start) + 60;
  CHECK(has(rules(night), "availability"));

  Schedule waiting = good;
  waiting.surgeries[0].tasks[2].start += 40;
  waiting.surgeries[0].tasks[2].blocking += 40;
  waiting.makespan = std::max(waiting.makespan, waiting.surgeries[0].tasks[2].start + 60);
  CHECK(has(rules(waiting), "blocking limit"));

  Schedule moved = good;
  moved.surgeries[0].tasks[2].room = moved.surgeries[0].tasks[0].room == 0 ? 1 : 0;
  CHECK(has(rules(moved), "bed stay"));

  Schedule wrong = good;
  wrong.makespan += 1;
  CHECK(has(rules(wrong), "makespan"));
}
