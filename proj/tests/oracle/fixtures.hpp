#pragma once

#include <string>

#include "iorsp/instance_io.hpp"
#include "iorsp/toolkit/generator.hpp"

namespace fixtures {

inline iorsp::Instance toy5() { return iorsp::load_instance_file(std::string(IORSP_DATA_DIR) + "/toy5.json"); }

// Small generated instance: a handful of rooms so orderings matter.
inline iorsp::Instance small_generated(std::uint64_t seed, int surgeries, int beds = 2, int ors = 2) {
  iorsp::GeneratorConfig cfg = iorsp::default_generator_config();
  cfg.seed = seed;
  cfg.surgeries = surgeries;
  cfg.jitter = 0.0;
  cfg.beds = beds;
  cfg.operating_rooms = ors;
  cfg.recovery_rooms = 1;
  cfg.surgeons = 2;
  cfg.horizon_days = 21;
  return iorsp::generate_instance(cfg);
}

// Instance with one task per listed chain; rooms always available.
inline iorsp::Surgery chain(std::string id, std::initializer_list<iorsp::TaskSpec> tasks, int priority = 0) {
  iorsp::Surgery s;
  s.id = std::move(id);
  s.priority = priority;
  s.tasks = tasks;
  return s;
}

inline iorsp::TaskSpec task(iorsp::Duration d, std::vector<std::string> rooms, iorsp::Duration m = 0,
                            iorsp::Duration c = 0) {
  iorsp::TaskSpec t;
  t.duration = d;
  t.moving = m;
  t.cleaning = c;
  t.rooms = std::move(rooms);
  return t;
}

inline iorsp::Resource room(std::string id, iorsp::ResourceKind kind, std::vector<iorsp::Instant> w = {0}) {
  return iorsp::Resource{std::move(id), kind, std::nullopt, iorsp::AvailabilitySlots(std::move(w))};
}

}  // namespace fixtures
