#include "iorsp/toolkit/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "detail/json_fields.hpp"

namespace iorsp {

using namespace detail;

namespace {

MinuteRange parse_range(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) return {};
  const std::string here = path + "." + key;
  if (it->is_number_integer()) {
    const Duration v = it->get<Duration>();
    return {v, v};
  }
  if (!it->is_array() || it->size() != 2) field_error(here, "expected [lo, hi]");
  MinuteRange r{as_int((*it)[0], here + "[0]"), as_int((*it)[1], here + "[1]")};
  if (r.lo < 0 || r.hi < r.lo) field_error(here, "expected 0 <= lo <= hi");
  return r;
}

StageSpec parse_stage(const json& obj, const char* key, const std::string& path) {
  StageSpec st;
  auto it = obj.find(key);
  if (it == obj.end()) return st;
  const std::string here = path + "." + key;
  if (!it->is_object()) field_error(here, "expected object");
  st.duration = parse_range(*it, "duration", here);
  st.moving = parse_range(*it, "moving", here);
  st.cleaning = parse_range(*it, "cleaning", here);
  return st;
}

void check_probability(double p, const std::string& path) {
  if (!(p >= 0.0 && p <= 1.0)) field_error(path, "probability outside [0, 1]");
}

Duration draw(const MinuteRange& r, Rng& rng) {
  return r.lo + static_cast<Duration>(rng.below(static_cast<std::uint64_t>(r.hi - r.lo + 1)));
}

int jittered(int base, double jitter, Rng& rng) {
  const double factor = rng.uniform(1.0 - jitter, 1.0 + jitter);
  return std::max(1, static_cast<int>(std::lround(base * factor)));
}

std::string numbered(const std::string& prefix, int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d", i);
  return prefix + "-" + buf;
}

std::vector<std::string> ids_of_kind(const Instance& inst, ResourceKind kind) {
  std::vector<std::string> out;
  for (const Resource& r : inst.resources) {
    if (r.kind == kind) out.push_back(r.id);
  }
  return out;
}

TaskSpec make_task(const StageSpec& st, Rng& rng, std::vector<std::string> rooms) {
  TaskSpec t;
  t.duration = std::max<Duration>(1, draw(st.duration, rng));
  t.moving = draw(st.moving, rng);
  t.cleaning = draw(st.cleaning, rng);
  t.rooms = std::move(rooms);
  return t;
}

}  // namespace

GeneratorConfig load_generator_config(std::string_view document) {
  const json doc = parse_document(document, "generator config");
  if (!doc.is_object()) throw ParseError("generator config must be a JSON object");
  GeneratorConfig cfg;
  const std::string root = "$";
  cfg.seed = static_cast<std::uint64_t>(int_or(doc, "seed", static_cast<std::int64_t>(cfg.seed), root));
  cfg.surgeries = static_cast<int>(int_or(doc, "surgeries", cfg.surgeries, root));
  cfg.horizon_days = static_cast<int>(int_or(doc, "horizon_days", cfg.horizon_days, root));
  cfg.surgeon_presence = double_or(doc, "surgeon_presence", cfg.surgeon_presence, root);
  cfg.saturday_or = double_or(doc, "saturday_or", cfg.saturday_or, root);
  cfg.jitter = double_or(doc, "jitter", cfg.jitter, root);
  cfg.blocking_limit = int_or(doc, "blocking_limit", cfg.blocking_limit, root);
  check_probability(cfg.surgeon_presence, "$.surgeon_presence");
  check_probability(cfg.saturday_or, "$.saturday_or");
  check_probability(cfg.jitter, "$.jitter");
  if (auto it = doc.find("rooms"); it != doc.end()) {
    const std::string path = "$.rooms";
    if (!it->is_object()) field_error(path, "expected object");
    cfg.beds = static_cast<int>(int_or(*it, "beds", cfg.beds, path));
    cfg.operating_rooms = static_cast<int>(int_or(*it, "operating_rooms", cfg.operating_rooms, path));
    cfg.recovery_rooms = static_cast<int>(int_or(*it, "recovery_rooms", cfg.recovery_rooms, path));
    cfg.surgeons = static_cast<int>(int_or(*it, "surgeons", cfg.surgeons, path));
  }
  if (auto it = doc.find("equipment"); it != doc.end()) {
    if (!it->is_array()) field_error("$.equipment", "expected array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = "$.equipment[" + std::to_string(i) + "]";
      const json& e = (*it)[i];
      cfg.equipment.push_back({as_string(require(e, "type", path), path + ".type"),
                               static_cast<int>(int_or(e, "units", 1, path))});
    }
  }
  const json& catalog = array_field(doc, "catalog", root);
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const std::string path = "$.catalog[" + std::to_string(i) + "]";
    const json& c = catalog[i];
    if (!c.is_object()) field_error(path, "expected object");
    SurgeryType type;
    type.name = as_string(require(c, "name", path), path + ".name");
    type.weight = double_or(c, "weight", 1.0, path);
    type.pre_op = parse_stage(c, "pre_op", path);
    type.operation = parse_stage(c, "operation", path);
    type.recovery_probability = double_or(c, "recovery_probability", 0.0, path);
    check_probability(type.recovery_probability, path + ".recovery_probability");
    type.recovery = parse_stage(c, "recovery", path);
    type.post_op = parse_stage(c, "post_op", path);
    if (auto e = c.find("equipment"); e != c.end()) {
      if (!e->is_array()) field_error(path + ".equipment", "expected array");
      for (std::size_t j = 0; j < e->size(); ++j) {
        const std::string epath = path + ".equipment[" + std::to_string(j) + "]";
        EquipmentNeed need{as_string(require((*e)[j], "type", epath), epath + ".type"),
                           double_or((*e)[j], "probability", 1.0, epath)};
        check_probability(need.probability, epath + ".probability");
        type.equipment.push_back(std::move(need));
      }
    }
    cfg.catalog.push_back(std::move(type));
  }
  return cfg;
}

GeneratorConfig default_generator_config() {
  GeneratorConfig cfg;
  cfg.equipment = {{"c-arm", 2}, {"perfusion", 1}};
  SurgeryType general{"general", 3.0,
                      {{30, 90}, {5, 15}, {0, 0}},
                      {{45, 150}, {5, 15}, {15, 30}},
                      0.5,
                      {{30, 120}, {5, 10}, {10, 20}},
                      {{240, 960}, {0, 0}, {15, 30}},
                      {}};
  SurgeryType orthopaedic{"orthopaedic", 2.0,
                          {{30, 90}, {5, 15}, {0, 0}},
                          {{90, 240}, {5, 15}, {20, 40}},
                          0.6,
                          {{60, 180}, {5, 10}, {10, 20}},
                          {{480, 1440}, {0, 0}, {15, 30}},
                          {{"c-arm", 0.6}}};
  SurgeryType cardiac{"cardiac", 1.0,
                      {{60, 120}, {5, 15}, {0, 0}},
                      {{180, 300}, {10, 20}, {30, 45}},
                      1.0,
                      {{240, 600}, {5, 10}, {15, 30}},
                      {{720, 1440}, {0, 0}, {15, 30}},
                      {{"perfusion", 1.0}}};
  cfg.catalog = {general, orthopaedic, cardiac};
  return cfg;
}

Surgery generate_surgery(const GeneratorConfig& cfg, const Instance& inst, Rng& rng, std::string id) {
  if (cfg.catalog.empty()) throw GeneratorError("surgery catalog is empty");
  double total_weight = 0.0;
  for (const SurgeryType& t : cfg.catalog) total_weight += std::max(0.0, t.weight);
  if (!(total_weight > 0.0)) throw GeneratorError("surgery catalog weights sum to zero");
  double pick = rng.uniform01() * total_weight;
  const SurgeryType* type = &cfg.catalog.back();
  for (const SurgeryType& t : cfg.catalog) {
    pick -= std::max(0.0, t.weight);
    if (pick < 0.0) {
      type = &t;
      break;
    }
  }

  const auto beds = ids_of_kind(inst, ResourceKind::bed);
  const auto ors = ids_of_kind(inst, ResourceKind::operating_room);
  const auto recovery = ids_of_kind(inst, ResourceKind::recovery_room);
  const auto people = ids_of_kind(inst, ResourceKind::person);
  if (beds.empty() || ors.empty()) throw GeneratorError("instance needs beds and operating rooms");

  Surgery s;
  s.id = std::move(id);
  s.tasks.push_back(make_task(type->pre_op, rng, beds));

  TaskSpec op = make_task(type->operation, rng, ors);
  // The OR is cleaned at least as long as the patient is moved out.
  op.cleaning = std::max(op.cleaning, op.moving);
  if (!people.empty()) op.people.push_back(people[rng.index(people.size())]);
  for (const EquipmentNeed& need : type->equipment) {
    const bool owned = std::any_of(inst.resources.begin(), inst.resources.end(), [&](const Resource& r) {
      return r.kind == ResourceKind::equipment && r.equipment_type == need.type;
    });
    if (owned && rng.bernoulli(need.probability)) op.equipment_types.push_back(need.type);
  }
  s.tasks.push_back(std::move(op));

  if (!recovery.empty() && rng.bernoulli(type->recovery_probability)) {
    s.tasks.push_back(make_task(type->recovery, rng, recovery));
  }
  TaskSpec post = make_task(type->post_op, rng, beds);
  post.moving = 0;  // the chain ends in the bed
  s.tasks.push_back(std::move(post));
  return s;
}

Instance generate_instance(const GeneratorConfig& cfg) {
  if (cfg.catalog.empty()) throw GeneratorError("surgery catalog is empty");
  if (cfg.surgeries < 0 || cfg.horizon_days < 1) throw GeneratorError("surgery count and horizon must be positive");
  Rng rng(cfg.seed);
  Instance inst;
  inst.name = "generated-" + std::to_string(cfg.seed);
  inst.seed = cfg.seed;
  inst.horizon = static_cast<Duration>(cfg.horizon_days) * kMinutesPerDay;
  inst.blocking_limit = cfg.blocking_limit;

  const int beds = jittered(cfg.beds, cfg.jitter, rng);
  const int ors = jittered(cfg.operating_rooms, cfg.jitter, rng);
  const int recovery = cfg.recovery_rooms > 0 ? jittered(cfg.recovery_rooms, cfg.jitter, rng) : 0;
  const int surgeons = cfg.surgeons > 0 ? jittered(cfg.surgeons, cfg.jitter, rng) : 0;

  for (int i = 1; i <= beds; ++i) inst.resources.push_back({numbered("bed", i), ResourceKind::bed, std::nullopt});
  for (int i = 1; i <= ors; ++i) {
    std::vector<Interval> open;
    for (int d = 0; d < cfg.horizon_days; ++d) {
      const Instant base = static_cast<Instant>(d) * kMinutesPerDay;
      const int wd = weekday(d);
      if (wd < 5) {
        open.push_back({base + kDayOpen, base + kDayClose});
      } else if (wd == 5 && rng.bernoulli(cfg.saturday_or)) {
        open.push_back({base + kDayOpen, base + kSaturdayClose});
      }
    }
    inst.resources.push_back({numbered("or", i), ResourceKind::operating_room, std::nullopt,
                              AvailabilitySlots::from_intervals(open)});
  }
  for (int i = 1; i <= recovery; ++i) {
    inst.resources.push_back({numbered("recovery", i), ResourceKind::recovery_room, std::nullopt});
  }
  for (const EquipmentPool& pool : cfg.equipment) {
    const int units = jittered(pool.units, cfg.jitter, rng);
    for (int i = 1; i <= units; ++i) {
      inst.resources.push_back({numbered(pool.type, i), ResourceKind::equipment, pool.type});
    }
  }
  for (int i = 1; i <= surgeons; ++i) {
    std::vector<Interval> present;
    for (int d = 0; d < cfg.horizon_days; ++d) {
      const Instant base = static_cast<Instant>(d) * kMinutesPerDay;
      if (rng.bernoulli(cfg.surgeon_presence)) present.push_back({base + kDayOpen, base + kDayClose});
    }
    inst.resources.push_back({numbered("surgeon", i), ResourceKind::person, std::nullopt,
                              AvailabilitySlots::from_intervals(present)});
  }

  for (int k = 1; k <= cfg.surgeries; ++k) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "s%03d", k);
    inst.surgeries.push_back(generate_surgery(cfg, inst, rng, buf));
  }
  return inst;
}

}  // namespace iorsp
