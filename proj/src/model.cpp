#include "iorsp/model.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace iorsp {

std::string_view to_string(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::bed: return "bed";
    case ResourceKind::operating_room: return "or";
    case ResourceKind::recovery_room: return "recovery";
    case ResourceKind::equipment: return "equipment";
    case ResourceKind::person: return "person";
  }
  return "unknown";
}

std::optional<ResourceKind> parse_resource_kind(std::string_view text) {
  if (text == "bed") return ResourceKind::bed;
  if (text == "or" || text == "operating-room" || text == "operating_room") {
    return ResourceKind::operating_room;
  }
  if (text == "recovery" || text == "recovery-room" || text == "pscu" || text == "psru" ||
      text == "icu" || text == "ward") {
    return ResourceKind::recovery_room;
  }
  if (text == "equipment") return ResourceKind::equipment;
  if (text == "person") return ResourceKind::person;
  return std::nullopt;
}

std::optional<ResourceIndex> Instance::find_resource(std::string_view id) const {
  for (ResourceIndex r = 0; r < resources.size(); ++r) {
    if (resources[r].id == id) return r;
  }
  return std::nullopt;
}

std::optional<std::size_t> Instance::find_surgery(std::string_view id) const {
  for (std::size_t k = 0; k < surgeries.size(); ++k) {
    if (surgeries[k].id == id) return k;
  }
  return std::nullopt;
}

std::vector<Violation> validate_instance(const Instance& inst) {
  std::vector<Violation> out;
  auto report = [&out](std::string entity, std::string rule, std::string detail = {}) {
    out.push_back({std::move(entity), std::move(rule), std::move(detail)});
  };

  if (inst.blocking_limit < 0) report("instance " + inst.name, "negative blocking limit");
  if (inst.horizon < 0) report("instance " + inst.name, "negative horizon");

  std::map<std::string, ResourceIndex, std::less<>> by_id;
  std::map<std::string, int, std::less<>> units_per_type;
  for (ResourceIndex r = 0; r < inst.resources.size(); ++r) {
    const Resource& res = inst.resources[r];
    const std::string entity = "resource " + res.id;
    if (res.id.empty()) report(entity, "empty id");
    if (!by_id.emplace(res.id, r).second) report(entity, "duplicate id");
    const bool is_equipment = res.kind == ResourceKind::equipment;
    if (is_equipment != res.equipment_type.has_value()) {
      report(entity, "equipment type present iff kind is equipment");
    }
    if (is_equipment && res.equipment_type) ++units_per_type[*res.equipment_type];
    if (!res.slots.well_formed()) report(entity, "availability slots not strictly increasing");
  }

  std::set<std::string, std::less<>> surgery_ids;
  for (const Surgery& s : inst.surgeries) {
    const std::string entity = "surgery " + s.id;
    if (!surgery_ids.insert(s.id).second) report(entity, "duplicate id");
    if (s.tasks.empty()) {
      report(entity, "empty task chain");
      continue;
    }
    for (std::size_t t = 0; t < s.tasks.size(); ++t) {
      const TaskSpec& task = s.tasks[t];
      const std::string tentity = entity + " task " + std::to_string(t);
      if (task.duration <= 0) report(tentity, "non-positive duration");
      if (task.moving < 0) report(tentity, "negative moving time");
      if (task.cleaning < 0) report(tentity, "negative cleaning time");
      if (task.rooms.empty()) report(tentity, "no compatible rooms");
      for (const std::string& room : task.rooms) {
        auto it = by_id.find(room);
        if (it == by_id.end()) {
          report(tentity, "unknown room id", room);
        } else if (!is_room(inst.resources[it->second].kind)) {
          report(tentity, "compatible resource is not a room", room);
        }
      }
      std::map<std::string, int, std::less<>> needed;
      for (const std::string& type : task.equipment_types) ++needed[type];
      for (const auto& [type, count] : needed) {
        auto it = units_per_type.find(type);
        const int owned = it == units_per_type.end() ? 0 : it->second;
        if (owned < count) report(tentity, "missing equipment units of type", type);
      }
      for (const std::string& person : task.people) {
        auto it = by_id.find(person);
        if (it == by_id.end()) {
          report(tentity, "unknown person id", person);
        } else if (inst.resources[it->second].kind != ResourceKind::person) {
          report(tentity, "required person is not a person resource", person);
        }
      }
    }
    if (s.tasks.size() >= 2) {
      const TaskSpec& first = s.tasks.front();
      const TaskSpec& last = s.tasks.back();
      auto all_beds = [&](const TaskSpec& task) {
        return std::all_of(task.rooms.begin(), task.rooms.end(), [&](const std::string& id) {
          auto it = by_id.find(id);
          return it != by_id.end() && inst.resources[it->second].kind == ResourceKind::bed;
        });
      };
      if (!all_beds(first) || !all_beds(last)) {
        report(entity, "first and last tasks must be bed tasks");
      }
      const bool shared = std::any_of(first.rooms.begin(), first.rooms.end(), [&](const std::string& id) {
        return std::find(last.rooms.begin(), last.rooms.end(), id) != last.rooms.end();
      });
      if (!shared) report(entity, "first and last tasks share no bed");
    }
  }
  return out;
}

ResolvedInstance::ResolvedInstance(const Instance& inst)
    : blocking_limit_(inst.blocking_limit), horizon_(inst.horizon) {
  for (const Resource& res : inst.resources) {
    initial_.push_back(res.slots);
    kinds_.push_back(res.kind);
  }
  std::unordered_map<std::string, ResourceIndex> by_id;
  std::map<std::string, std::vector<ResourceIndex>, std::less<>> units;
  for (ResourceIndex r = 0; r < inst.resources.size(); ++r) {
    by_id.emplace(inst.resources[r].id, r);
    if (inst.resources[r].kind == ResourceKind::equipment && inst.resources[r].equipment_type) {
      units[*inst.resources[r].equipment_type].push_back(r);
    }
  }
  auto lookup = [&](const std::string& id, const Surgery& s) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw ModelError("surgery " + s.id + " references unknown resource " + id);
    }
    return it->second;
  };

  surgeries_.reserve(inst.surgeries.size());
  for (const Surgery& s : inst.surgeries) {
    if (s.tasks.empty()) throw ModelError("surgery " + s.id + " has no tasks");
    ResolvedSurgery rs;
    rs.priority = s.priority;
    for (const TaskSpec& task : s.tasks) {
      ResolvedTask rt;
      rt.duration = task.duration;
      rt.moving = task.moving;
      rt.cleaning = task.cleaning;
      for (const std::string& room : task.rooms) rt.rooms.push_back(lookup(room, s));
      if (rt.rooms.empty()) throw ModelError("surgery " + s.id + " has a task without rooms");
      // Ties between rooms go to the lowest index.
      std::sort(rt.rooms.begin(), rt.rooms.end());
      rt.rooms.erase(std::unique(rt.rooms.begin(), rt.rooms.end()), rt.rooms.end());
      for (const std::string& type : task.equipment_types) {
        auto it = units.find(type);
        if (it == units.end()) {
          throw ModelError("surgery " + s.id + " needs equipment type " + type + " with no units");
        }
        rt.equipment_units.push_back(it->second);
        rt.equipment_types.push_back(type);
      }
      for (const std::string& person : task.people) rt.people.push_back(lookup(person, s));
      rs.tasks.push_back(std::move(rt));
    }
    if (rs.tasks.size() >= 2) {
      // The patient returns to the first bed, so only beds the last task accepts qualify.
      const auto& back = rs.tasks.back().rooms;
      std::vector<ResourceIndex> shared;
      for (ResourceIndex r : rs.tasks.front().rooms) {
        if (std::binary_search(back.begin(), back.end(), r)) shared.push_back(r);
      }
      if (shared.empty()) throw ModelError("surgery " + s.id + " has no bed shared by its first and last tasks");
      rs.tasks.front().rooms = std::move(shared);
    }
    surgeries_.push_back(std::move(rs));
  }
}

}  // namespace iorsp
