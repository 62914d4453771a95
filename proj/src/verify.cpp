#include <algorithm>
#include <map>

#include "iorsp/decoder.hpp"

namespace iorsp {

namespace {

struct Use {
  Interval span;
  std::string owner;
};

std::string task_name(const Surgery& s, std::size_t t) {
  return "surgery " + s.id + " task " + std::to_string(t);
}

}  // namespace

std::vector<Violation> verify_schedule(const Schedule& s, const Instance& inst, VerifyOptions options) {
  std::vector<Violation> out;
  auto report = [&out](std::string entity, std::string rule, std::string detail = {}) {
    out.push_back({std::move(entity), std::move(rule), std::move(detail)});
  };

  if (s.surgeries.size() != inst.surgeries.size()) {
    report("schedule", "surgery count mismatch",
           std::to_string(s.surgeries.size()) + " vs " + std::to_string(inst.surgeries.size()));
    return out;
  }

  std::map<ResourceIndex, std::vector<Use>> uses;
  const std::size_t resource_count = inst.resources.size();
  Instant makespan = 0;

  for (std::size_t k = 0; k < inst.surgeries.size(); ++k) {
    const Surgery& surgery = inst.surgeries[k];
    const SurgeryAllocation& alloc = s.surgeries[k];
    if (!alloc.scheduled()) {
      if (!options.allow_unscheduled) report("surgery " + surgery.id, "unscheduled surgery");
      continue;
    }
    if (alloc.tasks.size() != surgery.tasks.size()) {
      report("surgery " + surgery.id, "task count mismatch");
      continue;
    }
    const std::size_t n = surgery.tasks.size();
    bool indices_ok = true;
    for (std::size_t t = 0; t < n; ++t) {
      const TaskSpec& spec = surgery.tasks[t];
      const TaskAllocation& a = alloc.tasks[t];
      const std::string name = task_name(surgery, t);

      if (a.room >= resource_count) {
        report(name, "unknown room index");
        indices_ok = false;
        continue;
      }
      const std::string& room_id = inst.resources[a.room].id;
      if (std::find(spec.rooms.begin(), spec.rooms.end(), room_id) == spec.rooms.end()) {
        report(name, "room not compatible", room_id);
      }

      if (a.equipment.size() != spec.equipment_types.size()) {
        report(name, "equipment type", "wrong number of equipment units");
      } else {
        for (std::size_t i = 0; i < a.equipment.size(); ++i) {
          const ResourceIndex e = a.equipment[i];
          if (e >= resource_count || inst.resources[e].kind != ResourceKind::equipment ||
              inst.resources[e].equipment_type != spec.equipment_types[i]) {
            report(name, "equipment type", "unit does not match type " + spec.equipment_types[i]);
            indices_ok = false;
          }
          for (std::size_t j = 0; j < i; ++j) {
            if (a.equipment[j] == e) report(name, "equipment type", "unit used twice");
          }
        }
      }

      if (a.start < 0) report(name, "negative start");
      if (a.blocking < 0) report(name, "negative blocking");
      if (a.blocking > inst.blocking_limit) {
        report(name, "blocking limit",
               std::to_string(a.blocking) + " > " + std::to_string(inst.blocking_limit));
      }
      if (t == 0) {
        if (a.blocking != 0) report(name, "blocking on first task");
      } else {
        const TaskSpec& prev = surgery.tasks[t - 1];
        const Instant ready = alloc.tasks[t - 1].start + prev.duration + prev.moving;
        if (a.start < ready) {
          report(name, "patient chain", "starts before the patient arrives");
        } else if (a.start - ready != a.blocking) {
          report(name, "patient chain", "recorded blocking differs from the wait");
        }
      }
    }
    if (!indices_ok) continue;

    // Occupied intervals, derived from the task specs.
    const bool stay = n >= 2;
    if (stay && alloc.tasks.front().room != alloc.tasks.back().room) {
      report("surgery " + surgery.id, "bed stay", "first and last tasks use different beds");
    }
    for (std::size_t t = 0; t < n; ++t) {
      const TaskSpec& spec = surgery.tasks[t];
      const TaskAllocation& a = alloc.tasks[t];
      const std::string owner = task_name(surgery, t);
      if (stay && t == 0) {
        const TaskSpec& last = surgery.tasks.back();
        const Instant end = std::max(alloc.tasks.back().start + last.duration + last.cleaning,
                                     a.start + spec.duration + spec.cleaning);
        uses[a.room].push_back({{a.start, end}, "surgery " + surgery.id + " bed stay"});
      } else if (!(stay && t + 1 == n)) {
        uses[a.room].push_back({{a.start, a.start + spec.duration + spec.cleaning}, owner});
      }
      for (ResourceIndex e : a.equipment) uses[e].push_back({{a.start, a.start + spec.duration}, owner});
      std::vector<std::string> seen;
      for (const std::string& person : spec.people) {
        if (std::find(seen.begin(), seen.end(), person) != seen.end()) continue;
        seen.push_back(person);
        auto r = inst.find_resource(person);
        if (!r) {
          report(owner, "unknown person", person);
          continue;
        }
        uses[*r].push_back({{a.start, a.start + spec.duration + spec.moving}, owner});
      }
    }
    makespan = std::max(makespan, alloc.tasks.back().start + surgery.tasks.back().duration);
  }

  for (auto& [r, list] : uses) {
    const Resource& res = inst.resources[r];
    std::sort(list.begin(), list.end(),
              [](const Use& a, const Use& b) { return a.span.begin < b.span.begin; });
    const auto available = res.slots.available_intervals();
    for (const Use& u : list) {
      if (u.span.end <= u.span.begin) continue;
      const bool inside = std::any_of(available.begin(), available.end(),
                                      [&](const Interval& iv) { return iv.contains(u.span); });
      if (!inside) {
        report("resource " + res.id, "availability",
               u.owner + " at [" + std::to_string(u.span.begin) + ", " + std::to_string(u.span.end) + ")");
      }
    }
    for (std::size_t i = 1; i < list.size(); ++i) {
      for (std::size_t j = i; j-- > 0;) {
        if (list[j].span.end <= list[i].span.begin) continue;
        if (list[j].span.overlaps(list[i].span)) {
          report("resource " + res.id, "resource overlap", list[j].owner + " and " + list[i].owner);
        }
      }
    }
  }

  if (s.makespan != makespan) {
    report("schedule", "makespan",
           "recorded " + std::to_string(s.makespan) + ", derived " + std::to_string(makespan));
  }

  if (options.check_calendars && !s.calendars.empty()) {
    if (s.calendars.size() != resource_count) {
      report("schedule", "calendar mismatch", "calendar count differs from resource count");
    } else if (out.empty()) {
      for (ResourceIndex r = 0; r < resource_count; ++r) {
        AvailabilitySlots expected = inst.resources[r].slots;
        if (auto it = uses.find(r); it != uses.end()) {
          for (const Use& u : it->second) expected = expected.reserve(u.span.begin, u.span.end - u.span.begin);
        }
        if (!(expected == s.calendars[r])) {
          report("resource " + inst.resources[r].id, "calendar mismatch");
        }
      }
    }
  }
  return out;
}

}  // namespace iorsp
