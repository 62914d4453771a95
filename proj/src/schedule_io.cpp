#include "iorsp/schedule_io.hpp"

#include <cmath>

#include "detail/json_fields.hpp"

namespace iorsp {

using namespace detail;

ordered_json detail::schedule_entry_json(const ScheduleDocument::Entry& entry) {
  ordered_json js;
  js["id"] = entry.id;
  ordered_json tasks = ordered_json::array();
  for (const auto& t : entry.tasks) {
    ordered_json jt;
    jt["room"] = t.room;
    jt["equipment"] = t.equipment;
    jt["start"] = t.start;
    jt["end"] = t.end;
    jt["blocking"] = t.blocking;
    jt["clean_end"] = t.clean_end;
    tasks.push_back(std::move(jt));
  }
  js["tasks"] = std::move(tasks);
  return js;
}

ScheduleDocument to_document(const Schedule& s, const Instance& inst) {
  ScheduleDocument doc;
  doc.makespan = s.makespan;
  for (std::size_t k = 0; k < inst.surgeries.size(); ++k) {
    const Surgery& surgery = inst.surgeries[k];
    ScheduleDocument::Entry entry{surgery.id, {}};
    if (k < s.surgeries.size()) {
      const auto& tasks = s.surgeries[k].tasks;
      for (std::size_t t = 0; t < tasks.size() && t < surgery.tasks.size(); ++t) {
        const TaskAllocation& a = tasks[t];
        const TaskSpec& spec = surgery.tasks[t];
        ScheduleDocument::Task task;
        task.room = inst.resources.at(a.room).id;
        for (ResourceIndex e : a.equipment) task.equipment.push_back(inst.resources.at(e).id);
        task.start = a.start;
        task.end = a.start + spec.duration;
        task.blocking = a.blocking;
        task.clean_end = task.end + spec.cleaning;
        entry.tasks.push_back(std::move(task));
      }
    }
    doc.surgeries.push_back(std::move(entry));
  }
  return doc;
}

Schedule from_document(const ScheduleDocument& doc, const Instance& inst) {
  const ResolvedInstance resolved(inst);
  Schedule s;
  s.surgeries.resize(inst.surgeries.size());
  s.calendars = resolved.initial_slots();
  for (const ScheduleDocument::Entry& entry : doc.surgeries) {
    auto k = inst.find_surgery(entry.id);
    if (!k) throw ModelError("schedule names unknown surgery '" + entry.id + "'");
    if (entry.tasks.empty()) continue;
    const Surgery& surgery = inst.surgeries[*k];
    if (entry.tasks.size() != surgery.tasks.size()) {
      throw ModelError("schedule for surgery '" + entry.id + "' has the wrong number of tasks");
    }
    SurgeryAllocation alloc;
    for (const ScheduleDocument::Task& t : entry.tasks) {
      TaskAllocation a;
      auto room = inst.find_resource(t.room);
      if (!room) throw ModelError("schedule names unknown room '" + t.room + "'");
      a.room = *room;
      for (const std::string& e : t.equipment) {
        auto unit = inst.find_resource(e);
        if (!unit) throw ModelError("schedule names unknown equipment '" + e + "'");
        a.equipment.push_back(*unit);
      }
      a.start = t.start;
      a.blocking = t.blocking;
      alloc.tasks.push_back(std::move(a));
    }
    for (const Reservation& r : reservations_of(resolved.surgery(*k), alloc)) {
      const Duration len = r.span.end - r.span.begin;
      if (!s.calendars[r.resource].fits(r.span.begin, len)) {
        throw ModelError("schedule for surgery '" + entry.id + "' conflicts on resource '" +
                         inst.resources[r.resource].id + "'");
      }
      s.calendars[r.resource] = s.calendars[r.resource].reserve(r.span.begin, len);
    }
    s.makespan = std::max(s.makespan, alloc.tasks.back().start + surgery.tasks.back().duration);
    s.surgeries[*k] = std::move(alloc);
  }
  return s;
}

std::string save_schedule(const ScheduleDocument& doc) {
  ordered_json out;
  out["makespan_minutes"] = doc.makespan;
  out["makespan_days"] = std::round(to_days(doc.makespan) * 1e4) / 1e4;
  ordered_json surgeries = ordered_json::array();
  for (const auto& entry : doc.surgeries) surgeries.push_back(detail::schedule_entry_json(entry));
  out["surgeries"] = std::move(surgeries);
  return out.dump(1) + "\n";
}

std::string save_schedule(const Schedule& s, const Instance& inst) {
  return save_schedule(to_document(s, inst));
}

ScheduleDocument load_schedule(std::string_view document) {
  const json doc = parse_document(document, "schedule document");
  if (!doc.is_object()) throw ParseError("schedule document must be a JSON object");
  ScheduleDocument out;
  out.makespan = int_or(doc, "makespan_minutes", 0, "$");
  const json& surgeries = array_field(doc, "surgeries", "$");
  for (std::size_t i = 0; i < surgeries.size(); ++i) {
    out.surgeries.push_back(parse_schedule_entry(surgeries[i], "$.surgeries[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace iorsp
