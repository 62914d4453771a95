#include "iorsp/toolkit/reschedule.hpp"

#include <algorithm>

#include "detail/json_fields.hpp"

namespace iorsp {

using namespace detail;

RescheduleDelta load_delta(std::string_view document) {
  const json doc = parse_document(document, "reschedule delta");
  if (!doc.is_object()) throw ParseError("reschedule delta must be a JSON object");
  RescheduleDelta d;
  d.cancelled = string_list(doc, "cancelled", "$");
  if (auto it = doc.find("fixed"); it != doc.end()) {
    if (!it->is_array()) field_error("$.fixed", "expected array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      d.fixed.push_back(parse_schedule_entry((*it)[i], "$.fixed[" + std::to_string(i) + "]"));
    }
  }
  if (auto it = doc.find("new_surgeries"); it != doc.end()) {
    if (!it->is_array()) field_error("$.new_surgeries", "expected array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      d.new_surgeries.push_back(parse_surgery((*it)[i], "$.new_surgeries[" + std::to_string(i) + "]"));
    }
  }
  return d;
}

std::string save_delta(const RescheduleDelta& delta) {
  ordered_json doc;
  doc["cancelled"] = delta.cancelled;
  ordered_json fixed = ordered_json::array();
  for (const auto& e : delta.fixed) fixed.push_back(schedule_entry_json(e));
  doc["fixed"] = std::move(fixed);
  ordered_json added = ordered_json::array();
  for (const Surgery& s : delta.new_surgeries) added.push_back(surgery_json(s));
  doc["new_surgeries"] = std::move(added);
  return doc.dump(1) + "\n";
}

namespace {

void check_ids(const Instance& base, const RescheduleDelta& delta) {
  std::vector<std::string> touched;
  auto touch = [&](const std::string& id, const char* what) {
    if (!base.find_surgery(id)) throw RescheduleError(std::string(what) + " surgery '" + id + "' is not in the instance");
    if (std::find(touched.begin(), touched.end(), id) != touched.end()) {
      throw RescheduleError("surgery '" + id + "' appears more than once in the delta");
    }
    touched.push_back(id);
  };
  for (const std::string& id : delta.cancelled) touch(id, "cancelled");
  for (const auto& e : delta.fixed) touch(e.id, "fixed");
  for (const Surgery& s : delta.new_surgeries) {
    if (base.find_surgery(s.id)) throw RescheduleError("new surgery '" + s.id + "' reuses an existing id");
  }
}

}  // namespace

std::vector<FrozenInterval> frozen_intervals(const Instance& base, const RescheduleDelta& delta) {
  check_ids(base, delta);
  ScheduleDocument doc;
  doc.surgeries = delta.fixed;
  Schedule fixed;
  try {
    fixed = from_document(doc, base);
  } catch (const ModelError& e) {
    throw RescheduleError(std::string("fixed allocations are not feasible: ") + e.what());
  }
  const auto violations = verify_schedule(fixed, base, VerifyOptions{true, false});
  if (!violations.empty()) {
    const Violation& v = violations.front();
    throw RescheduleError("fixed allocation violates " + v.rule + " at " + v.entity +
                          (v.detail.empty() ? "" : " (" + v.detail + ")"));
  }

  const ResolvedInstance resolved(base);
  std::vector<FrozenInterval> out;
  for (const auto& e : delta.fixed) {
    const std::size_t k = *base.find_surgery(e.id);
    for (const Reservation& r : reservations_of(resolved.surgery(k), fixed.surgeries[k])) {
      if (r.span.end > r.span.begin) out.push_back({base.resources[r.resource].id, r.span, e.id});
    }
  }
  return out;
}

Instance reschedule_prepare(const Instance& base, const RescheduleDelta& delta) {
  const auto frozen = frozen_intervals(base, delta);
  Instance out = base;
  if (!delta.cancelled.empty() || !delta.fixed.empty() || !delta.new_surgeries.empty()) {
    out.name = base.name + "-rescheduled";
  }
  std::vector<std::string> removed = delta.cancelled;
  for (const auto& e : delta.fixed) removed.push_back(e.id);
  std::erase_if(out.surgeries, [&](const Surgery& s) {
    return std::find(removed.begin(), removed.end(), s.id) != removed.end();
  });
  for (const FrozenInterval& f : frozen) {
    Resource& r = out.resources[*out.find_resource(f.resource)];
    r.slots = r.slots.reserve(f.span.begin, f.span.end - f.span.begin);
  }
  for (const Surgery& s : delta.new_surgeries) out.surgeries.push_back(s);
  return out;
}

}  // namespace iorsp
