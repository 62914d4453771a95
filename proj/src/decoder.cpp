#include "iorsp/decoder.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace iorsp {

namespace {

// Copy-on-write view over the schedule calendars for one insertion attempt.
class Overlay {
 public:
  explicit Overlay(const std::vector<AvailabilitySlots>& base) : base_(base) {}

  const AvailabilitySlots& at(ResourceIndex r) const {
    for (const auto& [idx, cal] : edits_) {
      if (idx == r) return cal;
    }
    return base_[r];
  }

  void reserve(ResourceIndex r, Instant start, Duration dur) {
    if (dur <= 0) return;
    for (auto& [idx, cal] : edits_) {
      if (idx == r) {
        cal = cal.reserve(start, dur);
        return;
      }
    }
    edits_.emplace_back(r, base_[r].reserve(start, dur));
  }

  void clear() { edits_.clear(); }

 private:
  const std::vector<AvailabilitySlots>& base_;
  std::vector<std::pair<ResourceIndex, AvailabilitySlots>> edits_;
};

struct Placement {
  ResourceIndex room = 0;
  std::vector<ResourceIndex> equipment;
  Instant start = 0;
};

// Earliest instant >= t_min at which one room (or the fixed room), one unit
// of every required equipment type and every required person are free
// together. Iterates the room/equipment/people searches to a fixpoint.
std::optional<Placement> place_task(const ResolvedTask& task, std::span<const ResourceIndex> rooms,
                                    Duration room_occupancy, bool fixed_room, Instant t_min,
                                    const Overlay& cal) {
  Placement p;
  Instant sigma = t_min;
  for (;;) {
    const Instant pass_start = sigma;
    if (fixed_room) {
      p.room = rooms.front();
    } else {
      std::optional<Instant> best;
      for (ResourceIndex r : rooms) {
        auto s = cal.at(r).earliest_fit(sigma, room_occupancy);
        if (s && (!best || *s < *best)) {
          best = s;
          p.room = r;
        }
      }
      if (!best) return std::nullopt;
      sigma = *best;
    }

    p.equipment.clear();
    for (const auto& units : task.equipment_units) {
      std::optional<Instant> best;
      ResourceIndex chosen = 0;
      for (ResourceIndex e : units) {
        if (std::find(p.equipment.begin(), p.equipment.end(), e) != p.equipment.end()) continue;
        auto s = cal.at(e).earliest_fit(sigma, task.duration);
        if (s && (!best || *s < *best)) {
          best = s;
          chosen = e;
        }
      }
      if (!best) return std::nullopt;
      p.equipment.push_back(chosen);
      sigma = *best;
    }

    for (ResourceIndex person : task.people) {
      auto s = cal.at(person).earliest_fit(sigma, task.duration + task.moving);
      if (!s) return std::nullopt;
      sigma = *s;
    }

    if (sigma == pass_start) break;
  }
  p.start = sigma;
  return p;
}

void reserve_people(Overlay& cal, const ResolvedTask& task, Instant start) {
  for (std::size_t i = 0; i < task.people.size(); ++i) {
    const ResourceIndex person = task.people[i];
    if (std::find(task.people.begin(), task.people.begin() + static_cast<std::ptrdiff_t>(i), person) !=
        task.people.begin() + static_cast<std::ptrdiff_t>(i)) {
      continue;
    }
    cal.reserve(person, start, task.duration + task.moving);
  }
}

}  // namespace

std::vector<Reservation> reservations_of(const ResolvedSurgery& surgery,
                                         const SurgeryAllocation& alloc) {
  std::vector<Reservation> out;
  if (!alloc.scheduled()) return out;
  const std::size_t n = surgery.tasks.size();
  const bool bed_stay = n >= 2;
  for (std::size_t t = 0; t < n; ++t) {
    const ResolvedTask& task = surgery.tasks[t];
    const TaskAllocation& a = alloc.tasks[t];
    if (bed_stay && t == 0) {
      const ResolvedTask& last = surgery.tasks.back();
      const TaskAllocation& la = alloc.tasks.back();
      const Instant end = std::max(la.start + last.duration + last.cleaning,
                                   a.start + task.duration + task.cleaning);
      out.push_back({a.room, {a.start, end}, Reservation::Role::bed_stay, t});
    } else if (!(bed_stay && t + 1 == n)) {
      out.push_back({a.room, {a.start, a.start + task.duration + task.cleaning},
                     Reservation::Role::room, t});
    }
    for (ResourceIndex e : a.equipment) {
      out.push_back({e, {a.start, a.start + task.duration}, Reservation::Role::equipment, t});
    }
    for (std::size_t i = 0; i < task.people.size(); ++i) {
      const ResourceIndex person = task.people[i];
      if (std::find(task.people.begin(), task.people.begin() + static_cast<std::ptrdiff_t>(i), person) !=
          task.people.begin() + static_cast<std::ptrdiff_t>(i)) {
        continue;
      }
      out.push_back({person, {a.start, a.start + task.duration + task.moving},
                     Reservation::Role::person, t});
    }
  }
  return out;
}

SurgeryOrder order_surgeries(std::span<const double> keys, std::span<const int> priorities) {
  if (keys.size() != priorities.size()) {
    throw std::invalid_argument("random-key vector length differs from surgery count");
  }
  SurgeryOrder order(keys.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return priorities[a] < priorities[b]; });
  return order;
}

SurgeryOrder order_surgeries(std::span<const double> keys, const Instance& inst) {
  std::vector<int> priorities;
  priorities.reserve(inst.surgeries.size());
  for (const Surgery& s : inst.surgeries) priorities.push_back(s.priority);
  return order_surgeries(keys, priorities);
}

Decoder::Decoder(const Instance& inst) : resolved_(inst) {
  for (const Surgery& s : inst.surgeries) {
    surgery_ids_.push_back(s.id);
    priorities_.push_back(s.priority);
  }
  const Duration step = std::max<Duration>(inst.blocking_limit, 1);
  max_restarts_ = std::max<std::int64_t>(1000, inst.horizon / step);
}

SurgeryOrder Decoder::order(std::span<const double> keys) const {
  return order_surgeries(keys, priorities_);
}

Schedule Decoder::empty_schedule() const {
  Schedule s;
  s.surgeries.resize(resolved_.surgery_count());
  s.calendars = resolved_.initial_slots();
  return s;
}

void Decoder::greedy_insert(Schedule& s, std::size_t k) const {
  const ResolvedSurgery& surgery = resolved_.surgery(k);
  if (s.surgeries[k].scheduled()) {
    throw std::logic_error("surgery " + surgery_ids_[k] + " is already scheduled");
  }
  const std::size_t n = surgery.tasks.size();
  const bool bed_stay = n >= 2;
  const Duration limit = resolved_.blocking_limit();

  Duration stay_hint = 0;
  if (bed_stay) {
    for (std::size_t t = 0; t + 1 < n; ++t) stay_hint += surgery.tasks[t].duration + surgery.tasks[t].moving;
    stay_hint += surgery.tasks.back().duration + surgery.tasks.back().cleaning;
    stay_hint = std::max(stay_hint, surgery.tasks[0].duration + surgery.tasks[0].cleaning);
  }

  Overlay cal(s.calendars);
  SurgeryAllocation alloc;
  Instant attempt_min = 0;
  std::int64_t restarts = 0;

  auto fail = [&](const char* why) { throw UnschedulableSurgery(surgery_ids_[k], why); };

  for (bool success = false; !success;) {
    if (restarts++ > max_restarts_) fail("restart limit reached");
    success = true;
    cal.clear();
    alloc.tasks.assign(n, TaskAllocation{});
    Instant sigma_min = attempt_min;
    Instant first_start = 0;
    ResourceIndex bed = 0;

    for (std::size_t t = 0; t < n; ++t) {
      const ResolvedTask& task = surgery.tasks[t];
      const bool is_first = t == 0;
      const bool is_last_of_stay = bed_stay && t + 1 == n;

      std::optional<Placement> p;
      if (is_last_of_stay) {
        const ResourceIndex held[] = {bed};
        p = place_task(task, held, 0, true, sigma_min, cal);
      } else {
        const Duration occupancy = (bed_stay && is_first) ? stay_hint : task.duration + task.cleaning;
        p = place_task(task, task.rooms, occupancy, false, sigma_min, cal);
      }
      if (!p) fail("no calendar window can host a task");

      const Duration blocking = is_first ? 0 : p->start - sigma_min;
      if (blocking > limit) {
        attempt_min = first_start + blocking;
        success = false;
        break;
      }

      if (is_first) {
        first_start = p->start;
        bed = p->room;
        cal.reserve(p->room, p->start, bed_stay ? stay_hint : task.duration + task.cleaning);
      } else if (is_last_of_stay) {
        const Instant needed_end = std::max(p->start + task.duration + task.cleaning,
                                            first_start + surgery.tasks[0].duration +
                                                surgery.tasks[0].cleaning);
        const Instant hold_end = first_start + stay_hint;
        if (needed_end > hold_end) {
          if (!cal.at(bed).fits(hold_end, needed_end - hold_end)) {
            // The stay outgrew the bed's free window: retry asking for the longer stay.
            stay_hint = needed_end - first_start;
            success = false;
            break;
          }
          cal.reserve(bed, hold_end, needed_end - hold_end);
        }
      } else {
        cal.reserve(p->room, p->start, task.duration + task.cleaning);
      }
      for (ResourceIndex e : p->equipment) cal.reserve(e, p->start, task.duration);
      reserve_people(cal, task, p->start);

      alloc.tasks[t] = TaskAllocation{p->room, std::move(p->equipment), p->start, blocking};
      sigma_min = p->start + task.duration + task.moving;
    }
  }

  for (const Reservation& r : reservations_of(surgery, alloc)) {
    s.calendars[r.resource] = s.calendars[r.resource].reserve(r.span.begin, r.span.end - r.span.begin);
  }
  const TaskAllocation& last = alloc.tasks.back();
  s.makespan = std::max(s.makespan, last.start + surgery.tasks.back().duration);
  s.surgeries[k] = std::move(alloc);
}

Schedule Decoder::decode_order(std::span<const std::size_t> order) const {
  Schedule s = empty_schedule();
  for (std::size_t k : order) greedy_insert(s, k);
  return s;
}

Schedule Decoder::decode(std::span<const double> keys) const {
  const SurgeryOrder ord = order(keys);
  return decode_order(ord);
}

Schedule decode(std::span<const double> keys, const Instance& inst) {
  return Decoder(inst).decode(keys);
}

Schedule greedy_insert(Schedule s, std::size_t k, const Instance& inst) {
  Decoder(inst).greedy_insert(s, k);
  return s;
}

}  // namespace iorsp
