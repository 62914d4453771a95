#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "iorsp/model.hpp"

namespace iorsp {

using RandomKeys = std::vector<double>;

struct TaskAllocation {
  ResourceIndex room = 0;
  std::vector<ResourceIndex> equipment;  // one unit per required type, listed order
  Instant start = 0;
  Duration blocking = 0;

  bool operator==(const TaskAllocation&) const = default;
};

// Per-surgery allocation record; empty while the surgery is unscheduled.
struct SurgeryAllocation {
  std::vector<TaskAllocation> tasks;

  bool scheduled() const { return !tasks.empty(); }
  bool operator==(const SurgeryAllocation&) const = default;
};

struct Schedule {
  std::vector<SurgeryAllocation> surgeries;     // instance order
  Instant makespan = 0;
  std::vector<AvailabilitySlots> calendars;     // per-resource working calendars

  bool operator==(const Schedule&) const = default;
};

// One interval a scheduled surgery takes away from a resource.
struct Reservation {
  enum class Role { room, bed_stay, equipment, person };
  ResourceIndex resource = 0;
  Interval span;
  Role role = Role::room;
  std::size_t task = 0;
};

// Occupancy rules shared by insertion and rescheduling:
//  - a room is held for duration + cleaning;
//  - for chains of two or more tasks the first task's bed is held from the
//    first start until the last task's end plus its cleaning;
//  - equipment is held for the task duration;
//  - people are held for duration + moving.
std::vector<Reservation> reservations_of(const ResolvedSurgery& surgery,
                                         const SurgeryAllocation& alloc);

// Raised when no feasible placement exists for a surgery.
class UnschedulableSurgery : public std::runtime_error {
 public:
  UnschedulableSurgery(std::string surgery_id, const std::string& why)
      : std::runtime_error("surgery " + surgery_id + " cannot be scheduled: " + why),
        surgery_id_(std::move(surgery_id)) {}
  const std::string& surgery_id() const { return surgery_id_; }

 private:
  std::string surgery_id_;
};

using SurgeryOrder = std::vector<std::size_t>;

// Ascending keys, then a stable pass by priority tier.
SurgeryOrder order_surgeries(std::span<const double> keys, const Instance& inst);
SurgeryOrder order_surgeries(std::span<const double> keys, std::span<const int> priorities);

// Greedy-insertion decoder. Holds an id-resolved copy of the instance so a
// single object can decode many vectors; decode() is const and reentrant.
class Decoder {
 public:
  explicit Decoder(const Instance& inst);

  std::size_t size() const { return resolved_.surgery_count(); }
  const ResolvedInstance& resolved() const { return resolved_; }

  Schedule empty_schedule() const;

  // Inserts surgery k (instance index) into s at its earliest feasible
  // placement. Throws UnschedulableSurgery.
  void greedy_insert(Schedule& s, std::size_t k) const;

  Schedule decode(std::span<const double> keys) const;
  Schedule decode_order(std::span<const std::size_t> order) const;
  Instant makespan(std::span<const double> keys) const { return decode(keys).makespan; }

  SurgeryOrder order(std::span<const double> keys) const;

 private:
  std::vector<std::string> surgery_ids_;
  std::vector<int> priorities_;
  ResolvedInstance resolved_;
  std::int64_t max_restarts_;
};

// Convenience wrappers building a Decoder on the fly.
Schedule decode(std::span<const double> keys, const Instance& inst);
Schedule greedy_insert(Schedule s, std::size_t k, const Instance& inst);

struct VerifyOptions {
  bool allow_unscheduled = false;
  bool check_calendars = true;
};

// Empty iff the schedule satisfies every feasibility rule of the instance.
std::vector<Violation> verify_schedule(const Schedule& s, const Instance& inst,
                                       VerifyOptions options = {});

}  // namespace iorsp
