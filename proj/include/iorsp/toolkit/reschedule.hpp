#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iorsp/schedule_io.hpp"
#include "iorsp/toolkit/gantt.hpp"

namespace iorsp {

// Changes to an existing plan: surgeries to drop, surgeries whose current
// allocation is frozen, and surgeries to add.
struct RescheduleDelta {
  std::vector<std::string> cancelled;
  std::vector<ScheduleDocument::Entry> fixed;
  std::vector<Surgery> new_surgeries;

  bool operator==(const RescheduleDelta&) const = default;
};

class RescheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {cancelled:[id...], fixed:[{id, tasks:[{room, equipment, start, blocking}]}], new_surgeries:[...]}
RescheduleDelta load_delta(std::string_view document);
std::string save_delta(const RescheduleDelta& delta);

// Every resource interval the fixed allocations occupy. Throws
// RescheduleError if a fixed allocation is infeasible on the base instance.
std::vector<FrozenInterval> frozen_intervals(const Instance& base, const RescheduleDelta& delta);

// The instance left to solve: cancelled and fixed surgeries removed, fixed
// occupancy blocked out of the calendars, new surgeries appended.
Instance reschedule_prepare(const Instance& base, const RescheduleDelta& delta);

}  // namespace iorsp
