#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "iorsp/model.hpp"
#include "iorsp/schedule_io.hpp"

namespace iorsp {

// An interval taken by an allocation that must not move.
struct FrozenInterval {
  std::string resource;
  Interval span;
  std::string surgery;

  bool operator==(const FrozenInterval&) const = default;
};

inline constexpr std::string_view kUnavailableColor = "rgb(171,99,250)";
inline constexpr std::string_view kFrozenColor = "rgb(239,85,59)";

// Stable colour per patient, derived from a hash of the surgery id.
std::string patient_color(std::string_view surgery_id);

struct GanttOptions {
  const Instance* instance = nullptr;  // adds every room lane and its unavailable time
  std::vector<FrozenInterval> frozen;
  double width = 1200.0;
};

// One lane per room; task blocks (class "task"), cleaning tails (class
// "clean"), bed holds between the first and last task (class "hold"),
// unavailable time and frozen intervals.
std::string gantt_svg(const ScheduleDocument& doc, const GanttOptions& options = {});

}  // namespace iorsp
