#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "iorsp/decoder.hpp"

namespace iorsp {

// Id-based schedule record, the on-disk form of a Schedule. Used by the
// Gantt renderer and as the frozen-allocation format of reschedule deltas.
struct ScheduleDocument {
  struct Task {
    std::string room;
    std::vector<std::string> equipment;
    Instant start = 0;
    Instant end = 0;        // start + duration
    Duration blocking = 0;
    Instant clean_end = 0;  // end + cleaning; equals end when unknown

    bool operator==(const Task&) const = default;
  };
  struct Entry {
    std::string id;
    std::vector<Task> tasks;

    bool operator==(const Entry&) const = default;
  };

  Instant makespan = 0;
  std::vector<Entry> surgeries;

  bool operator==(const ScheduleDocument&) const = default;
};

ScheduleDocument to_document(const Schedule& s, const Instance& inst);

// Resolves ids against inst and rebuilds the working calendars. Durations
// come from the instance; end/clean_end in the document are ignored.
// Throws ModelError on unknown ids or mismatched chains.
Schedule from_document(const ScheduleDocument& doc, const Instance& inst);

std::string save_schedule(const ScheduleDocument& doc);
std::string save_schedule(const Schedule& s, const Instance& inst);
ScheduleDocument load_schedule(std::string_view document);

}  // namespace iorsp
