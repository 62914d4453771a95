#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "iorsp/slots.hpp"

namespace iorsp {

using ResourceIndex = std::size_t;

enum class ResourceKind { bed, operating_room, recovery_room, equipment, person };

std::string_view to_string(ResourceKind kind);
std::optional<ResourceKind> parse_resource_kind(std::string_view text);

inline bool is_room(ResourceKind kind) {
  return kind == ResourceKind::bed || kind == ResourceKind::operating_room ||
         kind == ResourceKind::recovery_room;
}

struct Resource {
  std::string id;
  ResourceKind kind = ResourceKind::bed;
  std::optional<std::string> equipment_type;  // present iff kind == equipment
  AvailabilitySlots slots = AvailabilitySlots::always();

  bool operator==(const Resource&) const = default;
};

struct TaskSpec {
  Duration duration = 0;
  Duration moving = 0;
  Duration cleaning = 0;
  std::vector<std::string> rooms;
  std::vector<std::string> equipment_types;
  std::vector<std::string> people;

  bool operator==(const TaskSpec&) const = default;
};

struct Surgery {
  std::string id;
  int priority = 0;  // smaller tiers are scheduled first
  std::vector<TaskSpec> tasks;

  bool operator==(const Surgery&) const = default;
};

inline constexpr Duration kDefaultBlockingLimit = 15;

struct Instance {
  std::string name;
  std::uint64_t seed = 0;
  Duration horizon = 0;
  Duration blocking_limit = kDefaultBlockingLimit;
  std::vector<Resource> resources;
  std::vector<Surgery> surgeries;

  bool operator==(const Instance&) const = default;

  std::optional<ResourceIndex> find_resource(std::string_view id) const;
  std::optional<std::size_t> find_surgery(std::string_view id) const;
};

struct Violation {
  std::string entity;
  std::string rule;
  std::string detail;
};

// Empty iff every structural invariant of the instance holds.
std::vector<Violation> validate_instance(const Instance& inst);

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Id-resolved view of an instance used by the decoder, the verifier and the
// bound models. Construction throws ModelError on dangling references.
struct ResolvedTask {
  Duration duration = 0;
  Duration moving = 0;
  Duration cleaning = 0;
  std::vector<ResourceIndex> rooms;
  // One candidate-unit list per required equipment type, in listed order.
  std::vector<std::vector<ResourceIndex>> equipment_units;
  std::vector<std::string> equipment_types;
  std::vector<ResourceIndex> people;
};

struct ResolvedSurgery {
  int priority = 0;
  std::vector<ResolvedTask> tasks;
};

class ResolvedInstance {
 public:
  explicit ResolvedInstance(const Instance& inst);

  const std::vector<ResolvedSurgery>& surgeries() const { return surgeries_; }
  const ResolvedSurgery& surgery(std::size_t k) const { return surgeries_[k]; }
  std::size_t surgery_count() const { return surgeries_.size(); }
  std::size_t resource_count() const { return initial_.size(); }
  const AvailabilitySlots& initial_slots(ResourceIndex r) const { return initial_[r]; }
  const std::vector<AvailabilitySlots>& initial_slots() const { return initial_; }
  ResourceKind kind(ResourceIndex r) const { return kinds_[r]; }
  Duration blocking_limit() const { return blocking_limit_; }
  Duration horizon() const { return horizon_; }

 private:
  std::vector<ResolvedSurgery> surgeries_;
  std::vector<AvailabilitySlots> initial_;
  std::vector<ResourceKind> kinds_;
  Duration blocking_limit_ = kDefaultBlockingLimit;
  Duration horizon_ = 0;
};

}  // namespace iorsp
