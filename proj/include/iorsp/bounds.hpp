#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iorsp/model.hpp"

namespace iorsp {

class BoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Total stay of each surgery whose first task uses a bed: the sum over
// its chain of duration + moving. Instance order.
struct BedTerm {
  std::size_t surgery;
  Duration stay;
};
std::vector<BedTerm> bed_terms(const Instance& inst);

// Terms of the operating-room relaxation, taken from the first OR task of
// each surgery. first: duration + moving of the chain's first task (0 when
// the OR task opens the chain);
// surgery: duration + moving of the OR task; last: sum of duration +
// moving over every task after it. rooms indexes into OrTerms::rooms.
struct OrTerm {
  std::size_t surgery;
  Duration first;
  Duration surgery_time;
  Duration last;
  std::vector<std::size_t> rooms;
};

struct OrTerms {
  std::vector<ResourceIndex> rooms;   // the instance's operating rooms
  std::vector<OrTerm> terms;
  std::vector<std::string> warnings;  // surgeries left out of the model
};
OrTerms or_terms(const Instance& inst);

// Load of one OR: sum of surgery times plus the first-term of its first
// surgery and the last-term of a different last surgery. A lone surgery
// pays both of its own terms; an empty room costs nothing.
Duration or_room_cost(std::span<const OrTerm* const> assigned);

enum class BoundStatus { optimal, bound };
std::string_view to_string(BoundStatus s);

struct BoundOptions {
  double time_cap_s = 3600.0;
  std::optional<std::int64_t> node_limit;
  bool use_time_cap = true;  // false: only the node limit can interrupt
};

struct BoundResult {
  Duration value = 0;  // optimum, or a proven lower bound when interrupted
  BoundStatus status = BoundStatus::optimal;
  double seconds = 0.0;
  std::int64_t nodes = 0;
};

// min over assignments of surgeries to identical machines of the largest load.
BoundResult solve_bed_model(std::span<const Duration> stays, std::size_t beds, const BoundOptions& options = {});
BoundResult solve_or_model(std::span<const OrTerm> terms, std::size_t rooms, const BoundOptions& options = {});

BoundResult bed_lower_bound(const Instance& inst, const BoundOptions& options = {});
BoundResult or_lower_bound(const Instance& inst, const BoundOptions& options = {});

struct BestBound {
  Duration value = 0;
  std::optional<BoundResult> bed;
  std::optional<BoundResult> operating_room;
};

// Largest of the applicable relaxations; models that do not apply to the
// instance (no beds, no OR tasks) are skipped.
BestBound best_lower_bound(const Instance& inst, const BoundOptions& options = {});

}  // namespace iorsp
