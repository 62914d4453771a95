#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace iorsp {

// Minutes since the planning-horizon origin (day 1, 00:00).
using Instant = std::int64_t;
// Length of an interval in minutes.
using Duration = std::int64_t;

inline constexpr Instant kForever = std::numeric_limits<Instant>::max();
inline constexpr Duration kMinutesPerDay = 1440;

inline double to_days(Instant minutes) {
  return static_cast<double>(minutes) / static_cast<double>(kMinutesPerDay);
}

struct Interval {
  Instant begin = 0;
  Instant end = 0;  // exclusive; kForever for an open-ended tail

  bool operator==(const Interval&) const = default;
  bool overlaps(const Interval& o) const { return begin < o.end && o.begin < end; }
  bool contains(const Interval& o) const { return begin <= o.begin && o.end <= end; }
};

class ReservationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A resource timeline stored as the alternating instant list W.
//
// W[0] is the first available instant, W[1] closes that availability,
// W[2] reopens it and so on. An odd-length list ends in an open-ended
// available interval; an even-length list ends unavailable forever. The
// empty list is never available.
//
// Values are immutable; reserve() returns a new calendar.
class AvailabilitySlots {
 public:
  AvailabilitySlots() = default;
  explicit AvailabilitySlots(std::vector<Instant> instants) : w_(std::move(instants)) {}

  static AvailabilitySlots always() { return AvailabilitySlots({0}); }
  static AvailabilitySlots from_intervals(const std::vector<Interval>& available);

  // Non-negative and strictly increasing.
  bool well_formed() const;

  // Smallest start >= t_min such that [start, start + dur) sits inside one
  // available interval.
  std::optional<Instant> earliest_fit(Instant t_min, Duration dur) const;

  bool fits(Instant start, Duration dur) const;

  // Marks [start, start + dur) unavailable. Throws ReservationError if the
  // interval is not wholly available.
  AvailabilitySlots reserve(Instant start, Duration dur) const;

  std::vector<Interval> available_intervals() const;

  // Unavailable stretches inside [from, to).
  std::vector<Interval> unavailable_within(Instant from, Instant to) const;

  const std::vector<Instant>& instants() const { return w_; }
  bool never_available() const { return w_.empty(); }

  bool operator==(const AvailabilitySlots&) const = default;

 private:
  // Index of the first available interval whose end is > t, as an even
  // position into w_; w_.size() (rounded up) when none.
  std::size_t first_interval_ending_after(Instant t) const;
  Instant interval_end(std::size_t even_pos) const {
    return even_pos + 1 < w_.size() ? w_[even_pos + 1] : kForever;
  }

  std::vector<Instant> w_;
};

}  // namespace iorsp
