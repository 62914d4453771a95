#include "iorsp/slots.hpp"

#include <algorithm>

namespace iorsp {

AvailabilitySlots AvailabilitySlots::from_intervals(const std::vector<Interval>& available) {
  std::vector<Interval> sorted = available;
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval& a, const Interval& b) { return a.begin < b.begin; });
  std::vector<Instant> w;
  for (const Interval& iv : sorted) {
    if (iv.end <= iv.begin) continue;
    if (!w.empty() && w.size() % 2 == 0 && w.back() >= iv.begin) {
      // touching or overlapping the previous interval: extend it
      Instant prev_end = w.back();
      w.pop_back();
      Instant end = std::max(prev_end, iv.end);
      if (end != kForever) w.push_back(end);
      continue;
    }
    if (w.size() % 2 == 1) break;  // previous interval was open-ended
    w.push_back(iv.begin);
    if (iv.end != kForever) w.push_back(iv.end);
  }
  return AvailabilitySlots(std::move(w));
}

bool AvailabilitySlots::well_formed() const {
  if (!w_.empty() && w_.front() < 0) return false;
  return std::adjacent_find(w_.begin(), w_.end(), std::greater_equal<>()) == w_.end();
}

std::size_t AvailabilitySlots::first_interval_ending_after(Instant t) const {
  auto idx = static_cast<std::size_t>(std::upper_bound(w_.begin(), w_.end(), t) - w_.begin());
  return (idx % 2 == 1) ? idx - 1 : idx;
}

std::optional<Instant> AvailabilitySlots::earliest_fit(Instant t_min, Duration dur) const {
  for (std::size_t p = first_interval_ending_after(t_min); p < w_.size(); p += 2) {
    const Instant start = std::max(w_[p], t_min);
    const Instant end = interval_end(p);
    if (end == kForever) return start;
    if (start < end && dur <= end - start) return start;
  }
  return std::nullopt;
}

bool AvailabilitySlots::fits(Instant start, Duration dur) const {
  auto s = earliest_fit(start, dur);
  return s && *s == start;
}

AvailabilitySlots AvailabilitySlots::reserve(Instant start, Duration dur) const {
  if (dur < 0) throw ReservationError("negative reservation length");
  if (!fits(start, dur)) {
    throw ReservationError("reservation [" + std::to_string(start) + ", " +
                           std::to_string(start + dur) + ") overlaps unavailable time");
  }
  if (dur == 0) return *this;

  const std::size_t p = first_interval_ending_after(start);
  const Instant begin = w_[p];
  const Instant end = interval_end(p);
  const Instant stop = start + dur;

  std::vector<Instant> out;
  out.reserve(w_.size() + 2);
  out.insert(out.end(), w_.begin(), w_.begin() + static_cast<std::ptrdiff_t>(p));
  if (start > begin) {
    out.push_back(begin);
    out.push_back(start);
  }
  if (stop < end) {
    out.push_back(stop);
    if (end != kForever) out.push_back(end);
  }
  if (p + 2 < w_.size()) {
    out.insert(out.end(), w_.begin() + static_cast<std::ptrdiff_t>(p + 2), w_.end());
  }
  return AvailabilitySlots(std::move(out));
}

std::vector<Interval> AvailabilitySlots::available_intervals() const {
  std::vector<Interval> out;
  for (std::size_t p = 0; p < w_.size(); p += 2) out.push_back({w_[p], interval_end(p)});
  return out;
}

std::vector<Interval> AvailabilitySlots::unavailable_within(Instant from, Instant to) const {
  std::vector<Interval> out;
  Instant cursor = from;
  for (const Interval& iv : available_intervals()) {
    if (iv.end <= from) continue;
    if (iv.begin >= to) break;
    if (iv.begin > cursor) out.push_back({cursor, iv.begin});
    cursor = std::max(cursor, iv.end);
    if (cursor >= to) break;
  }
  if (cursor < to) out.push_back({cursor, to});
  return out;
}

}  // namespace iorsp
