#include "iorsp/toolkit/gantt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>

#include "iorsp/toolkit/svg.hpp"

namespace iorsp {

std::string patient_color(std::string_view surgery_id) {
  std::uint32_t h = 2166136261u;  // FNV-1a
  for (unsigned char c : surgery_id) {
    h ^= c;
    h *= 16777619u;
  }
  // Hue from the hash; saturation and lightness fixed so every patient is
  // readable and none matches the purple/red reserved for calendars.
  const double hue = static_cast<double>(h % 360);
  const double s = 0.55, l = 0.55;
  const double c = (1.0 - std::fabs(2.0 * l - 1.0)) * s;
  const double hp = hue / 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  std::array<double, 3> rgb{};
  if (hp < 1) rgb = {c, x, 0};
  else if (hp < 2) rgb = {x, c, 0};
  else if (hp < 3) rgb = {0, c, x};
  else if (hp < 4) rgb = {0, x, c};
  else if (hp < 5) rgb = {x, 0, c};
  else rgb = {c, 0, x};
  const double m = l - c / 2.0;
  auto channel = [m](double v) { return static_cast<int>(std::lround((v + m) * 255.0)); };
  return svg::rgb(channel(rgb[0]), channel(rgb[1]), channel(rgb[2]));
}

namespace {

Duration tick_step(Instant span) {
  static const Duration steps[] = {1, 2, 5, 10, 15, 30, 60, 120, 240, 360, 720, 1440, 2880, 10080};
  for (Duration s : steps) {
    if (span / s <= 14) return s;
  }
  return 10080;
}

}  // namespace

std::string gantt_svg(const ScheduleDocument& doc, const GanttOptions& options) {
  std::vector<std::string> lanes;
  auto add_lane = [&lanes](const std::string& id) {
    if (std::find(lanes.begin(), lanes.end(), id) == lanes.end()) lanes.push_back(id);
  };
  if (options.instance) {
    for (const Resource& r : options.instance->resources) {
      if (is_room(r.kind)) add_lane(r.id);
    }
  }
  Instant end = std::max<Instant>(doc.makespan, 1);
  for (const auto& e : doc.surgeries) {
    for (const auto& t : e.tasks) {
      add_lane(t.room);
      end = std::max({end, t.end, t.clean_end});
    }
  }
  for (const FrozenInterval& f : options.frozen) {
    if (std::find(lanes.begin(), lanes.end(), f.resource) != lanes.end()) end = std::max(end, f.span.end);
  }

  const double label_w = 110, top = 30, lane_h = 26, gap = 6;
  const double plot_w = options.width;
  const double height = top + lanes.size() * (lane_h + gap) + 30;
  svg::Document svg(label_w + plot_w + 20, height);
  auto x_of = [&](Instant t) { return label_w + plot_w * static_cast<double>(t) / static_cast<double>(end); };
  auto lane_y = [&](const std::string& id) {
    const auto pos = std::find(lanes.begin(), lanes.end(), id) - lanes.begin();
    return top + static_cast<double>(pos) * (lane_h + gap);
  };

  const Duration step = tick_step(end);
  for (Instant t = 0; t <= end; t += step) {
    svg.line(x_of(t), top - 4, x_of(t), height - 26, "rgb(220,220,220)");
    const std::string label = step >= kMinutesPerDay ? "d" + std::to_string(t / kMinutesPerDay + 1) : std::to_string(t);
    svg.text(x_of(t), top - 8, label, 10, "middle");
  }

  for (const std::string& id : lanes) {
    const double y = lane_y(id);
    svg.text(label_w - 8, y + lane_h * 0.65, id, 11, "end");
    svg.rect(label_w, y, plot_w, lane_h, "rgb(245,245,245)", "lane");
    if (options.instance) {
      if (auto r = options.instance->find_resource(id)) {
        for (const Interval& iv : options.instance->resources[*r].slots.unavailable_within(0, end)) {
          svg.rect(x_of(iv.begin), y, x_of(iv.end) - x_of(iv.begin), lane_h, kUnavailableColor, "unavailable");
        }
      }
    }
  }
  for (const FrozenInterval& f : options.frozen) {
    if (std::find(lanes.begin(), lanes.end(), f.resource) == lanes.end()) continue;
    const double y = lane_y(f.resource);
    svg.rect(x_of(f.span.begin), y, x_of(f.span.end) - x_of(f.span.begin), lane_h, kFrozenColor, "frozen",
             "fixed " + f.surgery);
  }

  for (const auto& e : doc.surgeries) {
    const std::string color = patient_color(e.id);
    if (e.tasks.size() >= 2 && e.tasks.front().room == e.tasks.back().room) {
      const auto& first = e.tasks.front();
      const auto& last = e.tasks.back();
      const double y = lane_y(first.room);
      if (last.start > first.clean_end) {
        svg.rect(x_of(first.clean_end), y + lane_h * 0.35, x_of(last.start) - x_of(first.clean_end), lane_h * 0.3,
                 color, "hold", "bed held for " + e.id, 0.35);
      }
    }
    for (std::size_t t = 0; t < e.tasks.size(); ++t) {
      const auto& task = e.tasks[t];
      const double y = lane_y(task.room);
      svg.rect(x_of(task.start), y + 2, x_of(task.end) - x_of(task.start), lane_h - 4, color, "task",
               e.id + " task " + std::to_string(t + 1) + " [" + std::to_string(task.start) + ", " +
                   std::to_string(task.end) + ")");
      if (task.clean_end > task.end) {
        svg.rect(x_of(task.end), y + 2, x_of(task.clean_end) - x_of(task.end), lane_h - 4, color, "clean",
                 e.id + " cleaning", 0.4);
      }
    }
  }
  char footer[96];
  std::snprintf(footer, sizeof footer, "makespan %lld min (%.4f days)", static_cast<long long>(doc.makespan),
                to_days(doc.makespan));
  svg.text(label_w, height - 8, footer, 11);
  return svg.finish();
}

}  // namespace iorsp
