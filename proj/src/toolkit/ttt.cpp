#include "iorsp/toolkit/ttt.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "iorsp/toolkit/benchmark.hpp"
#include "iorsp/toolkit/svg.hpp"

namespace iorsp {

namespace {

TttSample one_run(const Instance& inst, Algorithm alg, double target, const TttOptions& o, std::uint64_t seed) {
  RunBudget budget;
  budget.time_limit_s = o.cap_s;
  budget.iterations = o.iterations;
  budget.seed = seed;
  budget.target = target;
  const RunResult r = run_algorithm(alg, inst, budget);
  if (static_cast<double>(r.best_makespan) <= target) return {r.time_to_best_ms, false};
  return {r.elapsed_ms, true};
}

}  // namespace

std::vector<std::pair<double, double>> ttt_points(const std::vector<TttSample>& samples) {
  std::vector<std::pair<double, double>> out;
  const double runs = static_cast<double>(samples.size());
  int i = 0;
  for (const TttSample& s : samples) {
    if (s.censored) continue;
    ++i;
    out.emplace_back(s.time_ms, (i - 0.5) / runs);
  }
  return out;
}

TttResult ttt_experiment(const Instance& inst, Algorithm alg, double target, const TttOptions& options) {
  if (options.runs < 1) throw std::invalid_argument("ttt needs at least one run");
  const TttSample pilot = one_run(inst, alg, target, options, replication_seed(options.seed, 0, 0, -1));
  if (pilot.censored) throw std::runtime_error("target not reached by the pilot run");

  TttResult r;
  r.target = target;
  for (int i = 0; i < options.runs; ++i) {
    r.samples.push_back(one_run(inst, alg, target, options, replication_seed(options.seed, 0, 0, i)));
  }
  std::stable_sort(r.samples.begin(), r.samples.end(), [](const TttSample& a, const TttSample& b) {
    if (a.censored != b.censored) return !a.censored;
    return a.time_ms < b.time_ms;
  });
  r.points = ttt_points(r.samples);
  return r;
}

std::string ttt_csv(const TttResult& r) {
  std::string out = "rank,time_ms,censored,probability\n";
  char buf[128];
  std::size_t reached = 0;
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const TttSample& s = r.samples[i];
    if (s.censored) {
      std::snprintf(buf, sizeof buf, "%zu,%.0f,1,\n", i + 1, s.time_ms);
    } else {
      std::snprintf(buf, sizeof buf, "%zu,%.0f,0,%.6f\n", i + 1, s.time_ms, r.points[reached++].second);
    }
    out += buf;
  }
  return out;
}

std::string ttt_svg(const TttResult& r) {
  const double w = 560, h = 380, left = 60, top = 20, pw = 470, ph = 300;
  double max_t = 1.0;
  for (const auto& [t, p] : r.points) max_t = std::max(max_t, t);
  svg::Document doc(w, h);
  doc.line(left, top + ph, left + pw, top + ph, "black");
  doc.line(left, top, left, top + ph, "black");
  doc.text(left + pw / 2, h - 12, "time to target (ms)", 12, "middle");
  doc.text(left - 6, top + 4, "1.0", 10, "end");
  doc.text(left - 6, top + ph + 4, "0.0", 10, "end");
  char label[32];
  std::snprintf(label, sizeof label, "%.0f", max_t);
  doc.text(left + pw, top + ph + 16, label, 10, "middle");
  std::ostringstream pts;
  for (const auto& [t, p] : r.points) {
    const double x = left + pw * t / max_t, y = top + ph * (1.0 - p);
    doc.rect(x - 2, y - 2, 4, 4, "rgb(31,119,180)", "ttt-point");
    pts << x << ',' << y << ' ';
  }
  if (!r.points.empty()) doc.polyline(pts.str(), "rgb(31,119,180)", 1.0);
  return doc.finish();
}

}  // namespace iorsp
