#include "iorsp/toolkit/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "iorsp/toolkit/benchmark.hpp"
#include "iorsp/toolkit/svg.hpp"

namespace iorsp {

std::vector<ProfileCurve> performance_profile(const std::vector<ResultEntry>& entries, double gap_percent) {
  std::vector<std::string> instances, algorithms;
  std::map<std::pair<std::string, std::string>, double> value;
  std::map<std::string, double> best, reference;
  for (const ResultEntry& e : entries) {
    if (std::find(instances.begin(), instances.end(), e.instance) == instances.end()) instances.push_back(e.instance);
    if (std::find(algorithms.begin(), algorithms.end(), e.algorithm) == algorithms.end()) algorithms.push_back(e.algorithm);
    auto key = std::make_pair(e.instance, e.algorithm);
    auto it = value.find(key);
    value[key] = it == value.end() ? e.value : std::min(it->second, e.value);
    auto b = best.find(e.instance);
    best[e.instance] = b == best.end() ? e.value : std::min(b->second, e.value);
    if (e.reference) reference[e.instance] = *e.reference;
  }

  const double inf = std::numeric_limits<double>::infinity();
  std::map<std::string, std::vector<double>> log_ratios;
  std::set<double> taus = {0.0};
  for (const std::string& alg : algorithms) {
    auto& lr = log_ratios[alg];
    for (const std::string& inst : instances) {
      auto it = value.find({inst, alg});
      const double b = best[inst];
      if (it == value.end() || !(b > 0.0)) {
        lr.push_back(inf);
        continue;
      }
      const double ref = reference.count(inst) ? reference[inst] : b;
      if (rpd(it->second, ref) > gap_percent + 1e-9) {
        lr.push_back(inf);
        continue;
      }
      const double r = std::log2(it->second / b);
      lr.push_back(r);
      taus.insert(r);
    }
  }

  std::vector<ProfileCurve> out;
  const double count = static_cast<double>(instances.size());
  for (const std::string& alg : algorithms) {
    ProfileCurve curve{alg, {}};
    for (double tau : taus) {
      const auto& lr = log_ratios[alg];
      const auto solved = std::count_if(lr.begin(), lr.end(), [tau](double r) { return r <= tau + 1e-12; });
      curve.points.push_back({tau, count > 0 ? static_cast<double>(solved) / count : 0.0});
    }
    out.push_back(std::move(curve));
  }
  return out;
}

std::string profile_csv(const std::vector<ProfileCurve>& curves) {
  std::string out = "algorithm,log2_tau,fraction\n";
  char buf[128];
  for (const ProfileCurve& c : curves) {
    for (const ProfilePoint& p : c.points) {
      std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f\n", c.algorithm.c_str(), p.log2_tau, p.fraction);
      out += buf;
    }
  }
  return out;
}

std::string profile_svg(const std::vector<ProfileCurve>& curves) {
  const double w = 640, h = 400, left = 60, right = 150, top = 20, bottom = 50;
  double max_tau = 0.0;
  for (const auto& c : curves) {
    for (const auto& p : c.points) max_tau = std::max(max_tau, p.log2_tau);
  }
  if (max_tau <= 0.0) max_tau = 1.0;
  const double pw = w - left - right, ph = h - top - bottom;
  auto x = [&](double tau) { return left + pw * tau / max_tau; };
  auto y = [&](double f) { return top + ph * (1.0 - f); };

  svg::Document doc(w, h);
  doc.line(left, top + ph, left + pw, top + ph, "black");
  doc.line(left, top, left, top + ph, "black");
  doc.text(left + pw / 2, h - 10, "log2(tau)", 12, "middle");
  for (int i = 0; i <= 4; ++i) {
    const double f = i / 4.0;
    char label[16];
    std::snprintf(label, sizeof label, "%.2f", f);
    doc.text(left - 6, y(f) + 4, label, 10, "end");
  }
  char label[32];
  std::snprintf(label, sizeof label, "%.4f", max_tau);
  doc.text(left + pw, top + ph + 16, label, 10, "middle");
  doc.text(left, top + ph + 16, "0", 10, "middle");

  static const char* palette[] = {"rgb(31,119,180)", "rgb(255,127,14)", "rgb(44,160,44)", "rgb(148,103,189)",
                                  "rgb(140,86,75)"};
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    std::ostringstream pts;
    double prev_f = 0.0;
    bool first = true;
    for (const auto& p : c.points) {
      if (!first) pts << x(p.log2_tau) << ',' << y(prev_f) << ' ';
      pts << x(p.log2_tau) << ',' << y(p.fraction) << ' ';
      prev_f = p.fraction;
      first = false;
    }
    pts << x(max_tau) << ',' << y(prev_f);
    const char* color = palette[i % 5];
    doc.polyline(pts.str(), color, 2.0, "profile");
    doc.line(left + pw + 15, top + 20 + 18.0 * i, left + pw + 35, top + 20 + 18.0 * i, color, 2.0);
    doc.text(left + pw + 40, top + 24 + 18.0 * i, c.algorithm, 11);
  }
  return doc.finish();
}

std::vector<ResultEntry> load_results_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(s);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  if (!std::getline(in, line)) throw std::runtime_error("results file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  auto column = [&](std::initializer_list<const char*> names) -> std::optional<std::size_t> {
    for (const char* n : names) {
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == n) return i;
      }
    }
    return std::nullopt;
  };
  const auto ci = column({"instance"});
  const auto ca = column({"algorithm"});
  const auto cv = column({"best_minutes", "best", "value"});
  const auto cr = column({"reference"});
  if (!ci || !ca || !cv) throw std::runtime_error("results file needs instance, algorithm and value columns");

  std::vector<ResultEntry> out;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    const std::size_t need = std::max({*ci, *ca, *cv});
    if (cells.size() <= need) throw std::runtime_error("results row " + std::to_string(row) + " is short");
    if (cells[*cv].empty()) continue;  // failed run
    ResultEntry e;
    e.instance = cells[*ci];
    e.algorithm = cells[*ca];
    try {
      e.value = std::stod(cells[*cv]);
      if (cr && *cr < cells.size() && !cells[*cr].empty()) e.reference = std::stod(cells[*cr]);
    } catch (const std::exception&) {
      throw std::runtime_error("results row " + std::to_string(row) + " has a non-numeric value");
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace iorsp
