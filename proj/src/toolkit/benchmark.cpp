#include "iorsp/toolkit/benchmark.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "detail/json_fields.hpp"
#include "iorsp/instance_io.hpp"

namespace iorsp {

double rpd(double x, double x_min) {
  if (!(x_min > 0.0)) throw std::invalid_argument("rpd reference must be positive");
  return (x / x_min - 1.0) * 100.0;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& runs, const std::map<std::string, double>& reference) {
  std::vector<SummaryRow> rows;
  std::map<std::string, double> best_known = reference;
  if (reference.empty()) {
    for (const RunRecord& r : runs) {
      if (!r.best) continue;
      auto [it, inserted] = best_known.emplace(r.instance, static_cast<double>(*r.best));
      if (!inserted) it->second = std::min(it->second, static_cast<double>(*r.best));
    }
  }
  auto find_row = [&rows](const RunRecord& r) -> SummaryRow& {
    for (SummaryRow& row : rows) {
      if (row.instance == r.instance && row.algorithm == r.algorithm) return row;
    }
    rows.push_back({r.instance, r.algorithm});
    rows.back().best = std::numeric_limits<Instant>::max();
    rows.back().verified = true;
    return rows.back();
  };
  for (const RunRecord& r : runs) {
    SummaryRow& row = find_row(r);
    ++row.runs;
    if (!r.best) {
      ++row.failures;
      continue;
    }
    row.best = std::min(row.best, *r.best);
    row.average += static_cast<double>(*r.best);
    row.attb_ms += r.time_to_best_ms;
    row.verified = row.verified && r.verified;
  }
  for (SummaryRow& row : rows) {
    const int ok = row.runs - row.failures;
    if (ok == 0) {
      row.best = 0;
      row.verified = false;
      continue;
    }
    row.average /= ok;
    row.attb_ms /= ok;
    auto ref = best_known.find(row.instance);
    if (ref != best_known.end() && ref->second > 0.0) {
      row.brpd = rpd(static_cast<double>(row.best), ref->second);
      row.arpd = rpd(row.average, ref->second);
    }
  }
  return rows;
}

std::string runs_csv(const std::vector<RunRecord>& runs) {
  std::string out = "instance,algorithm,seed,best_minutes,best_days,time_to_best_ms,verified,error\n";
  char buf[256];
  for (const RunRecord& r : runs) {
    if (r.best) {
      std::snprintf(buf, sizeof buf, "%s,%s,%llu,%lld,%.4f,%.0f,%d,", r.instance.c_str(), r.algorithm.c_str(),
                    static_cast<unsigned long long>(r.seed), static_cast<long long>(*r.best), to_days(*r.best),
                    r.time_to_best_ms, r.verified ? 1 : 0);
    } else {
      std::snprintf(buf, sizeof buf, "%s,%s,%llu,,,,0,", r.instance.c_str(), r.algorithm.c_str(),
                    static_cast<unsigned long long>(r.seed));
    }
    out += buf;
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out += err + "\n";
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "instance,algorithm,runs,failures,best_minutes,best_days,average_days,brpd,arpd,attb_ms,verified\n";
  char buf[320];
  for (const SummaryRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%s,%d,%d,%lld,%.4f,%.4f,%.2f,%.2f,%.0f,%d\n", r.instance.c_str(),
                  r.algorithm.c_str(), r.runs, r.failures, static_cast<long long>(r.best), to_days(r.best),
                  r.average / static_cast<double>(kMinutesPerDay), r.brpd, r.arpd, r.attb_ms, r.verified ? 1 : 0);
    out += buf;
  }
  return out;
}

std::uint64_t replication_seed(std::uint64_t base, std::size_t instance, std::size_t algorithm, int rep) {
  // splitmix64 over the packed coordinates
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (1 + instance * 1000003ULL + algorithm * 7919ULL +
                                                    static_cast<std::uint64_t>(rep));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<RunRecord> run_bench(const BenchConfig& cfg) {
  std::vector<RunRecord> out;
  for (std::size_t i = 0; i < cfg.instances.size(); ++i) {
    const BenchInstance& bi = cfg.instances[i];
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
      for (int rep = 0; rep < cfg.replications; ++rep) {
        RunRecord rec;
        rec.instance = bi.name;
        rec.algorithm = std::string(to_string(cfg.algorithms[a]));
        rec.seed = replication_seed(cfg.seed, i, a, rep);
        RunBudget budget;
        budget.time_limit_s = bi.time_limit_s.value_or(cfg.time_limit_s);
        budget.iterations = cfg.iterations;
        budget.seed = rec.seed;
        try {
          const RunResult res = run_algorithm(cfg.algorithms[a], bi.instance, budget);
          rec.best = res.best_makespan;
          rec.time_to_best_ms = res.time_to_best_ms;
          rec.verified = verify_schedule(res.best_schedule, bi.instance).empty();
        } catch (const std::exception& e) {
          rec.error = e.what();
        }
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

std::vector<BenchInstance> load_suite(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw std::runtime_error("suite directory not found: " + dir.string());
  std::map<std::string, double> limits;
  const auto manifest = dir / "manifest.json";
  if (std::filesystem::exists(manifest)) {
    const auto doc = detail::parse_document(read_text_file(manifest), "suite manifest");
    if (auto it = doc.find("time_limits"); it != doc.end() && it->is_object()) {
      for (const auto& [name, v] : it->items()) limits[name] = detail::as_double(v, "$.time_limits." + name);
    }
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".json" && entry.path().filename() != "manifest.json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<BenchInstance> out;
  for (const auto& f : files) {
    BenchInstance bi;
    bi.name = f.stem().string();
    bi.instance = load_instance_file(f);
    if (auto it = limits.find(bi.name); it != limits.end()) bi.time_limit_s = it->second;
    out.push_back(std::move(bi));
  }
  return out;
}

}  // namespace iorsp
