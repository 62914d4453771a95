// iorsp: command-line front end for the solver suite.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "iorsp/bounds.hpp"
#include "iorsp/instance_io.hpp"
#include "iorsp/meta.hpp"
#include "iorsp/schedule_io.hpp"
#include "iorsp/toolkit/benchmark.hpp"
#include "iorsp/toolkit/gantt.hpp"
#include "iorsp/toolkit/generator.hpp"
#include "iorsp/toolkit/profile.hpp"
#include "iorsp/toolkit/reschedule.hpp"
#include "iorsp/toolkit/ttt.hpp"

using namespace iorsp;

namespace {

// Failure with a machine-readable category.
struct CliError : std::runtime_error {
  CliError(std::string kind_, const std::string& what) : std::runtime_error(what), kind(std::move(kind_)) {}
  std::string kind;
};

int report(const std::string& kind, const std::string& message, int code,
           const std::vector<Violation>& violations = {}) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  if (!violations.empty()) {
    auto list = nlohmann::ordered_json::array();
    for (const Violation& v : violations) list.push_back({{"entity", v.entity}, {"rule", v.rule}, {"detail", v.detail}});
    j["violations"] = std::move(list);
  }
  std::cerr << j.dump() << "\n";
  return code;
}

struct InvalidInstance : std::runtime_error {
  explicit InvalidInstance(std::vector<Violation> v)
      : std::runtime_error("instance failed validation"), violations(std::move(v)) {}
  std::vector<Violation> violations;
};

Instance load_valid(const std::string& path) {
  Instance inst = load_instance_file(path);
  auto violations = validate_instance(inst);
  if (!violations.empty()) throw InvalidInstance(std::move(violations));
  return inst;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

Algorithm algorithm_arg(const std::string& name) {
  auto alg = parse_algorithm(name);
  if (!alg) throw CliError("usage", "unknown algorithm '" + name + "' (expected brkga-ql, sa or ils)");
  return *alg;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string bound_row(const std::string& instance, const std::string& model, const BoundResult& r, bool logical) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%s,%lld,%.4f,%s,%.3f\n", instance.c_str(), model.c_str(),
                static_cast<long long>(r.value), to_days(r.value), std::string(to_string(r.status)).c_str(),
                logical ? 0.0 : r.seconds);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operating room scheduling with random-key metaheuristics"};
  app.require_subcommand(1);

  // solve
  std::string alg_name = "brkga-ql", instance_path, trace_path, schedule_out, out_path;
  double time_limit = 10.0;
  std::uint64_t seed = 1;
  std::int64_t generations = 0;
  auto* solve = app.add_subcommand("solve", "Run one metaheuristic on an instance");
  solve->add_option("--alg", alg_name, "brkga-ql | sa | ils");
  solve->add_option("--instance", instance_path, "Instance JSON")->required();
  solve->add_option("--time-limit", time_limit, "Seconds");
  solve->add_option("--seed", seed);
  solve->add_option("--generations", generations, "Iteration budget; replaces the time limit");
  solve->add_option("--trace", trace_path, "Trace CSV output");
  solve->add_option("--schedule", schedule_out, "Best schedule JSON output");

  // lb
  std::string model = "best";
  double time_cap = 3600.0;
  std::int64_t node_limit = 0;
  bool logical_clock = false;
  auto* lb = app.add_subcommand("lb", "Lower bounds from the bed and OR relaxations");
  lb->add_option("--instance", instance_path)->required();
  lb->add_option("--model", model, "bed | or | best");
  lb->add_option("--time-cap", time_cap, "Seconds per model");
  lb->add_option("--node-limit", node_limit, "Branch-and-bound node limit per model");
  lb->add_flag("--logical-clock", logical_clock, "Ignore wall time; only the node limit interrupts");

  // generate
  std::string config_path;
  int surgeries = -1;
  auto* gen = app.add_subcommand("generate", "Generate a synthetic instance");
  gen->add_option("--config", config_path, "Generator config JSON (default: built-in demo catalog)");
  gen->add_option("--seed", seed);
  gen->add_option("--surgeries", surgeries, "Override the surgery count");
  gen->add_option("--out", out_path);

  // bench
  std::string suite_dir, algs = "brkga-ql,sa,ils", runs_out;
  int reps = 5;
  auto* bench = app.add_subcommand("bench", "Benchmark algorithms over a suite directory");
  bench->add_option("--suite", suite_dir)->required();
  bench->add_option("--algs", algs, "Comma-separated algorithms");
  bench->add_option("--reps", reps);
  bench->add_option("--time-limit", time_limit, "Default seconds per run");
  bench->add_option("--generations", generations);
  bench->add_option("--seed", seed);
  bench->add_option("--runs-out", runs_out, "Per-run CSV output");
  bench->add_option("--out", out_path, "Summary CSV output");

  // ttt
  double target = 0.0, cap = 60.0;
  int runs = 100;
  std::string svg_out;
  auto* ttt = app.add_subcommand("ttt", "Time-to-target experiment");
  ttt->add_option("--instance", instance_path)->required();
  ttt->add_option("--alg", alg_name);
  ttt->add_option("--target", target, "Target makespan in minutes")->required();
  ttt->add_option("--runs", runs);
  ttt->add_option("--cap", cap, "Seconds per run");
  ttt->add_option("--generations", generations);
  ttt->add_option("--seed", seed);
  ttt->add_option("--out", out_path);
  ttt->add_option("--svg", svg_out);

  // profile
  std::string results_path;
  double gap = 1.0;
  auto* profile = app.add_subcommand("profile", "Performance profile from a results CSV");
  profile->add_option("--results", results_path)->required();
  profile->add_option("--gap", gap, "Percent deviation treated as solved");
  profile->add_option("--out", out_path);
  profile->add_option("--svg", svg_out);

  // gantt
  std::string schedule_path, delta_path;
  auto* gantt = app.add_subcommand("gantt", "Render a schedule as an SVG Gantt chart");
  gantt->add_option("--schedule", schedule_path)->required();
  gantt->add_option("--out", out_path);
  gantt->add_option("--instance", instance_path, "Adds empty rooms and unavailable time");
  gantt->add_option("--delta", delta_path, "Marks the delta's fixed allocations");

  // reschedule
  auto* resched = app.add_subcommand("reschedule", "Apply a cancel/fix/add delta to an instance");
  resched->add_option("--instance", instance_path)->required();
  resched->add_option("--delta", delta_path)->required();
  resched->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("usage", e.what(), 2);
  }

  try {
    if (*solve) {
      const Instance inst = load_valid(instance_path);
      RunBudget budget;
      budget.time_limit_s = time_limit;
      budget.seed = seed;
      if (generations > 0) budget.iterations = generations;
      const Algorithm alg = algorithm_arg(alg_name);
      const RunResult r = run_algorithm(alg, inst, budget);
      const auto violations = verify_schedule(r.best_schedule, inst);
      if (!violations.empty()) return report("infeasible-result", "best schedule failed verification", 3, violations);
      if (!trace_path.empty()) write_text_file(trace_path, trace_csv(r.trace));
      if (!schedule_out.empty()) write_text_file(schedule_out, save_schedule(r.best_schedule, inst));
      char buf[256];
      std::snprintf(buf, sizeof buf, "%s,%s,%llu,%lld,%.4f,%.0f,%lld,%lld\n", inst.name.c_str(),
                    std::string(to_string(alg)).c_str(), static_cast<unsigned long long>(seed),
                    static_cast<long long>(r.best_makespan), to_days(r.best_makespan), r.time_to_best_ms,
                    static_cast<long long>(r.iterations), static_cast<long long>(r.evaluations));
      std::cout << "instance,algorithm,seed,best_minutes,best_days,time_to_best_ms,iterations,evaluations\n" << buf;
    } else if (*lb) {
      const Instance inst = load_valid(instance_path);
      BoundOptions opts;
      opts.time_cap_s = time_cap;
      opts.use_time_cap = !logical_clock;
      if (node_limit > 0) opts.node_limit = node_limit;
      std::string out = "instance,model,bound_minutes,bound_days,status,seconds\n";
      if (model == "bed") {
        out += bound_row(inst.name, "bed", bed_lower_bound(inst, opts), logical_clock);
      } else if (model == "or") {
        for (const auto& w : or_terms(inst).warnings) report("warning", w, 0);
        out += bound_row(inst.name, "or", or_lower_bound(inst, opts), logical_clock);
      } else if (model == "best") {
        for (const auto& w : or_terms(inst).warnings) report("warning", w, 0);
        const BestBound b = best_lower_bound(inst, opts);
        if (b.bed) out += bound_row(inst.name, "bed", *b.bed, logical_clock);
        if (b.operating_room) out += bound_row(inst.name, "or", *b.operating_room, logical_clock);
        BoundResult best{b.value, BoundStatus::optimal, 0.0, 0};
        const bool all_optimal = (!b.bed || b.bed->status == BoundStatus::optimal) &&
                                 (!b.operating_room || b.operating_room->status == BoundStatus::optimal);
        best.status = all_optimal ? BoundStatus::optimal : BoundStatus::bound;
        best.seconds = (b.bed ? b.bed->seconds : 0.0) + (b.operating_room ? b.operating_room->seconds : 0.0);
        out += bound_row(inst.name, "best", best, logical_clock);
      } else {
        throw CliError("usage", "unknown model '" + model + "' (expected bed, or or best)");
      }
      std::cout << out;
    } else if (*gen) {
      GeneratorConfig cfg = config_path.empty() ? default_generator_config()
                                                : load_generator_config(read_text_file(config_path));
      cfg.seed = seed;
      if (surgeries >= 0) cfg.surgeries = surgeries;
      emit(out_path, save_instance(generate_instance(cfg)));
    } else if (*bench) {
      BenchConfig cfg;
      cfg.instances = load_suite(suite_dir);
      for (const auto& bi : cfg.instances) {
        auto v = validate_instance(bi.instance);
        if (!v.empty()) throw InvalidInstance(std::move(v));
      }
      for (const std::string& a : split_list(algs)) cfg.algorithms.push_back(algorithm_arg(a));
      cfg.replications = reps;
      cfg.time_limit_s = time_limit;
      cfg.seed = seed;
      if (generations > 0) cfg.iterations = generations;
      const auto records = run_bench(cfg);
      if (!runs_out.empty()) write_text_file(runs_out, runs_csv(records));
      emit(out_path, summary_csv(summarize(records)));
    } else if (*ttt) {
      const Instance inst = load_valid(instance_path);
      TttOptions o;
      o.runs = runs;
      o.cap_s = cap;
      o.seed = seed;
      if (generations > 0) o.iterations = generations;
      const TttResult r = ttt_experiment(inst, algorithm_arg(alg_name), target, o);
      if (!svg_out.empty()) write_text_file(svg_out, ttt_svg(r));
      emit(out_path, ttt_csv(r));
    } else if (*profile) {
      const auto entries = load_results_csv(read_text_file(results_path));
      const auto curves = performance_profile(entries, gap);
      if (!svg_out.empty()) write_text_file(svg_out, profile_svg(curves));
      emit(out_path, profile_csv(curves));
    } else if (*gantt) {
      const ScheduleDocument doc = load_schedule(read_text_file(schedule_path));
      GanttOptions o;
      Instance inst;
      if (!instance_path.empty()) {
        inst = load_instance_file(instance_path);
        o.instance = &inst;
      }
      if (!delta_path.empty()) {
        if (instance_path.empty()) throw CliError("usage", "--delta needs --instance (the base instance)");
        const RescheduleDelta delta = load_delta(read_text_file(delta_path));
        o.frozen = frozen_intervals(inst, delta);
      }
      emit(out_path, gantt_svg(doc, o));
    } else if (*resched) {
      const Instance base = load_valid(instance_path);
      const RescheduleDelta delta = load_delta(read_text_file(delta_path));
      emit(out_path, save_instance(reschedule_prepare(base, delta)));
    }
  } catch (const InvalidInstance& e) {
    return report("invalid-instance", e.what(), 1, e.violations);
  } catch (const CliError& e) {
    return report(e.kind, e.what(), e.kind == "usage" ? 2 : 1);
  } catch (const ParseError& e) {
    return report("parse", e.what(), 1);
  } catch (const UnschedulableSurgery& e) {
    return report("unschedulable", e.what(), 1);
  } catch (const BoundError& e) {
    return report("bound", e.what(), 1);
  } catch (const RescheduleError& e) {
    return report("reschedule", e.what(), 1);
  } catch (const std::exception& e) {
    return report("error", e.what(), 1);
  }
  return 0;
}
