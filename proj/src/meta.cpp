#include "iorsp/meta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace iorsp {

std::string_view to_string(Algorithm alg) {
  switch (alg) {
    case Algorithm::brkga_ql: return "brkga-ql";
    case Algorithm::sa: return "sa";
    case Algorithm::ils: return "ils";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
  if (text == "brkga-ql" || text == "brkga") return Algorithm::brkga_ql;
  if (text == "sa") return Algorithm::sa;
  if (text == "ils") return Algorithm::ils;
  return std::nullopt;
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
  const bool with_params =
      std::any_of(rows.begin(), rows.end(), [](const TraceRow& r) { return r.population.has_value(); });
  std::string out = with_params ? "elapsed_ms,iter,best,pop,pe,mu,rhoe\n" : "elapsed_ms,iter,best\n";
  char buf[160];
  for (const TraceRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%lld,%lld,%lld", static_cast<long long>(std::llround(r.elapsed_ms)),
                  static_cast<long long>(r.iteration), static_cast<long long>(std::llround(r.best)));
    out += buf;
    if (with_params) {
      std::snprintf(buf, sizeof buf, ",%zu,%.2f,%.2f,%.2f", r.population.value_or(0), r.elite_fraction.value_or(0),
                    r.mutation.value_or(0), r.elite_bias.value_or(0));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

double learning_factor(double progress) {
  return std::clamp(1.0 - 0.9 * progress, 0.1, 1.0);
}

double exploration_rate(double progress, double start, double end) {
  const double p = std::clamp(progress, 0.0, 1.0);
  return start + (end - start) * p;
}

bool metropolis_accept(double delta, double temperature, Rng& rng) {
  if (delta <= 0.0) return true;
  return rng.uniform01() < std::exp(-delta / temperature);
}

std::vector<std::size_t> leader_clusters(const std::vector<RandomKeys>& vectors, double radius) {
  std::vector<std::size_t> leader_of(vectors.size());
  std::vector<std::size_t> leaders;
  const double r2 = radius * radius;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    leader_of[i] = i;
    for (std::size_t l : leaders) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < vectors[i].size(); ++k) {
        const double d = vectors[i][k] - vectors[l][k];
        d2 += d * d;
      }
      if (d2 <= r2) {
        leader_of[i] = l;
        break;
      }
    }
    if (leader_of[i] == i) leaders.push_back(i);
  }
  return leader_of;
}

namespace {

// Decoder, search context and budget bookkeeping shared by the drivers.
class Run {
 public:
  Run(const Instance& inst, const RunBudget& budget)
      : decoder_(inst), budget_(budget), ctx_(makespan_fitness(decoder_), budget.seed, stop_rule(budget),
                                               budget.iterations.has_value()) {}
  Run(const Run&) = delete;
  Run& operator=(const Run&) = delete;

  SearchContext& ctx() { return ctx_; }
  std::size_t n() const { return decoder_.size(); }

  bool done(std::int64_t iteration) const {
    if (ctx_.should_stop()) return true;
    return budget_.iterations && iteration >= *budget_.iterations;
  }

  double progress(std::int64_t iteration) const {
    if (budget_.iterations) {
      return *budget_.iterations > 0 ? static_cast<double>(iteration) / static_cast<double>(*budget_.iterations) : 1.0;
    }
    return ctx_.elapsed_ms() / (budget_.time_limit_s * 1000.0);
  }

  void record(std::int64_t iteration, TraceRow row = {}) {
    row.elapsed_ms = ctx_.elapsed_ms();
    row.iteration = iteration;
    row.best = ctx_.best_fitness();
    trace_.push_back(row);
  }

  RunResult finish(std::int64_t iterations) {
    if (!ctx_.has_best()) ctx_.evaluate(random_keys(n(), ctx_.rng()));
    RunResult r;
    r.best_keys = ctx_.best_keys();
    r.best_schedule = decoder_.decode(r.best_keys);
    r.best_makespan = r.best_schedule.makespan;
    r.time_to_best_ms = ctx_.time_to_best_ms();
    r.elapsed_ms = ctx_.elapsed_ms();
    r.iterations = iterations;
    r.evaluations = ctx_.evaluations();
    r.trace = std::move(trace_);
    return r;
  }

 private:
  static StopRule stop_rule(const RunBudget& budget) {
    StopRule stop;
    if (!budget.iterations) stop.time_limit_ms = budget.time_limit_s * 1000.0;
    stop.target = budget.target;
    return stop;
  }

  Decoder decoder_;
  const RunBudget& budget_;
  SearchContext ctx_;
  std::vector<TraceRow> trace_;
};

struct Individual {
  RandomKeys keys;
  double fitness;
};

void sort_population(std::vector<Individual>& p) {
  std::stable_sort(p.begin(), p.end(), [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
}

// Chain position of one Q-learned parameter.
struct ParamAgent {
  QTable table;
  std::size_t state = 0;
  std::size_t from = 0;  // state before this generation's action

  explicit ParamAgent(std::size_t states) : table(states) {}

  void act(double eps, Rng& rng) {
    from = state;
    state = table.select(state, eps, rng);
    table.mark_visited(from, state);
  }
};

}  // namespace

RunResult brkga_ql_run(const Instance& inst, const RunBudget& budget, const BrkgaQlParams& params) {
  Run run(inst, budget);
  SearchContext& ctx = run.ctx();
  Rng& rng = ctx.rng();
  const std::size_t n = run.n();

  ParamAgent pop_agent(kPopulationStates.size());
  ParamAgent pe_agent(kEliteFractionStates.size());
  ParamAgent mu_agent(kMutationStates.size());
  ParamAgent rho_agent(kEliteBiasStates.size());
  std::array<ParamAgent*, 4> agents = {&pop_agent, &pe_agent, &mu_agent, &rho_agent};

  std::vector<Individual> population;
  for (std::size_t i = 0; i < kPopulationStates[pop_agent.state] && !ctx.should_stop(); ++i) {
    RandomKeys keys = random_keys(n, rng);
    const double f = ctx.evaluate(keys);
    population.push_back({std::move(keys), f});
  }
  sort_population(population);

  double previous_best = ctx.best_fitness();
  int stagnant = 0;
  std::int64_t generation = 0;
  while (!run.done(generation)) {
    const double progress = run.progress(generation);
    const double eps = exploration_rate(progress, params.epsilon_start, params.epsilon_end);
    for (ParamAgent* a : agents) a->act(eps, rng);

    const std::size_t pop_size = kPopulationStates[pop_agent.state];
    const double pe = kEliteFractionStates[pe_agent.state];
    const double mu = kMutationStates[mu_agent.state];
    const double rho = kEliteBiasStates[rho_agent.state];

    const std::size_t elite_count = std::min(
        population.size(), std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(pop_size * pe))));
    std::vector<Individual> next(population.begin(), population.begin() + static_cast<std::ptrdiff_t>(elite_count));
    const std::size_t non_elite = population.size() - elite_count;
    while (next.size() < pop_size && !ctx.should_stop()) {
      const Individual& elite = population[rng.index(elite_count)];
      const Individual& other =
          non_elite > 0 ? population[elite_count + rng.index(non_elite)] : population[rng.index(population.size())];
      RandomKeys child = blend(elite.keys, other.keys, BlendParams{rho, mu, 1}, rng);
      const double f = ctx.evaluate(child);
      next.push_back({std::move(child), f});
    }
    population = std::move(next);
    sort_population(population);
    ++generation;

    const double best = ctx.best_fitness();
    if (best < previous_best) {
      const double r = reward_increment(previous_best, best, static_cast<double>(pop_size));
      for (ParamAgent* a : agents) a->table.add_reward(a->from, a->state, r);
      previous_best = best;
      stagnant = 0;
    } else {
      ++stagnant;
    }
    if (generation % params.q_update_every == 0) {
      const double lf = learning_factor(run.progress(generation));
      for (ParamAgent* a : agents) a->table.update_visited(lf, params.discount);
    }

    if (stagnant >= params.stagnation_generations && !ctx.should_stop()) {
      std::vector<RandomKeys> elites;
      for (std::size_t i = 0; i < elite_count; ++i) elites.push_back(population[i].keys);
      const double radius = params.cluster_radius_factor * std::sqrt(static_cast<double>(n));
      const auto leader_of = leader_clusters(elites, radius);
      for (std::size_t i = 0; i < elite_count && !ctx.should_stop(); ++i) {
        Individual& ind = population[i];
        if (leader_of[i] == i) {
          ind.fitness = rvnd(ind.keys, ind.fitness, ctx);
        } else {
          shake(ind.keys, params.community_shake, rng);
          ind.fitness = ctx.evaluate(ind.keys);
        }
      }
      sort_population(population);
      stagnant = 0;
      if (ctx.best_fitness() < previous_best) previous_best = ctx.best_fitness();
    }

    TraceRow row;
    row.population = pop_size;
    row.elite_fraction = pe;
    row.mutation = mu;
    row.elite_bias = rho;
    run.record(generation, row);
  }
  return run.finish(generation);
}

RunResult sa_run(const Instance& inst, const SaParams& params, const RunBudget& budget) {
  Run run(inst, budget);
  SearchContext& ctx = run.ctx();
  Rng& rng = ctx.rng();

  RandomKeys a = random_keys(run.n(), rng);
  double fa = ctx.evaluate(a);
  double temperature = params.initial_temperature;
  std::int64_t level = 0;
  while (!run.done(level)) {
    for (int iter = 0; iter < params.inner_iterations && !ctx.should_stop(); ++iter) {
      RandomKeys candidate = a;
      shake(candidate, params.shake, rng);
      const double f = ctx.evaluate(candidate);
      if (metropolis_accept(f - fa, temperature, rng)) {
        a = std::move(candidate);
        fa = f;
      }
    }
    temperature *= params.cooling;
    fa = rvnd(a, fa, ctx);
    ++level;
    run.record(level);
  }
  return run.finish(level);
}

RunResult ils_run(const Instance& inst, ShakeBounds bounds, const RunBudget& budget) {
  Run run(inst, budget);
  SearchContext& ctx = run.ctx();
  Rng& rng = ctx.rng();

  RandomKeys best = random_keys(run.n(), rng);
  double fbest = rvnd(best, ctx.evaluate(best), ctx);
  std::int64_t round = 0;
  while (!run.done(round)) {
    RandomKeys candidate = best;
    shake(candidate, bounds, rng);
    const double f = rvnd(candidate, ctx.evaluate(candidate), ctx);
    if (f < fbest) {
      best = std::move(candidate);
      fbest = f;
    }
    ++round;
    run.record(round);
  }
  return run.finish(round);
}

RunResult run_algorithm(Algorithm alg, const Instance& inst, const RunBudget& budget) {
  switch (alg) {
    case Algorithm::brkga_ql: return brkga_ql_run(inst, budget);
    case Algorithm::sa: return sa_run(inst, SaParams{}, budget);
    case Algorithm::ils: return ils_run(inst, kIlsShake, budget);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace iorsp
