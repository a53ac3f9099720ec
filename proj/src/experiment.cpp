#include "photonmix/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace photonmix {

namespace {

unsigned resolve_threads(unsigned requested, std::int64_t work) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::int64_t>(n, std::max<std::int64_t>(work, 1)));
}

// Runs fn(i) for i in [0, n) over contiguous chunks.
template <class Fn>
void parallel_for(std::int64_t n, unsigned threads, Fn&& fn) {
  const unsigned workers = resolve_threads(threads, n);
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::int64_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      for (std::int64_t i = begin; i < end; ++i) fn(i);
    });
  }
}

void check_range(IntRange r, std::int64_t lo, std::int64_t hi, const char* what) {
  if (r.first > r.last || r.first < lo || r.last > hi) {
    throw std::invalid_argument(std::string(what) + " range must satisfy " + std::to_string(lo) +
                                " <= first <= last <= " + std::to_string(hi));
  }
}

}  // namespace

std::string to_string(StrategyKind kind) {
  return kind == StrategyKind::Mixed ? "mixed" : "entangled-only";
}

void RunConfig::validate() const {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
  if (happy_period && *happy_period < 1) throw std::invalid_argument("happy period must be >= 1");
}

EpisodeResult run_episode(const RunConfig& config, std::uint64_t rep_index, bool record_trace) {
  RngStream rng(child_seed(config.master_seed, rep_index));
  const HappyHourSchedule schedule =
      config.happy_period
          ? HappyHourSchedule::random_phase(*config.happy_period, config.machines.better(), rng)
          : HappyHourSchedule::disabled();
  const MachinesSpec machines = config.machines;
  return play_episode(
      schedule, config.strategy, config.params, config.steps, rng,
      [&machines](std::int64_t, RngStream& r) { return draw_hits(machines, r); }, record_trace);
}

MonteCarloSummary monte_carlo_mean(const RunConfig& config, unsigned threads) {
  config.validate();
  std::vector<double> totals(static_cast<std::size_t>(config.reps));
  parallel_for(config.reps, threads, [&](std::int64_t i) {
    totals[static_cast<std::size_t>(i)] =
        run_episode(config, static_cast<std::uint64_t>(i)).total_reward;
  });

  // Totals are multiples of 0.5 far below 2^52, so these sums are exact.
  double sum = 0.0;
  for (double v : totals) sum += v;
  const double n = static_cast<double>(config.reps);
  MonteCarloSummary s;
  s.reps = config.reps;
  s.mean = sum / n;
  if (config.reps > 1) {
    double ss = 0.0;
    for (double v : totals) ss += (v - s.mean) * (v - s.mean);
    s.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return s;
}

SweepResult sweep_search_interval(const RunConfig& base, IntRange si_range, unsigned threads) {
  check_range(si_range, 1, 200, "search interval");
  SweepResult out;
  out.param_name = "search_interval";
  for (std::int64_t si = si_range.first; si <= si_range.last; ++si) {
    RunConfig cfg = base;
    cfg.params = StrategyParams(si, base.params.check_span);
    const auto mc = monte_carlo_mean(cfg, threads);
    out.rows.push_back({static_cast<double>(si), mc.mean, mc.std_error, mc.reps});
  }
  return out;
}

SweepResult sweep_check_span(const RunConfig& base, IntRange cp_range,
                             const std::vector<std::int64_t>& happy_periods, unsigned threads) {
  check_range(cp_range, 1, 50, "check span");
  std::vector<std::optional<std::int64_t>> periods(happy_periods.begin(), happy_periods.end());
  if (periods.empty()) periods.push_back(base.happy_period);

  SweepResult out;
  out.param_name = "check_span";
  const double k = static_cast<double>(periods.size());
  for (std::int64_t cp = cp_range.first; cp <= cp_range.last; ++cp) {
    double mean_sum = 0.0, var_sum = 0.0;
    std::int64_t reps = 0;
    for (const auto& period : periods) {
      RunConfig cfg = base;
      cfg.params = StrategyParams(base.params.search_interval, cp);
      cfg.happy_period = period;
      const auto mc = monte_carlo_mean(cfg, threads);
      mean_sum += mc.mean;
      var_sum += mc.std_error * mc.std_error;
      reps += mc.reps;
    }
    out.rows.push_back({static_cast<double>(cp), mean_sum / k, std::sqrt(var_sum) / k, reps});
  }
  return out;
}

NormalizedSweep normalize_rewards(const SweepResult& sweep) {
  if (sweep.rows.size() < 2) throw std::invalid_argument("normalization needs at least two rows");
  NormalizedSweep out;
  double lo = sweep.rows.front().mean, hi = lo;
  for (const auto& row : sweep.rows) {
    lo = std::min(lo, row.mean);
    hi = std::max(hi, row.mean);
  }
  out.flat = !(hi > lo);
  for (const auto& row : sweep.rows) {
    out.params.push_back(row.param);
    out.values.push_back(out.flat ? 0.0 : (row.mean - lo) / (hi - lo));
  }
  return out;
}

std::vector<DifficultyPoint> optimal_si_curve(const std::vector<MachinesSpec>& pairs,
                                              const std::vector<std::int64_t>& happy_periods,
                                              IntRange si_range, const RunConfig& base,
                                              unsigned threads) {
  std::vector<std::optional<std::int64_t>> periods(happy_periods.begin(), happy_periods.end());
  if (periods.empty()) periods.push_back(base.happy_period);

  std::vector<DifficultyPoint> out;
  for (const auto& machines : pairs) {
    if (machines.p_a < machines.p_b) throw std::invalid_argument("optimal_si_curve needs p_a >= p_b");
    DifficultyPoint point;
    point.machines = machines;
    point.difficulty = difficulty(machines);
    point.mean_normalized.assign(static_cast<std::size_t>(si_range.size()), 0.0);
    for (const auto& period : periods) {
      RunConfig cfg = base;
      cfg.machines = machines;
      cfg.happy_period = period;
      point.sweeps.push_back(sweep_search_interval(cfg, si_range, threads));
      const NormalizedSweep norm = normalize_rewards(point.sweeps.back());
      point.search_intervals = norm.params;
      for (std::size_t i = 0; i < norm.values.size(); ++i) point.mean_normalized[i] += norm.values[i];
    }
    for (double& v : point.mean_normalized) v /= static_cast<double>(periods.size());
    const auto best = std::max_element(point.mean_normalized.begin(), point.mean_normalized.end());
    point.optimal_si = si_range.first + (best - point.mean_normalized.begin());
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace photonmix
