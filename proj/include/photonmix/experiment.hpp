#ifndef PHOTONMIX_EXPERIMENT_HPP
#define PHOTONMIX_EXPERIMENT_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "photonmix/environment.hpp"
#include "photonmix/optics.hpp"
#include "photonmix/rng.hpp"
#include "photonmix/strategy.hpp"

namespace photonmix {

enum class StrategyKind { Mixed, EntangledOnly };

std::string to_string(StrategyKind kind);

struct RunConfig {
  MachinesSpec machines{0.6, 0.4};
  std::optional<std::int64_t> happy_period = 50;  // nullopt disables happy hours
  StrategyParams params{14, 2};
  StrategyKind strategy = StrategyKind::Mixed;
  std::int64_t steps = 1500;
  std::int64_t reps = 1000;
  std::uint64_t master_seed = 0;

  // Throws std::invalid_argument on steps/reps/period < 1.
  void validate() const;
};

struct StepRecord {
  std::int64_t t = 0;
  PhaseKind phase = PhaseKind::Explore;  // phase that chose this step's configuration
  JointChoice choices{};
  StepOutcome outcome{};
};

struct EpisodeResult {
  double total_reward = 0.0;
  std::array<double, 2> per_player{};
  std::optional<std::int64_t> happy_offset;
  std::vector<StepRecord> trace;  // empty unless requested
};

namespace detail {

// Outcome distributions of the three configurations a strategy ever selects,
// evaluated once instead of per step.
class ConfigTable {
 public:
  ConfigTable()
      : explore_(joint_distribution(waveplates_for_explore())),
        exploit_a_(joint_distribution(waveplates_for_exploit(MachineChoice::A))),
        exploit_b_(joint_distribution(waveplates_for_exploit(MachineChoice::B))) {}

  const JointChoiceDistribution& explore() const { return explore_; }

  const JointChoiceDistribution& for_state(const StrategyState& state) const {
    if (const auto* c = std::get_if<CheckPhase>(&state)) return exploit(c->machine);
    if (const auto* e = std::get_if<ExploitPhase>(&state)) return exploit(e->machine);
    return explore_;
  }

 private:
  const JointChoiceDistribution& exploit(MachineChoice m) const {
    return m == MachineChoice::A ? exploit_a_ : exploit_b_;
  }

  JointChoiceDistribution explore_, exploit_a_, exploit_b_;
};

}  // namespace detail

// Steps one episode. `hits(t, rng)` supplies the machines' hit pattern for
// step t, which lets tests script the environment. Per step the draw order is:
// joint choice, hits, then the strategy (tie-break only).
template <class HitSource>
EpisodeResult play_episode(const HappyHourSchedule& schedule, StrategyKind kind,
                           const StrategyParams& params, std::int64_t steps, RngStream& rng,
                           HitSource&& hits, bool record_trace = false) {
  static const detail::ConfigTable table;
  EpisodeResult result;
  if (schedule.enabled()) result.happy_offset = schedule.offset();
  if (record_trace) result.trace.reserve(static_cast<std::size_t>(steps));

  StrategyState state = init_strategy(params);
  HappyHourSchedule::Cursor clock(schedule, 1);
  for (std::int64_t t = 1; t <= steps; ++t, clock.advance()) {
    const bool mixed = kind == StrategyKind::Mixed;
    const JointChoiceDistribution& dist = mixed ? table.for_state(state) : table.explore();
    const JointChoice choices = sample_joint_choice(dist, rng);
    const MachineHits h = hits(t, rng);
    const StepOutcome outcome = resolve_rewards(clock.happy(), schedule.happy_machine(), choices, h);

    result.per_player[0] += outcome.reward_1;
    result.per_player[1] += outcome.reward_2;
    if (record_trace) {
      result.trace.push_back({t, mixed ? phase_kind(state) : PhaseKind::Explore, choices, outcome});
    }
    if (mixed) {
      state = observe_and_advance(state, params, {choices, {outcome.reward_1, outcome.reward_2}},
                                  rng);
    }
  }
  result.total_reward = result.per_player[0] + result.per_player[1];
  return result;
}

// Seeds a child stream from (master_seed, rep_index), draws the happy-hour
// offset from it, then plays config.steps steps.
EpisodeResult run_episode(const RunConfig& config, std::uint64_t rep_index,
                          bool record_trace = false);

struct MonteCarloSummary {
  double mean = 0.0;
  double std_error = 0.0;  // sample std / sqrt(reps); 0 when reps == 1
  std::int64_t reps = 0;
};

// `threads` == 0 uses the hardware concurrency. Results do not depend on it.
MonteCarloSummary monte_carlo_mean(const RunConfig& config, unsigned threads = 0);

struct IntRange {
  std::int64_t first = 1;
  std::int64_t last = 1;

  std::int64_t size() const { return last - first + 1; }
};

struct SweepRow {
  double param = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t reps = 0;
};

struct SweepResult {
  std::string param_name;
  std::vector<SweepRow> rows;  // ascending param
};

// si_range must lie within [1, 200].
SweepResult sweep_search_interval(const RunConfig& base, IntRange si_range, unsigned threads = 0);

// For each check span, the mean over `happy_periods` of the per-period means.
// An empty list uses base.happy_period. cp_range must lie within [1, 50].
SweepResult sweep_check_span(const RunConfig& base, IntRange cp_range,
                             const std::vector<std::int64_t>& happy_periods,
                             unsigned threads = 0);

struct NormalizedSweep {
  std::vector<double> params;
  std::vector<double> values;  // (R - R_min) / (R_max - R_min)
  bool flat = false;           // all means equal; values are all zero
};

// Throws std::invalid_argument for fewer than two rows.
NormalizedSweep normalize_rewards(const SweepResult& sweep);

inline double difficulty(const MachinesSpec& m) { return 1.0 - (m.p_a - m.p_b); }

struct DifficultyPoint {
  MachinesSpec machines;
  double difficulty = 0.0;
  std::int64_t optimal_si = 0;
  std::vector<double> search_intervals;
  std::vector<double> mean_normalized;  // normalized reward averaged over periods
  std::vector<SweepResult> sweeps;      // raw si sweep per period, in input order
};

// Optimal search interval per probability pair, from the normalized si sweeps
// averaged over `happy_periods`. Requires p_a >= p_b for every pair.
std::vector<DifficultyPoint> optimal_si_curve(const std::vector<MachinesSpec>& pairs,
                                              const std::vector<std::int64_t>& happy_periods,
                                              IntRange si_range, const RunConfig& base,
                                              unsigned threads = 0);

}  // namespace photonmix

#endif  // PHOTONMIX_EXPERIMENT_HPP
