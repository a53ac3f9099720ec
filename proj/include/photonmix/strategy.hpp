#ifndef PHOTONMIX_STRATEGY_HPP
#define PHOTONMIX_STRATEGY_HPP

#include <array>
#include <cstdint>
#include <string_view>
#include <variant>

#include "photonmix/optics.hpp"
#include "photonmix/rng.hpp"

namespace photonmix {

struct StrategyParams {
  std::int64_t search_interval = 14;  // entangled steps per exploration phase
  std::int64_t check_span = 2;        // max correlated probe steps

  StrategyParams() = default;
  StrategyParams(std::int64_t search_interval, std::int64_t check_span);
};

// Entangled play; counts wins of each machine within the current phase.
struct ExplorePhase {
  std::int64_t steps_done = 0;
  std::int64_t wins_a = 0;
  std::int64_t wins_b = 0;

  friend bool operator==(const ExplorePhase&, const ExplorePhase&) = default;
};

// Intentional conflict on `machine` to probe for a happy hour. A unity reward
// confirms it at once; otherwise the probe lasts check_span steps.
struct CheckPhase {
  MachineChoice machine = MachineChoice::A;
  std::int64_t steps_done = 0;

  friend bool operator==(const CheckPhase&, const CheckPhase&) = default;
};

// Both players stay on `machine` until a half-reward win shows the happy hour is over.
struct ExploitPhase {
  MachineChoice machine = MachineChoice::A;

  friend bool operator==(const ExploitPhase&, const ExploitPhase&) = default;
};

using StrategyState = std::variant<ExplorePhase, CheckPhase, ExploitPhase>;

enum class PhaseKind { Explore, Check, Exploit };

PhaseKind phase_kind(const StrategyState& state);
std::string_view to_string(PhaseKind kind);

// What the shared controller sees after a step: both choices and both rewards.
struct Observation {
  JointChoice choices;
  std::array<double, 2> rewards{};
};

StrategyState init_strategy(const StrategyParams& params);

PhotonConfig next_photon_config(const StrategyState& state);

// Strict majority of wins; a uniform coin flip on a tie (one draw, tie only).
MachineChoice estimate_best_machine(std::int64_t wins_a, std::int64_t wins_b, RngStream& rng);

// Throws std::invalid_argument if `obs` cannot have come from playing
// next_photon_config(state).
StrategyState observe_and_advance(const StrategyState& state, const StrategyParams& params,
                                  const Observation& obs, RngStream& rng);

// Baseline: always the entangled exploration setting.
PhotonConfig entangled_only_config();

}  // namespace photonmix

#endif  // PHOTONMIX_STRATEGY_HPP
