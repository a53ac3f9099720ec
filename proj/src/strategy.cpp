#include "photonmix/strategy.hpp"

#include <stdexcept>
#include <string>

namespace photonmix {

namespace {

bool on_support(double r) { return r == 0.0 || r == 0.5 || r == 1.0; }

[[noreturn, gnu::cold]] void reject(const char* what) {
  throw std::invalid_argument(std::string("inconsistent observation: ") + what);
}

inline void require(bool ok, const char* what) {
  if (!ok) [[unlikely]] reject(what);
}

// Shared validation for the correlated phases: both players must be on `m`,
// and a single shared payout means both rewards agree.
void check_conflicted_on(const Observation& obs, MachineChoice m) {
  require(obs.choices.player1 == m && obs.choices.player2 == m,
          "correlated play must put both players on the target machine");
  require(obs.rewards[0] == obs.rewards[1], "conflicted players must share the payout");
}

}  // namespace

StrategyParams::StrategyParams(std::int64_t search_interval, std::int64_t check_span)
    : search_interval(search_interval), check_span(check_span) {
  if (search_interval < 1) throw std::invalid_argument("search interval must be >= 1");
  if (check_span < 1) throw std::invalid_argument("check span must be >= 1");
}

PhaseKind phase_kind(const StrategyState& state) {
  return static_cast<PhaseKind>(state.index());
}

std::string_view to_string(PhaseKind kind) {
  switch (kind) {
    case PhaseKind::Explore: return "explore";
    case PhaseKind::Check: return "check";
    case PhaseKind::Exploit: return "exploit";
  }
  return "?";
}

StrategyState init_strategy(const StrategyParams&) { return ExplorePhase{}; }

PhotonConfig next_photon_config(const StrategyState& state) {
  if (const auto* check = std::get_if<CheckPhase>(&state)) return waveplates_for_exploit(check->machine);
  if (const auto* exploit = std::get_if<ExploitPhase>(&state)) {
    return waveplates_for_exploit(exploit->machine);
  }
  return waveplates_for_explore();
}

MachineChoice estimate_best_machine(std::int64_t wins_a, std::int64_t wins_b, RngStream& rng) {
  if (wins_a > wins_b) return MachineChoice::A;
  if (wins_b > wins_a) return MachineChoice::B;
  return rng.uniform() <= 0.5 ? MachineChoice::A : MachineChoice::B;
}

StrategyState observe_and_advance(const StrategyState& state, const StrategyParams& params,
                                  const Observation& obs, RngStream& rng) {
  require(on_support(obs.rewards[0]) && on_support(obs.rewards[1]),
          "rewards must be 0, 0.5 or 1");

  if (const auto* explore = std::get_if<ExplorePhase>(&state)) {
    require(!obs.choices.conflict(), "exploration never conflicts");
    require(obs.rewards[0] != 0.5 && obs.rewards[1] != 0.5, "half rewards need a conflict");
    ExplorePhase next = *explore;
    ++next.steps_done;
    const MachineChoice picks[2] = {obs.choices.player1, obs.choices.player2};
    for (int i = 0; i < 2; ++i) {
      if (obs.rewards[i] == 1.0) {
        if (picks[i] == MachineChoice::A) ++next.wins_a;
        else ++next.wins_b;
      }
    }
    if (next.steps_done >= params.search_interval) {
      return CheckPhase{estimate_best_machine(next.wins_a, next.wins_b, rng), 0};
    }
    return next;
  }

  if (const auto* check = std::get_if<CheckPhase>(&state)) {
    check_conflicted_on(obs, check->machine);
    if (obs.rewards[0] == 1.0) return ExploitPhase{check->machine};
    // Half wins and losses both mean "not confirmed"; the probe still runs
    // its full span.
    CheckPhase next = *check;
    ++next.steps_done;
    if (next.steps_done >= params.check_span) return ExplorePhase{};
    return next;
  }

  const auto& exploit = std::get<ExploitPhase>(state);
  check_conflicted_on(obs, exploit.machine);
  if (obs.rewards[0] == 0.5) return ExplorePhase{};
  return exploit;
}

PhotonConfig entangled_only_config() { return waveplates_for_explore(); }

}  // namespace photonmix
