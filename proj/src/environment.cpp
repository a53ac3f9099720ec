#include "photonmix/environment.hpp"

#include <stdexcept>

namespace photonmix {

MachinesSpec::MachinesSpec(double p_a, double p_b) : p_a(p_a), p_b(p_b) {
  if (!(p_a >= 0.0 && p_a <= 1.0) || !(p_b >= 0.0 && p_b <= 1.0)) {
    throw std::invalid_argument("reward probabilities must lie in [0, 1]");
  }
}

HappyHourSchedule HappyHourSchedule::periodic(std::int64_t period, std::int64_t offset,
                                              MachineChoice happy_machine) {
  if (period < 1) throw std::invalid_argument("happy-hour period must be >= 1");
  if (offset < 1 || offset > 2 * period) {
    throw std::invalid_argument("happy-hour offset must lie in [1, 2 * period]");
  }
  HappyHourSchedule s;
  s.period_ = period;
  s.offset_ = offset;
  s.happy_machine_ = happy_machine;
  return s;
}

HappyHourSchedule HappyHourSchedule::random_phase(std::int64_t period,
                                                  MachineChoice happy_machine, RngStream& rng) {
  if (period < 1) throw std::invalid_argument("happy-hour period must be >= 1");
  const auto offset = static_cast<std::int64_t>(rng.uniform_int(1, 2 * static_cast<std::uint64_t>(period)));
  return periodic(period, offset, happy_machine);
}

bool HappyHourSchedule::is_happy_hour(std::int64_t t) const {
  if (!period_) return false;
  const std::int64_t cycle = 2 * *period_;
  std::int64_t phase = (t - offset_) % cycle;
  if (phase < 0) phase += cycle;
  return phase < *period_;
}

HappyHourSchedule::Cursor::Cursor(const HappyHourSchedule& schedule, std::int64_t t)
    : enabled_(schedule.enabled()), period_(schedule.period_.value_or(1)) {
  if (!enabled_) return;
  const std::int64_t cycle = 2 * period_;
  phase_ = (t - schedule.offset_) % cycle;
  if (phase_ < 0) phase_ += cycle;
}

MachineHits draw_hits(const MachinesSpec& machines, RngStream& rng) {
  MachineHits hits;
  hits.a = rng.bernoulli(machines.p_a);
  hits.b = rng.bernoulli(machines.p_b);
  return hits;
}

StepOutcome resolve_rewards(const HappyHourSchedule& schedule, std::int64_t t, JointChoice choices,
                            MachineHits hits) {
  return resolve_rewards(schedule.is_happy_hour(t), schedule.happy_machine(), choices, hits);
}

StepOutcome resolve_rewards(bool happy_active, MachineChoice happy_machine, JointChoice choices,
                            MachineHits hits) {
  StepOutcome out;
  out.hit_a = hits.a;
  out.hit_b = hits.b;
  out.happy_active = happy_active;
  if (!choices.conflict()) {
    out.reward_1 = hits.hit(choices.player1) ? 1.0 : 0.0;
    out.reward_2 = hits.hit(choices.player2) ? 1.0 : 0.0;
    return out;
  }
  const MachineChoice m = choices.player1;
  if (hits.hit(m)) {
    const double each = (happy_active && m == happy_machine) ? 1.0 : 0.5;
    out.reward_1 = each;
    out.reward_2 = each;
  }
  return out;
}

StepOutcome dispense(const MachinesSpec& machines, const HappyHourSchedule& schedule,
                     std::int64_t t, JointChoice choices, RngStream& rng) {
  return resolve_rewards(schedule, t, choices, draw_hits(machines, rng));
}

}  // namespace photonmix
