#ifndef PHOTONMIX_ENVIRONMENT_HPP
#define PHOTONMIX_ENVIRONMENT_HPP

#include <cstdint>
#include <optional>

#include "photonmix/optics.hpp"
#include "photonmix/rng.hpp"

namespace photonmix {

// Hit probabilities of the two slot machines.
struct MachinesSpec {
  double p_a = 0.5;
  double p_b = 0.5;

  MachinesSpec() = default;
  MachinesSpec(double p_a, double p_b);

  // Machine with the larger hit probability; A on a tie.
  MachineChoice better() const { return p_b > p_a ? MachineChoice::B : MachineChoice::A; }
};

// Happy and non-happy hours alternate every `period` steps. A happy block
// starts at step `offset` and the pattern extends periodically in both
// directions. Steps are 1-indexed.
class HappyHourSchedule {
 public:
  static HappyHourSchedule disabled() { return HappyHourSchedule(); }
  // Requires period >= 1 and offset in [1, 2 * period].
  static HappyHourSchedule periodic(std::int64_t period, std::int64_t offset,
                                    MachineChoice happy_machine);
  // Offset drawn uniformly from [1, 2 * period].
  static HappyHourSchedule random_phase(std::int64_t period, MachineChoice happy_machine,
                                        RngStream& rng);

  bool enabled() const { return period_.has_value(); }
  std::optional<std::int64_t> period() const { return period_; }
  std::int64_t offset() const { return offset_; }
  MachineChoice happy_machine() const { return happy_machine_; }

  bool is_happy_hour(std::int64_t t) const;

  // Walks consecutive steps without a division per step.
  class Cursor {
   public:
    Cursor(const HappyHourSchedule& schedule, std::int64_t t);
    bool happy() const { return enabled_ && phase_ < period_; }
    void advance() {
      if (++phase_ == 2 * period_) phase_ = 0;
    }

   private:
    bool enabled_ = false;
    std::int64_t period_ = 1;
    std::int64_t phase_ = 0;
  };

 private:
  HappyHourSchedule() = default;

  std::optional<std::int64_t> period_;
  std::int64_t offset_ = 1;
  MachineChoice happy_machine_ = MachineChoice::A;
};

struct MachineHits {
  bool a = false;
  bool b = false;

  bool hit(MachineChoice m) const { return m == MachineChoice::A ? a : b; }
};

// Rewards are always exactly 0, 0.5 or 1.0 coins.
struct StepOutcome {
  double reward_1 = 0.0;
  double reward_2 = 0.0;
  bool hit_a = false;
  bool hit_b = false;
  bool happy_active = false;

  double total() const { return reward_1 + reward_2; }
};

// One shared Bernoulli draw per machine, A first then B.
MachineHits draw_hits(const MachinesSpec& machines, RngStream& rng);

// Payout rules for a given hit pattern. A conflicted win pays 0.5 each,
// except on the happy machine during its happy hour, where it pays 1.0 each.
StepOutcome resolve_rewards(const HappyHourSchedule& schedule, std::int64_t t, JointChoice choices,
                            MachineHits hits);

// Same rules with the happy-hour state already known.
StepOutcome resolve_rewards(bool happy_active, MachineChoice happy_machine, JointChoice choices,
                            MachineHits hits);

StepOutcome dispense(const MachinesSpec& machines, const HappyHourSchedule& schedule,
                     std::int64_t t, JointChoice choices, RngStream& rng);

}  // namespace photonmix

#endif  // PHOTONMIX_ENVIRONMENT_HPP
