#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "photonmix/environment.hpp"

using namespace photonmix;
using enum MachineChoice;

namespace {

// Table oracle: walk forward from a start far before step 1 that is aligned
// with the offset, toggling every `period` steps.
std::vector<bool> happy_table(std::int64_t period, std::int64_t offset, std::int64_t steps) {
  std::int64_t start = offset;
  while (start > -10 * period) start -= 2 * period;
  std::vector<bool> table;
  bool happy = true;
  std::int64_t left = period;
  for (std::int64_t t = start; t <= steps; ++t) {
    if (t >= 1) table.push_back(happy);
    if (--left == 0) {
      happy = !happy;
      left = period;
    }
  }
  return table;  // table[t - 1]
}

const auto kNoHappy = HappyHourSchedule::disabled();

}  // namespace

TEST_CASE("machines validate probabilities") {
  CHECK_THROWS_AS(MachinesSpec(1.5, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(MachinesSpec(0.5, -0.1), std::invalid_argument);
  CHECK(MachinesSpec(0.6, 0.4).better() == A);
  CHECK(MachinesSpec(0.3, 0.7).better() == B);
  CHECK(MachinesSpec(0.5, 0.5).better() == A);
}

TEST_CASE("happy-hour schedule") {
  SUBCASE("examples") {
    const auto s = HappyHourSchedule::periodic(50, 1, A);
    CHECK(s.is_happy_hour(1));
    CHECK_FALSE(s.is_happy_hour(51));
    CHECK(s.is_happy_hour(101));
    const auto late = HappyHourSchedule::periodic(50, 100, A);
    CHECK_FALSE(late.is_happy_hour(99));
    CHECK(late.is_happy_hour(100));
  }
  SUBCASE("disabled") {
    for (std::int64_t t = 1; t < 500; ++t) CHECK_FALSE(kNoHappy.is_happy_hour(t));
  }
  SUBCASE("bad parameters") {
    CHECK_THROWS_AS(HappyHourSchedule::periodic(0, 1, A), std::invalid_argument);
    CHECK_THROWS_AS(HappyHourSchedule::periodic(10, 0, A), std::invalid_argument);
    CHECK_THROWS_AS(HappyHourSchedule::periodic(10, 21, A), std::invalid_argument);
  }
  SUBCASE("matches the table oracle and the cursor") {
    for (std::int64_t period : {1, 2, 7, 10, 50}) {
      for (std::int64_t offset = 1; offset <= 2 * period; ++offset) {
        const auto s = HappyHourSchedule::periodic(period, offset, A);
        const auto table = happy_table(period, offset, 4 * period + 3);
        HappyHourSchedule::Cursor cursor(s, 1);
        for (std::int64_t t = 1; t <= 4 * period + 3; ++t, cursor.advance()) {
          REQUIRE(s.is_happy_hour(t) == table[t - 1]);
          REQUIRE(cursor.happy() == table[t - 1]);
        }
      }
    }
  }
  SUBCASE("duty cycle is exactly one half over whole cycles") {
    for (std::int64_t period : {3, 10, 50}) {
      for (std::int64_t offset : {std::int64_t{1}, period, 2 * period}) {
        const auto s = HappyHourSchedule::periodic(period, offset, A);
        for (std::int64_t k = 1; k <= 4; ++k) {
          std::int64_t happy = 0;
          for (std::int64_t t = 1; t <= 2 * k * period; ++t) happy += s.is_happy_hour(t);
          CHECK(happy == k * period);
        }
      }
    }
  }
  SUBCASE("random phase stays in range") {
    RngStream rng(4);
    std::vector<int> seen(21, 0);
    for (int i = 0; i < 5000; ++i) {
      const auto s = HappyHourSchedule::random_phase(10, A, rng);
      REQUIRE(s.offset() >= 1);
      REQUIRE(s.offset() <= 20);
      ++seen[s.offset()];
    }
    for (int k = 1; k <= 20; ++k) CHECK(seen[k] > 0);
  }
}

TEST_CASE("reward rules") {
  const auto happy_a = HappyHourSchedule::periodic(10, 1, A);  // t = 1..10 happy
  const MachineHits a_only{true, false};
  const MachineHits b_only{false, true};

  auto rewards = [](const StepOutcome& o) { return std::pair{o.reward_1, o.reward_2}; };

  CHECK(rewards(resolve_rewards(happy_a, 15, {A, A}, a_only)) == std::pair{0.5, 0.5});
  CHECK(rewards(resolve_rewards(happy_a, 5, {A, A}, a_only)) == std::pair{1.0, 1.0});
  CHECK(rewards(resolve_rewards(happy_a, 5, {A, B}, a_only)) == std::pair{1.0, 0.0});
  CHECK(rewards(resolve_rewards(happy_a, 5, {B, A}, a_only)) == std::pair{0.0, 1.0});
  // The happy hour never applies to the other machine.
  CHECK(rewards(resolve_rewards(happy_a, 5, {B, B}, b_only)) == std::pair{0.5, 0.5});
  CHECK(rewards(resolve_rewards(happy_a, 5, {B, B}, a_only)) == std::pair{0.0, 0.0});
  CHECK(rewards(resolve_rewards(happy_a, 5, {A, A}, b_only)) == std::pair{0.0, 0.0});

  // A non-conflicted win pays 1 whether or not the happy hour is on.
  CHECK(rewards(resolve_rewards(happy_a, 5, {A, B}, {true, true})) ==
        rewards(resolve_rewards(happy_a, 15, {A, B}, {true, true})));
  CHECK(resolve_rewards(happy_a, 5, {A, B}, a_only).happy_active);
  CHECK_FALSE(resolve_rewards(happy_a, 15, {A, B}, a_only).happy_active);
}

TEST_CASE("dispense properties") {
  const MachinesSpec machines(0.6, 0.4);
  const auto schedule = HappyHourSchedule::periodic(7, 3, A);
  RngStream rng(77);
  constexpr int n = 100000;
  int hits_a = 0, hits_b = 0;
  for (int t = 1; t <= n; ++t) {
    const JointChoice choice{rng.uniform() < 0.5 ? A : B, rng.uniform() < 0.5 ? A : B};
    const auto o = dispense(machines, schedule, t, choice, rng);
    hits_a += o.hit_a;
    hits_b += o.hit_b;
    for (auto [r, m] : {std::pair{o.reward_1, choice.player1}, std::pair{o.reward_2, choice.player2}}) {
      REQUIRE((r == 0.0 || r == 0.5 || r == 1.0));
      if (r != 0.0) REQUIRE((m == A ? o.hit_a : o.hit_b));
      if (r == 0.5) REQUIRE(choice.conflict());
      if (r == 0.5) REQUIRE_FALSE((o.happy_active && m == A));
      if (r == 1.0 && choice.conflict()) REQUIRE((o.happy_active && m == A));
    }
  }
  CHECK(std::abs(hits_a / double(n) - 0.6) <= 4 * std::sqrt(0.24 / n));
  CHECK(std::abs(hits_b / double(n) - 0.4) <= 4 * std::sqrt(0.24 / n));
}

TEST_CASE("dispense always consumes two draws") {
  const MachinesSpec machines(0.3, 0.9);
  RngStream a(8), b(8);
  dispense(machines, kNoHappy, 1, {A, A}, a);
  dispense(machines, kNoHappy, 2, {B, A}, a);
  for (int i = 0; i < 4; ++i) b.uniform();
  CHECK(a.uniform() == b.uniform());
}

TEST_CASE("degenerate hit probabilities") {
  RngStream rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto h = draw_hits(MachinesSpec(1.0, 0.0), rng);
    REQUIRE(h.a);
    REQUIRE_FALSE(h.b);
  }
}
