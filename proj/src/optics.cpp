#include "photonmix/optics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace photonmix {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double cos2(double x) {
  const double c = std::cos(x);
  return c * c;
}

double sin2(double x) {
  const double s = std::sin(x);
  return s * s;
}

}  // namespace

Angle::Angle(double radians) : radians_(radians) {
  if (!std::isfinite(radians)) throw std::invalid_argument("angle must be finite");
}

double JointChoiceDistribution::probability(JointChoice c) const {
  using enum MachineChoice;
  if (c.player1 == A) return c.player2 == A ? p_aa : p_ab;
  return c.player2 == A ? p_ba : p_bb;
}

Angle half_waveplate_transform(Angle theta_hw, Angle theta) {
  return Angle(2.0 * theta_hw.radians() - theta.radians());
}

std::pair<double, double> pbs_probabilities(Angle theta) {
  return {cos2(theta.radians()), sin2(theta.radians())};
}

JointChoiceDistribution correlated_joint_distribution(const CorrelatedPair& pair,
                                                      const WaveplateSetting& wp) {
  // Product state: each photon passes its own plate and splitter independently.
  const double x1 = 2.0 * wp.hw1.radians() - pair.theta1.radians();
  const double x2 = 2.0 * wp.hw2.radians() - pair.theta1.radians() - kHalfPi;
  const double h1 = cos2(x1), v1 = sin2(x1);
  const double h2 = cos2(x2), v2 = sin2(x2);
  return {h1 * h2, h1 * v2, v1 * h2, v1 * v2};
}

JointChoiceDistribution entangled_joint_distribution(const WaveplateSetting& wp) {
  const double delta = 2.0 * (wp.hw1.radians() - wp.hw2.radians());
  const double same = 0.5 * sin2(delta);
  const double split = 0.5 * cos2(delta);
  return {same, split, split, same};
}

JointChoiceDistribution joint_distribution(const SourceMode& mode, const WaveplateSetting& wp) {
  if (const auto* pair = std::get_if<CorrelatedPair>(&mode)) {
    return correlated_joint_distribution(*pair, wp);
  }
  return entangled_joint_distribution(wp);
}

JointChoice sample_joint_choice(const JointChoiceDistribution& dist, RngStream& rng) {
  using enum MachineChoice;
  const double u = rng.uniform();
  double cdf = dist.p_aa;
  if (u <= cdf) return {A, A};
  cdf += dist.p_ab;
  if (u <= cdf) return {A, B};
  cdf += dist.p_ba;
  if (u <= cdf) return {B, A};
  return {B, B};
}

PhotonConfig waveplates_for_exploit(MachineChoice m) {
  // With theta1 = 0 the plate angle enters as 2*theta_hw, so the plates have
  // period pi/2: pi/4 is the setting that flips a photon to the other port.
  constexpr double kQuarterPi = std::numbers::pi / 4.0;
  if (m == MachineChoice::A) {
    return {CorrelatedPair{Angle(0.0)}, {Angle(0.0), Angle(kQuarterPi)}};
  }
  return {CorrelatedPair{Angle(0.0)}, {Angle(kQuarterPi), Angle(0.0)}};
}

PhotonConfig waveplates_for_explore() {
  return {EntangledSinglet{}, {Angle(0.0), Angle(0.0)}};
}

std::string describe(const PhotonConfig& config) {
  std::ostringstream os;
  if (const auto* pair = std::get_if<CorrelatedPair>(&config.source)) {
    os << "correlated(theta1=" << pair->theta1.radians() << ")";
  } else {
    os << "entangled-singlet";
  }
  os << " hw=(" << config.waveplates.hw1.radians() << ", " << config.waveplates.hw2.radians()
     << ")";
  return os.str();
}

}  // namespace photonmix
