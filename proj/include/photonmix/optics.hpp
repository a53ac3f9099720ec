#ifndef PHOTONMIX_OPTICS_HPP
#define PHOTONMIX_OPTICS_HPP

#include <numbers>
#include <string>
#include <utility>
#include <variant>

#include "photonmix/rng.hpp"

namespace photonmix {

// Linear polarization or wave-plate angle in radians. No range reduction is
// applied; every formula downstream is periodic in pi.
class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double radians);
  static Angle degrees(double deg) { return Angle(deg * std::numbers::pi / 180.0); }

  double radians() const { return radians_; }

  friend bool operator==(Angle, Angle) = default;

 private:
  double radians_ = 0.0;
};

struct WaveplateSetting {
  Angle hw1;  // Player 1 (signal photon)
  Angle hw2;  // Player 2 (idler photon)

  friend bool operator==(const WaveplateSetting&, const WaveplateSetting&) = default;
};

// Polarization-orthogonal product pair: signal at theta1, idler at theta1 + pi/2.
struct CorrelatedPair {
  Angle theta1;

  friend bool operator==(const CorrelatedPair&, const CorrelatedPair&) = default;
};

// Maximally entangled singlet pair. Only its outcome statistics are modelled.
struct EntangledSinglet {
  friend bool operator==(const EntangledSinglet&, const EntangledSinglet&) = default;
};

using SourceMode = std::variant<CorrelatedPair, EntangledSinglet>;

struct PhotonConfig {
  SourceMode source;
  WaveplateSetting waveplates;

  friend bool operator==(const PhotonConfig&, const PhotonConfig&) = default;
};

// Horizontal detection selects machine A, vertical selects machine B.
enum class MachineChoice { A, B };

inline MachineChoice other(MachineChoice m) {
  return m == MachineChoice::A ? MachineChoice::B : MachineChoice::A;
}

inline char to_char(MachineChoice m) { return m == MachineChoice::A ? 'A' : 'B'; }

struct JointChoice {
  MachineChoice player1;
  MachineChoice player2;

  bool conflict() const { return player1 == player2; }

  friend bool operator==(const JointChoice&, const JointChoice&) = default;
};

// Probabilities of the four joint decisions, ordered (A,A), (A,B), (B,A), (B,B)
// with Player 1 first.
struct JointChoiceDistribution {
  double p_aa = 0.0;
  double p_ab = 0.0;
  double p_ba = 0.0;
  double p_bb = 0.0;

  double total() const { return p_aa + p_ab + p_ba + p_bb; }
  double conflict_probability() const { return p_aa + p_bb; }
  double probability(JointChoice c) const;
};

// HW: |theta> -> |2 theta_hw - theta>.
Angle half_waveplate_transform(Angle theta_hw, Angle theta);

// PBS detection probabilities (horizontal, vertical) = (cos^2, sin^2).
std::pair<double, double> pbs_probabilities(Angle theta);

JointChoiceDistribution correlated_joint_distribution(const CorrelatedPair& pair,
                                                      const WaveplateSetting& wp);

// Depends only on hw1 - hw2. Equal plates give zero conflict mass.
JointChoiceDistribution entangled_joint_distribution(const WaveplateSetting& wp);

JointChoiceDistribution joint_distribution(const SourceMode& mode, const WaveplateSetting& wp);

inline JointChoiceDistribution joint_distribution(const PhotonConfig& config) {
  return joint_distribution(config.source, config.waveplates);
}

// Inverse CDF over the fixed outcome order; consumes exactly one draw.
JointChoice sample_joint_choice(const JointChoiceDistribution& dist, RngStream& rng);

// Correlated pair (theta1 = 0) with plates set so both players pick `m`.
PhotonConfig waveplates_for_exploit(MachineChoice m);

// Singlet with equal plates: the players always split across machines.
PhotonConfig waveplates_for_explore();

std::string describe(const PhotonConfig& config);

}  // namespace photonmix

#endif  // PHOTONMIX_OPTICS_HPP
