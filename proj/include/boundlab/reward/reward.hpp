#pragma once

#include <array>
#include <string>

#include "boundlab/common.hpp"
#include "boundlab/sim/robot_model.hpp"
#include "boundlab/sim/state.hpp"
#include "boundlab/sim/terrain.hpp"

namespace boundlab::reward {

struct RewardWeights {
  double body_velocity_k = 160.0;
  double joint_torque_k = -0.002;
  double joint_torque_c = 0.04;
  double joint_velocity_k = -0.0003;
  double joint_velocity_c = 0.02;
  double gait_k = -50.0;
  double position_uniformity_k = -0.01;
  double torque_uniformity_k = -0.001;
  double smoothness_k = -1e-6;
  double pitch_limit_k = 20.0;
  double pitch_threshold = 0.3;  // rad
};

struct GaitSignalParams {
  double omega = 2.0 * kPi * 3.0;  // rad/s
  std::array<double, kNumLegs> per_foot_phase{0.0, 0.0, kPi, kPi};

  void validate() const;
};

struct RewardBreakdown {
  static constexpr int kTerms = 8;

  double body_velocity = 0.0;
  double joint_torque = 0.0;
  double joint_velocity = 0.0;
  double gait = 0.0;
  double position_uniformity = 0.0;
  double torque_uniformity = 0.0;
  double smoothness = 0.0;
  double pitch_limit = 0.0;
  double total = 0.0;

  std::array<double, kTerms> terms() const;
  static const std::array<std::string, kTerms>& names();
};

// sin x + sin 3x / 3 + sin 5x / 5.
double gait_wave(double x);

// S_i(t) with x = omega t + per_foot_phase[foot].
double gait_signal(double t, const GaitSignalParams& params, int foot);

// Every term is evaluated on `state` (the state after the control step);
// `torques` is the torque applied over that step and `previous_torques` the one
// before it. t is seconds since the episode started.
RewardBreakdown compute_reward(const sim::SimState& state, const JointVector& torques,
                               const JointVector& previous_torques, double t,
                               const RewardWeights& w, const GaitSignalParams& g);

struct TerminationRule {
  double min_body_height = 0.15;  // m above the terrain under the torso
  double max_abs_pitch = 1.0;     // rad
  bool torso_contact_fails = true;
  double max_episode_duration = 8.0;  // s

  void validate() const;
};

enum class TerminationReason { None, Height, Pitch, TorsoContact, Timeout };

std::string to_string(TerminationReason reason);

struct Termination {
  TerminationReason reason = TerminationReason::None;

  bool terminated() const { return reason != TerminationReason::None; }
  // Falls end the episode; a timeout only truncates it.
  bool failed() const { return terminated() && reason != TerminationReason::Timeout; }
};

// Failure checks come before the timeout, so a fall on the final step counts
// as a fall.
Termination check_termination(const sim::SimState& state, const TerminationRule& rule,
                              const sim::RobotModel& model, const sim::Terrain& terrain,
                              const sim::ContactParams& contact);

}  // namespace boundlab::reward
