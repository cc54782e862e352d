#include "boundlab/reward/reward.hpp"

#include <cmath>

#include "boundlab/errors.hpp"
#include "boundlab/sim/simulator.hpp"

namespace boundlab::reward {

void GaitSignalParams::validate() const {
  if (!(omega > 0.0)) throw ConfigError("gait: omega must be positive");
  if (per_foot_phase[0] != per_foot_phase[1] || per_foot_phase[2] != per_foot_phase[3])
    throw ConfigError("gait: feet of a pair must share a phase");
}

std::array<double, RewardBreakdown::kTerms> RewardBreakdown::terms() const {
  return {body_velocity,      joint_torque,      joint_velocity, gait,
          position_uniformity, torque_uniformity, smoothness,     pitch_limit};
}

const std::array<std::string, RewardBreakdown::kTerms>& RewardBreakdown::names() {
  static const std::array<std::string, kTerms> n{
      "body_velocity",       "joint_torque",      "joint_velocity", "gait",
      "position_uniformity", "torque_uniformity", "smoothness",     "pitch_limit"};
  return n;
}

double gait_wave(double x) {
  return std::sin(x) + std::sin(3.0 * x) / 3.0 + std::sin(5.0 * x) / 5.0;
}

double gait_signal(double t, const GaitSignalParams& params, int foot) {
  return gait_wave(params.omega * t + params.per_foot_phase[foot]);
}

namespace {

double pair_difference(const JointVector& v, Leg a, Leg b) {
  double sum = 0.0;
  for (auto j : {JointClass::HipRoll, JointClass::HipPitch, JointClass::Knee})
    sum += std::abs(v(joint_index(static_cast<int>(a), j)) - v(joint_index(static_cast<int>(b), j)));
  return sum;
}

}  // namespace

RewardBreakdown compute_reward(const sim::SimState& state, const JointVector& torques,
                               const JointVector& previous_torques, double t,
                               const RewardWeights& w, const GaitSignalParams& g) {
  RewardBreakdown r;
  r.body_velocity = w.body_velocity_k * (state.vx * state.vx);
  r.joint_torque = w.joint_torque_k * std::tanh(w.joint_torque_c * t) * torques.cwiseAbs().sum();
  const JointVector dq = state.joint_velocities();
  r.joint_velocity = w.joint_velocity_k * std::tanh(w.joint_velocity_c * t) * dq.cwiseAbs().sum();

  double gait = 0.0;
  for (int foot = 0; foot < kNumLegs; ++foot)
    gait += gait_signal(t, g, foot) * static_cast<double>(state.contact[foot]);
  r.gait = w.gait_k * gait;

  const JointVector q = state.joint_positions();
  r.position_uniformity = w.position_uniformity_k *
                          (pair_difference(q, Leg::LF, Leg::RF) + pair_difference(q, Leg::LH, Leg::RH));
  r.torque_uniformity =
      w.torque_uniformity_k *
      (pair_difference(torques, Leg::LF, Leg::RF) + pair_difference(torques, Leg::LH, Leg::RH));
  r.smoothness = w.smoothness_k * (torques - previous_torques).norm();

  const double excess = std::abs(state.pitch) - w.pitch_threshold;
  r.pitch_limit = excess > 0.0 ? -w.pitch_limit_k * excess : 0.0;

  r.total = 0.0;
  for (double term : r.terms()) r.total += term;
  return r;
}

void TerminationRule::validate() const {
  if (!(min_body_height > 0.0 && max_abs_pitch > 0.0 && max_episode_duration > 0.0))
    throw ConfigError("termination thresholds must be positive");
}

std::string to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::None: return "none";
    case TerminationReason::Height: return "height";
    case TerminationReason::Pitch: return "pitch";
    case TerminationReason::TorsoContact: return "torso_contact";
    case TerminationReason::Timeout: return "timeout";
  }
  return "unknown";
}

Termination check_termination(const sim::SimState& state, const TerminationRule& rule,
                              const sim::RobotModel& model, const sim::Terrain& terrain,
                              const sim::ContactParams& contact) {
  if (state.z - terrain.height_at(state.x) < rule.min_body_height)
    return {TerminationReason::Height};
  if (std::abs(state.pitch) > rule.max_abs_pitch) return {TerminationReason::Pitch};
  if (rule.torso_contact_fails && sim::torso_touches_terrain(state, model, terrain, contact))
    return {TerminationReason::TorsoContact};
  // Time accumulates in dt increments, so allow for rounding at the boundary.
  if (state.t >= rule.max_episode_duration - 1e-9) return {TerminationReason::Timeout};
  return {};
}

}  // namespace boundlab::reward
