#include "boundlab/control/pd.hpp"

#include <algorithm>

#include "boundlab/errors.hpp"
#include "boundlab/sim/kinematics.hpp"
#include "boundlab/sim/simulator.hpp"

namespace boundlab::control {

GainSet GainSet::uniform(double kp, double kd) {
  GainSet g;
  g.kp.setConstant(kp);
  g.kd.setConstant(kd);
  return g;
}

void GainSet::validate() const {
  if (!((kp.array() > 0.0).all() && kp.allFinite()))
    throw ConfigError("gains: kp must be positive");
  if (!((kd.array() >= 0.0).all() && kd.allFinite()))
    throw ConfigError("gains: kd must be non-negative");
}

JointCommand clamp_to_limits(const JointCommand& cmd, const sim::RobotModel& model) {
  JointCommand out = cmd;
  for (int i = 0; i < kNumJoints; ++i) {
    const auto& lim = model.limit_for_index(i);
    out.position(i) = std::clamp(cmd.position(i), lim.position_min, lim.position_max);
  }
  return out;
}

JointVector pd_torque(const JointCommand& cmd, const sim::SimState& state, const GainSet& gains,
                      const JointVector& tau_ff, const sim::RobotModel& model) {
  const JointCommand c = clamp_to_limits(cmd, model);
  const JointVector tau = gains.kp.cwiseProduct(c.position - state.joint_positions()) +
                          gains.kd.cwiseProduct(c.velocity - state.joint_velocities()) + tau_ff;
  return sim::clamp_torques(tau, model);
}

JointVector feedforward(const JointCommand& cmd, const sim::RobotModel& model) {
  // tau = dV/dq with V = g * sum(m * z_com) over the leg's two links.
  auto height_slope = [](double angle, const Vec2& u) {
    return sim::rotate(angle, Vec2(u.y(), -u.x())).y();
  };
  JointVector tau = JointVector::Zero();
  for (int leg = 0; leg < kNumLegs; ++leg) {
    const double hip = cmd.position(joint_index(leg, JointClass::HipPitch));
    const double knee = cmd.position(joint_index(leg, JointClass::Knee));
    const auto& thigh = model.thighs[leg];
    const auto& shank = model.shanks[leg];
    const double shank_term = shank.mass * height_slope(hip + knee, shank.com);
    tau(joint_index(leg, JointClass::HipPitch)) =
        kGravity * (thigh.mass * height_slope(hip, thigh.com) +
                    shank.mass * height_slope(hip, Vec2(0.0, -model.thigh_length)) + shank_term);
    tau(joint_index(leg, JointClass::Knee)) = kGravity * shank_term;
  }
  return tau;
}

}  // namespace boundlab::control
