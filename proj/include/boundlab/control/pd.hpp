#pragma once

#include "boundlab/common.hpp"
#include "boundlab/sim/robot_model.hpp"
#include "boundlab/sim/state.hpp"

namespace boundlab::control {

struct JointCommand {
  JointVector position = JointVector::Zero();  // rad, LF/RF/LH/RH x roll/hip/knee
  JointVector velocity = JointVector::Zero();  // rad/s
};

struct GainSet {
  JointVector kp = JointVector::Constant(60.0);
  JointVector kd = JointVector::Constant(1.5);

  static GainSet uniform(double kp, double kd);
  void validate() const;
};

// Targets pulled inside the joint position limits.
JointCommand clamp_to_limits(const JointCommand& cmd, const sim::RobotModel& model);

// kp (q* - q) + kd (dq* - dq) + tau_ff, clamped to the peak torque of each
// joint class. Position targets are clamped to the joint limits first.
JointVector pd_torque(const JointCommand& cmd, const sim::SimState& state, const GainSet& gains,
                      const JointVector& tau_ff, const sim::RobotModel& model);

// Gravity compensation of each leg's thigh and shank at the commanded joint
// angles, torso level. Roll entries are zero.
JointVector feedforward(const JointCommand& cmd, const sim::RobotModel& model);

}  // namespace boundlab::control
