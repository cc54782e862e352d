#pragma once

#include "boundlab/control/pd.hpp"
#include "boundlab/sim/robot_model.hpp"
#include "boundlab/sim/state.hpp"

namespace boundlab::control {

struct SlipParams {
  double gait_frequency = 3.0;       // Hz
  double duty_factor = 0.4;
  double spring_stiffness = 4000.0;  // N/m
  double rest_length = 0.42;         // m
  double raibert_gain = 0.1;         // s
  double desired_speed = 0.5;        // m/s
  double pitch_gain = 40.0;          // N·m/rad, stance hip torque per rad of pitch
  // Stance spring force scaled by 1 ± pitch_rate_split·φ' (+ front pair).
  double pitch_rate_split = 0.2;     // s/rad
  double touchdown_length = 0.36;    // m, leg length at the end of swing
  double swing_clearance = 0.08;     // m
  // Joint stiffness used to turn stance torques into position targets; should
  // match the kp of the PD layer.
  double joint_stiffness = 60.0;     // N·m/rad

  double stance_duration() const { return duty_factor / gait_frequency; }
  void validate(const sim::RobotModel& model) const;
};

struct LegPhase {
  bool stance = false;
  double progress = 0.0;  // fraction of the current stance or swing, [0, 1)
};

// Front pair runs on 2π f (t + τ) + gait_phase, hind pair half a period later.
// The clock is offset by π (1.5 - duty) so each stance window is centred where
// the gait signal of that pair is most negative.
LegPhase leg_phase(double t, double gait_phase, int leg, const SlipParams& params);

// Raibert foothold ahead of the hip: v T_stance / 2 + gain (v - v_desired).
double raibert_offset(double speed, const SlipParams& params);

// Bounding command at time t. Stance legs follow a virtual spring along the
// hip-foot axis, split between the pairs by pitch rate, plus a pitch hip
// torque; torques become position offsets through joint_stiffness. Swing legs track a lifted arc to the
// Raibert foothold via inverse kinematics. Roll targets are zero.
JointCommand slip_reference(double t, const sim::SimState& state, const SlipParams& params,
                            const sim::RobotModel& model);

}  // namespace boundlab::control
