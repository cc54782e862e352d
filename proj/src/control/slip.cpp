#include "boundlab/control/slip.hpp"

#include <cmath>

#include "boundlab/errors.hpp"
#include "boundlab/sim/kinematics.hpp"

namespace boundlab::control {

void SlipParams::validate(const sim::RobotModel& model) const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("slip: ") + what);
  };
  require(gait_frequency > 0.0, "gait_frequency must be positive");
  require(duty_factor > 0.0 && duty_factor < 1.0, "duty_factor must lie in (0, 1)");
  require(spring_stiffness >= 0.0, "spring_stiffness must be non-negative");
  require(rest_length > 0.0 && rest_length <= model.thigh_length + model.shank_length,
          "rest_length must be within the leg length");
  require(touchdown_length > 0.0 && touchdown_length <= model.thigh_length + model.shank_length,
          "touchdown_length must be within the leg length");
  require(swing_clearance >= 0.0, "swing_clearance must be non-negative");
  require(pitch_rate_split >= 0.0, "pitch_rate_split must be non-negative");
  require(joint_stiffness > 0.0, "joint_stiffness must be positive");
}

LegPhase leg_phase(double t, double gait_phase, int leg, const SlipParams& params) {
  const double offset = kPi * (1.5 - params.duty_factor) + (is_front(leg) ? 0.0 : kPi);
  const double angle = 2.0 * kPi * params.gait_frequency * t + gait_phase - offset;
  double frac = angle / (2.0 * kPi);
  frac -= std::floor(frac);
  if (frac < params.duty_factor) return {true, frac / params.duty_factor};
  return {false, (frac - params.duty_factor) / (1.0 - params.duty_factor)};
}

double raibert_offset(double speed, const SlipParams& params) {
  return speed * params.stance_duration() / 2.0 +
         params.raibert_gain * (speed - params.desired_speed);
}

JointCommand slip_reference(double t, const sim::SimState& state, const SlipParams& params,
                            const sim::RobotModel& model) {
  const auto& knee_lim = model.limit(JointClass::Knee);
  const double l1 = model.thigh_length, l2 = model.shank_length;
  const double foothold = raibert_offset(state.vx, params);

  JointCommand cmd;
  for (int leg = 0; leg < kNumLegs; ++leg) {
    const int hi = planar_index(leg, JointClass::HipPitch);
    const int ki = planar_index(leg, JointClass::Knee);
    const double hip = state.q(hi), knee = state.q(ki);
    const LegPhase phase = leg_phase(t, state.gait_phase, leg, params);

    double hip_target, knee_target;
    if (phase.stance) {
      // Joint torques that push the foot along the hip-foot axis.
      const Vec2 foot = sim::leg_forward(hip, knee, l1, l2);
      const double length = foot.norm();
      const Vec2 axis = foot / length;
      const Vec2 d_knee = sim::rotate(hip + knee, Vec2(-l2, 0.0));
      const Vec2 d_hip = sim::rotate(hip, Vec2(-l1, 0.0)) + d_knee;
      const double split = params.pitch_rate_split * state.pitch_rate;
      const double scale = std::max(0.0, 1.0 + (is_front(leg) ? split : -split));
      const double force = scale * params.spring_stiffness * (params.rest_length - length);
      double tau_hip = force * d_hip.dot(axis);
      const double tau_knee = force * d_knee.dot(axis);
      tau_hip += params.pitch_gain * state.pitch;
      hip_target = hip + tau_hip / params.joint_stiffness;
      knee_target = knee + tau_knee / params.joint_stiffness;
    } else {
      // World-level arc from behind the hip to the foothold, then into the
      // torso frame.
      const double s = phase.progress;
      const double blend = 0.5 - 0.5 * std::cos(kPi * s);
      const double x = -foothold + 2.0 * foothold * blend;
      const double reach = std::max(params.touchdown_length * params.touchdown_length - x * x,
                                    1e-6);
      const double z = -std::sqrt(reach) + params.swing_clearance * std::sin(kPi * s);
      const Vec2 target = sim::rotate(-state.pitch, Vec2(x, z));
      const auto angles =
          sim::leg_inverse(target, l1, l2, knee_lim.position_min, knee_lim.position_max);
      hip_target = angles.hip;
      knee_target = angles.knee;
    }
    cmd.position(joint_index(leg, JointClass::HipPitch)) = hip_target;
    cmd.position(joint_index(leg, JointClass::Knee)) = knee_target;
  }
  return clamp_to_limits(cmd, model);
}

}  // namespace boundlab::control
