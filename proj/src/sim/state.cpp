#include "boundlab/sim/state.hpp"

#include <cmath>

namespace boundlab::sim {

bool SimState::is_finite() const {
  return std::isfinite(x) && std::isfinite(z) && std::isfinite(pitch) && std::isfinite(vx) &&
         std::isfinite(vz) && std::isfinite(pitch_rate) && q.allFinite() && dq.allFinite() &&
         roll.allFinite() && droll.allFinite() && contact_force.allFinite() && std::isfinite(t);
}

JointVector SimState::joint_positions() const {
  JointVector out;
  for (int leg = 0; leg < kNumLegs; ++leg) {
    out(joint_index(leg, JointClass::HipRoll)) = roll(leg);
    out(joint_index(leg, JointClass::HipPitch)) = q(planar_index(leg, JointClass::HipPitch));
    out(joint_index(leg, JointClass::Knee)) = q(planar_index(leg, JointClass::Knee));
  }
  return out;
}

JointVector SimState::joint_velocities() const {
  JointVector out;
  for (int leg = 0; leg < kNumLegs; ++leg) {
    out(joint_index(leg, JointClass::HipRoll)) = droll(leg);
    out(joint_index(leg, JointClass::HipPitch)) = dq(planar_index(leg, JointClass::HipPitch));
    out(joint_index(leg, JointClass::Knee)) = dq(planar_index(leg, JointClass::Knee));
  }
  return out;
}

void SimState::set_joint_positions(const JointVector& q12) {
  for (int leg = 0; leg < kNumLegs; ++leg) {
    roll(leg) = q12(joint_index(leg, JointClass::HipRoll));
    q(planar_index(leg, JointClass::HipPitch)) = q12(joint_index(leg, JointClass::HipPitch));
    q(planar_index(leg, JointClass::Knee)) = q12(joint_index(leg, JointClass::Knee));
  }
}

}  // namespace boundlab::sim
