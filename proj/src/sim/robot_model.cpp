#include "boundlab/sim/robot_model.hpp"

#include <string>

#include "boundlab/errors.hpp"

namespace boundlab::sim {

RobotModel RobotModel::jueying_mini() {
  RobotModel m;
  const double torso_mass = 14.0;
  m.torso = {torso_mass, torso_mass * (0.7 * 0.7 + m.torso_height * m.torso_height) / 12.0,
             Vec2::Zero()};
  for (int leg = 0; leg < kNumLegs; ++leg) {
    m.thighs[leg] = {1.25, 1.25 * m.thigh_length * m.thigh_length / 12.0,
                     Vec2(0.0, -0.5 * m.thigh_length)};
    m.shanks[leg] = {0.75, 0.75 * m.shank_length * m.shank_length / 12.0,
                     Vec2(0.0, -0.5 * m.shank_length)};
    m.hip_offsets[leg] = Vec2(is_front(leg) ? 0.25 : -0.25, 0.0);
  }
  m.limits[static_cast<int>(JointClass::HipRoll)] = {deg2rad(-22.0), deg2rad(22.0), -15.0, 15.0,
                                                     10.0, 23.0};
  m.limits[static_cast<int>(JointClass::HipPitch)] = {deg2rad(-158.0), deg2rad(28.0), -18.0,
                                                      18.0, 10.0, 26.0};
  m.limits[static_cast<int>(JointClass::Knee)] = {deg2rad(38.0), deg2rad(163.0), -20.0, 20.0,
                                                  17.0, 41.5};
  return m;
}

double RobotModel::total_mass() const {
  double total = torso.mass;
  for (int leg = 0; leg < kNumLegs; ++leg) total += thighs[leg].mass + shanks[leg].mass;
  return total;
}

void RobotModel::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid robot model: " + what);
  };
  require(thigh_length > 0.0 && shank_length > 0.0, "link lengths must be positive");
  require(torso.mass > 0.0 && torso.inertia > 0.0, "torso mass and inertia must be positive");
  for (int leg = 0; leg < kNumLegs; ++leg) {
    require(thighs[leg].mass > 0.0 && shanks[leg].mass > 0.0, "link masses must be positive");
    require(thighs[leg].inertia >= 0.0 && shanks[leg].inertia >= 0.0,
            "link inertias must be non-negative");
  }
  for (const auto& l : limits) {
    require(l.position_min < l.position_max, "joint position limits inverted");
    require(l.velocity_min < l.velocity_max, "joint velocity limits inverted");
    require(l.torque_peak > 0.0 && l.torque_continuous > 0.0, "torque limits must be positive");
  }
  require(roll_inertia > 0.0 && roll_damping >= 0.0, "roll servo parameters");
  require(torso_height > 0.0, "torso height must be positive");
}

}  // namespace boundlab::sim
