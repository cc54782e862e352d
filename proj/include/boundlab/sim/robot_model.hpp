#pragma once

#include <array>

#include "boundlab/common.hpp"

namespace boundlab::sim {

struct JointLimit {
  double position_min = 0.0;  // rad
  double position_max = 0.0;
  double velocity_min = 0.0;  // rad/s
  double velocity_max = 0.0;
  double torque_continuous = 0.0;  // N·m
  double torque_peak = 0.0;
};

// Rigid link of the planar chain. `com` is expressed in the link frame, whose
// origin sits on the parent joint; a link hangs along -z when its absolute
// angle is zero.
struct Link {
  double mass = 0.0;     // kg
  double inertia = 0.0;  // kg·m², about the link CoM, pitch axis
  Vec2 com = Vec2::Zero();
};

// Sagittal-plane model of the quadruped. Left and right legs of a pair share
// the same hip location in the plane.
struct RobotModel {
  double thigh_length = 0.22;
  double shank_length = 0.25;

  Link torso;
  std::array<Link, kNumLegs> thighs;
  std::array<Link, kNumLegs> shanks;

  // Indexed by JointClass.
  std::array<JointLimit, 3> limits;

  std::array<Vec2, kNumLegs> hip_offsets;  // torso frame
  std::array<double, 3> body_dims{0.7, 0.4, 0.5};
  double torso_height = 0.1;  // collision box thickness used for torso contact

  // Decoupled hip-roll servos.
  double roll_inertia = 0.05;
  double roll_damping = 0.5;

  // Defaults distribute 22 kg as 14 kg torso plus 1.25 kg thigh and 0.75 kg
  // shank per leg, inertias as uniform rods/box.
  static RobotModel jueying_mini();

  const JointLimit& limit(JointClass j) const { return limits[static_cast<int>(j)]; }
  const JointLimit& limit_for_index(int joint) const { return limits[joint % 3]; }

  double total_mass() const;

  // Throws ConfigError on non-positive mass/length or inverted limit pairs.
  void validate() const;
};

}  // namespace boundlab::sim
