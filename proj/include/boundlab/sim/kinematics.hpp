#pragma once

#include <array>
#include <cmath>

#include "boundlab/common.hpp"
#include "boundlab/sim/robot_model.hpp"

namespace boundlab::sim {

// Internal coordinates: torso pitch followed by the 8 planar joint angles.
inline constexpr int kInternalDofs = 1 + kNumPlanarJoints;
using InternalVector = Eigen::Matrix<double, kInternalDofs, 1>;
using InternalMatrix = Eigen::Matrix<double, kInternalDofs, kInternalDofs>;
using PointJacobian = Eigen::Matrix<double, 2, kInternalDofs>;

// A point of the chain relative to the torso origin, in world axes.
// velocity = jacobian * internal_rates, acceleration = jacobian * internal_acc + bias.
struct PointKinematics {
  Vec2 offset = Vec2::Zero();
  PointJacobian jacobian = PointJacobian::Zero();
  Vec2 bias = Vec2::Zero();
};

struct Kinematics {
  static constexpr int kBodies = 1 + 2 * kNumLegs;  // torso, then thigh/shank per leg

  std::array<PointKinematics, kBodies> bodies;
  std::array<PointKinematics, kNumLegs> feet;
  std::array<PointKinematics, 2> torso_corners;  // rear-bottom, front-bottom

  double total_mass = 0.0;
  PointKinematics com;  // system CoM relative to the torso origin

  // Inertia and velocity-product terms of the motion about the CoM. The CoM
  // itself translates with mass total_mass and carries all of gravity.
  InternalMatrix mass_matrix = InternalMatrix::Zero();
  InternalVector bias_force = InternalVector::Zero();
};

Kinematics compute_kinematics(const RobotModel& model, double pitch, const PlanarVector& q,
                              double pitch_rate, const PlanarVector& dq);

// Index helpers into Kinematics::bodies.
constexpr int thigh_body(int leg) { return 1 + 2 * leg; }
constexpr int shank_body(int leg) { return 2 + 2 * leg; }

// World-axis rotation by a pitch-sense angle: R(a) * (x, z).
inline Vec2 rotate(double angle, const Vec2& v) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x() + s * v.y(), -s * v.x() + c * v.y()};
}

// Two-link planar leg: foot relative to the hip, in the torso frame.
Vec2 leg_forward(double hip, double knee, double thigh_length, double shank_length);

struct LegAngles {
  double hip = 0.0;
  double knee = 0.0;
};

// Inverse of leg_forward with a positive knee. Targets outside the reachable
// annulus (knee within [knee_min, knee_max]) are pulled onto its boundary.
LegAngles leg_inverse(const Vec2& foot, double thigh_length, double shank_length,
                      double knee_min, double knee_max);

}  // namespace boundlab::sim
