#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Core>

namespace boundlab {

inline constexpr int kNumLegs = 4;
inline constexpr int kNumJoints = 12;
inline constexpr int kNumPlanarJoints = 8;
inline constexpr double kGravity = 9.81;
inline constexpr double kPi = 3.14159265358979323846;

using Vec2 = Eigen::Vector2d;
using JointVector = Eigen::Matrix<double, kNumJoints, 1>;
using PlanarVector = Eigen::Matrix<double, kNumPlanarJoints, 1>;

// Leg order is fixed for every vector in the project: LF, RF, LH, RH.
enum class Leg : int { LF = 0, RF = 1, LH = 2, RH = 3 };

// Within a leg: hip roll, hip pitch, knee.
enum class JointClass : int { HipRoll = 0, HipPitch = 1, Knee = 2 };

constexpr int joint_index(int leg, JointClass j) { return leg * 3 + static_cast<int>(j); }
constexpr int planar_index(int leg, JointClass j) {
  return leg * 2 + (j == JointClass::Knee ? 1 : 0);
}
constexpr bool is_front(int leg) { return leg < 2; }

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }

}  // namespace boundlab
