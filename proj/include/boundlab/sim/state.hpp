#pragma once

#include <array>
#include <cstdint>

#include "boundlab/common.hpp"

namespace boundlab::sim {

// Planar joints are stored as [leg * 2 + 0] hip pitch, [leg * 2 + 1] knee.
struct SimState {
  double x = 0.0;
  double z = 0.0;
  double pitch = 0.0;  // positive is nose down
  double vx = 0.0;
  double vz = 0.0;
  double pitch_rate = 0.0;

  PlanarVector q = PlanarVector::Zero();
  PlanarVector dq = PlanarVector::Zero();
  Eigen::Vector4d roll = Eigen::Vector4d::Zero();
  Eigen::Vector4d droll = Eigen::Vector4d::Zero();

  std::array<int, kNumLegs> contact{0, 0, 0, 0};
  Eigen::Vector4d contact_force = Eigen::Vector4d::Zero();

  double t = 0.0;
  std::uint64_t step_index = 0;
  double gait_phase = 0.0;  // rad, offset of the gait clock drawn at reset

  bool is_finite() const;

  // 12-vectors in LF, RF, LH, RH x (roll, hip pitch, knee) order.
  JointVector joint_positions() const;
  JointVector joint_velocities() const;
  void set_joint_positions(const JointVector& q12);
};

}  // namespace boundlab::sim
