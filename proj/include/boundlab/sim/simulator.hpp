#pragma once

#include <array>
#include <cstdint>

#include "boundlab/common.hpp"
#include "boundlab/sim/robot_model.hpp"
#include "boundlab/sim/state.hpp"
#include "boundlab/sim/terrain.hpp"

namespace boundlab::sim {

inline constexpr double kDefaultTimestep = 0.0025;

// Clamp each joint torque to its class peak limit.
JointVector clamp_torques(const JointVector& torques, const RobotModel& model);

// Advance one step. Torques are clamped to the peak limits first; roll
// torques drive the 1-DOF roll servos only.
// Positions use the trapezoid rule; the velocity update is linearly implicit
// in the penalty contact forces, with inertia and velocity-product terms taken
// at a predicted midpoint. Constant accelerations integrate exactly. Contact flags in the result are
// detect_contacts() of the new configuration; contact_force holds the normal
// force each foot received during the step.
// Throws DynamicsBlowup if the successor state is not finite.
SimState step(const SimState& state, const JointVector& torques, const RobotModel& model,
              const Terrain& terrain, const ContactParams& contact, double dt);

std::array<Vec2, kNumLegs> foot_positions(const SimState& state, const RobotModel& model);
std::array<Vec2, kNumLegs> hip_positions(const SimState& state, const RobotModel& model);
std::array<Vec2, 2> torso_corner_positions(const SimState& state, const RobotModel& model);

// G(i, t): 1 iff foot height above the local terrain is <= contact_tolerance.
std::array<int, kNumLegs> detect_contacts(const SimState& state, const RobotModel& model,
                                          const Terrain& terrain, const ContactParams& contact);

bool torso_touches_terrain(const SimState& state, const RobotModel& model, const Terrain& terrain,
                           const ContactParams& contact);

struct ResetPerturbation {
  double pitch = 0.1;           // uniform ± rad
  double joint = 0.05;          // uniform ± rad on every planar and roll joint
  double phase_fraction = 1.0;  // gait phase uniform in [0, phase_fraction * 2π)
  double stance_leg_length = 0.36;

  static ResetPerturbation none();
};

// Nominal crouch with every foot under its hip, lowered so that the lowest
// foot rests on the terrain, plus seeded perturbations.
SimState reset(const RobotModel& model, const Terrain& terrain, std::uint64_t seed,
               const ResetPerturbation& perturbation);

Vec2 center_of_mass(const SimState& state, const RobotModel& model);
Vec2 center_of_mass_velocity(const SimState& state, const RobotModel& model);
double horizontal_momentum(const SimState& state, const RobotModel& model);
// Kinetic plus gravitational potential energy (contact springs excluded).
double mechanical_energy(const SimState& state, const RobotModel& model);

}  // namespace boundlab::sim
