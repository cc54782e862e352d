#include "boundlab/sim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "boundlab/errors.hpp"
#include "boundlab/random.hpp"
#include "boundlab/sim/kinematics.hpp"

namespace boundlab::sim {
namespace {

// Generalized coordinates of the stepper: CoM position (2) then pitch and
// planar joints (9). The mass matrix is block diagonal in these coordinates
// and gravity acts on the CoM rows only.
constexpr int kDofs = 2 + kInternalDofs;
using GenVector = Eigen::Matrix<double, kDofs, 1>;
using GenMatrix = Eigen::Matrix<double, kDofs, kDofs>;
using GenRow = Eigen::Matrix<double, 1, kDofs>;

enum class ContactMode { Off, Stick, Slip };

struct ContactPoint {
  int foot = -1;  // -1 for torso corners
  double depth = 0.0;
  GenRow normal_row;
  GenRow tangent_row;
  ContactMode mode = ContactMode::Stick;
  double slip_sign = 0.0;
  double normal_force = 0.0;
};

void add_candidate(std::vector<ContactPoint>& out, const PointKinematics& point,
                   const PointKinematics& com, const SimState& s, const Terrain& terrain,
                   int foot) {
  const Vec2 world = Vec2(s.x, s.z) + point.offset;
  const double depth = terrain.height_at(world.x()) - world.y();
  if (depth <= 0.0) return;
  ContactPoint c;
  c.foot = foot;
  c.depth = depth;
  const PointJacobian rel = point.jacobian - com.jacobian;
  c.tangent_row.setZero();
  c.normal_row.setZero();
  c.tangent_row(0) = 1.0;
  c.normal_row(1) = 1.0;
  c.tangent_row.tail<kInternalDofs>() = rel.row(0);
  c.normal_row.tail<kInternalDofs>() = rel.row(1);
  out.push_back(c);
}

}  // namespace

JointVector clamp_torques(const JointVector& torques, const RobotModel& model) {
  JointVector out;
  for (int i = 0; i < kNumJoints; ++i) {
    const double peak = model.limit_for_index(i).torque_peak;
    out(i) = std::clamp(torques(i), -peak, peak);
  }
  return out;
}

namespace {

// One linearly implicit velocity solve. `inertia` and `force` (applied minus
// velocity-product terms) are taken at the evaluation point; contact rows are
// those of the start configuration.
GenVector solve_velocity(const GenMatrix& inertia, const GenVector& force, const GenVector& vel,
                         std::vector<ContactPoint>& contacts, const Terrain& terrain,
                         const ContactParams& contact, double dt) {
  // Positions advance with the trapezoid rule, so the predicted penetration is
  //   depth' = depth - dt/2 * N (v + v').
  // The normal force is linearized implicitly in v':
  //   Fn = k (depth - dt/2 N v) - (k dt/2 + c) N v'
  // Tangential force is a stiff damper while sticking. A sliding contact gets
  // mu * Fn against the slip direction, with Fn from the previous pass; folding
  // it into the matrix makes the system unsymmetric and can make it singular.
  const double k = contact.normal_stiffness;
  const double c = contact.normal_damping * (1.0 - terrain.restitution);
  const double kn = 0.5 * k * dt + c;
  const double bt = contact.tangential_damping;
  const double mu = terrain.friction;

  const GenVector rhs0 = inertia * vel + dt * force;
  if (contacts.empty()) return inertia.ldlt().solve(rhs0);

  std::vector<double> preload(contacts.size());
  std::vector<double> fn_est(contacts.size());
  for (std::size_t i = 0; i < contacts.size(); ++i) {
    preload[i] = k * (contacts[i].depth - 0.5 * dt * contacts[i].normal_row.dot(vel));
    fn_est[i] = std::max(preload[i], 0.0);
  }

  GenVector next_vel = vel;
  constexpr int kMaxModeIterations = 8;
  for (int iter = 0; iter < kMaxModeIterations; ++iter) {
    GenMatrix a = inertia;
    GenVector rhs = rhs0;
    for (std::size_t i = 0; i < contacts.size(); ++i) {
      const auto& cp = contacts[i];
      if (cp.mode == ContactMode::Off) continue;
      a.noalias() += (dt * kn) * cp.normal_row.transpose() * cp.normal_row;
      rhs.noalias() += (dt * preload[i]) * cp.normal_row.transpose();
      if (cp.mode == ContactMode::Stick)
        a.noalias() += (dt * bt) * cp.tangent_row.transpose() * cp.tangent_row;
      else
        rhs.noalias() -= (dt * cp.slip_sign * mu * fn_est[i]) * cp.tangent_row.transpose();
    }
    next_vel = a.ldlt().solve(rhs);

    bool changed = false;
    for (std::size_t i = 0; i < contacts.size(); ++i) {
      auto& cp = contacts[i];
      if (cp.mode == ContactMode::Off) continue;
      const double fn = preload[i] - kn * cp.normal_row.dot(next_vel);
      const double vt = cp.tangent_row.dot(next_vel);
      cp.normal_force = std::max(fn, 0.0);
      if (fn < 0.0) {
        cp.mode = ContactMode::Off;
        cp.normal_force = 0.0;
        changed = true;
      } else if (cp.mode == ContactMode::Stick) {
        if (std::abs(bt * vt) > mu * fn) {
          cp.mode = ContactMode::Slip;
          cp.slip_sign = vt > 0.0 ? 1.0 : -1.0;
          changed = true;
        }
      } else {
        if (vt * cp.slip_sign < 0.0) {
          cp.mode = ContactMode::Stick;
          changed = true;
        }
        if (std::abs(fn - fn_est[i]) > 1e-9 * std::max(1.0, fn)) changed = true;
      }
      fn_est[i] = std::max(fn, 0.0);
    }
    if (!changed) break;
  }
  return next_vel;
}

struct Dynamics {
  GenMatrix inertia;
  GenVector force;
};

Dynamics assemble(const Kinematics& kin, const JointVector& tau) {
  Dynamics d;
  d.inertia.setZero();
  d.inertia(0, 0) = kin.total_mass;
  d.inertia(1, 1) = kin.total_mass;
  d.inertia.bottomRightCorner<kInternalDofs, kInternalDofs>() = kin.mass_matrix;
  d.force.setZero();
  d.force(1) = -kin.total_mass * kGravity;
  for (int leg = 0; leg < kNumLegs; ++leg) {
    d.force(3 + planar_index(leg, JointClass::HipPitch)) =
        tau(joint_index(leg, JointClass::HipPitch));
    d.force(3 + planar_index(leg, JointClass::Knee)) = tau(joint_index(leg, JointClass::Knee));
  }
  d.force.tail<kInternalDofs>() -= kin.bias_force;
  return d;
}

}  // namespace

SimState step(const SimState& s, const JointVector& torques, const RobotModel& model,
              const Terrain& terrain, const ContactParams& contact, double dt) {
  if (!(dt > 0.0)) throw NumericalError("step: dt must be positive");
  if (!torques.allFinite()) throw DynamicsBlowup(s.step_index);

  const JointVector tau = clamp_torques(torques, model);
  const Kinematics kin = compute_kinematics(model, s.pitch, s.q, s.pitch_rate, s.dq);

  InternalVector rates;
  rates << s.pitch_rate, s.dq;
  const Vec2 com_pos = Vec2(s.x, s.z) + kin.com.offset;
  GenVector vel;
  vel << Vec2(s.vx, s.vz) + kin.com.jacobian * rates, rates;

  std::vector<ContactPoint> contacts;
  contacts.reserve(6);
  for (int leg = 0; leg < kNumLegs; ++leg)
    add_candidate(contacts, kin.feet[leg], kin.com, s, terrain, leg);
  for (const auto& corner : kin.torso_corners)
    add_candidate(contacts, corner, kin.com, s, terrain, -1);

  // Predictor at the start configuration, then the velocity update is
  // re-evaluated with inertia and velocity-product terms at the midpoint.
  const Dynamics start = assemble(kin, tau);
  const GenVector predicted = solve_velocity(start.inertia, start.force, vel, contacts, terrain,
                                             contact, dt);
  const GenVector mid_vel = 0.5 * (vel + predicted);
  const InternalVector mid_rates = mid_vel.tail<kInternalDofs>();
  const Kinematics mid_kin = compute_kinematics(
      model, s.pitch + 0.5 * dt * mid_rates(0),
      s.q + 0.5 * dt * mid_rates.tail<kNumPlanarJoints>(), mid_rates(0),
      mid_rates.tail<kNumPlanarJoints>());
  const Dynamics mid = assemble(mid_kin, tau);
  const GenVector next_vel =
      solve_velocity(mid.inertia, mid.force, vel, contacts, terrain, contact, dt);

  const GenVector avg_vel = 0.5 * (vel + next_vel);
  SimState next = s;
  const Vec2 next_com_pos = com_pos + dt * avg_vel.head<2>();
  next.pitch = s.pitch + dt * avg_vel(2);
  next.q = s.q + dt * avg_vel.tail<kNumPlanarJoints>();
  next.pitch_rate = next_vel(2);
  next.dq = next_vel.tail<kNumPlanarJoints>();

  const InternalVector next_rates = next_vel.tail<kInternalDofs>();
  const Kinematics next_kin =
      compute_kinematics(model, next.pitch, next.q, next.pitch_rate, next.dq);
  const Vec2 torso_pos = next_com_pos - next_kin.com.offset;
  const Vec2 torso_vel = next_vel.head<2>() - next_kin.com.jacobian * next_rates;
  next.x = torso_pos.x();
  next.z = torso_pos.y();
  next.vx = torso_vel.x();
  next.vz = torso_vel.y();

  for (int leg = 0; leg < kNumLegs; ++leg) {
    const double roll_tau = tau(joint_index(leg, JointClass::HipRoll));
    const double ratio = dt / model.roll_inertia;
    next.droll(leg) = (s.droll(leg) + ratio * roll_tau) / (1.0 + ratio * model.roll_damping);
    next.roll(leg) = s.roll(leg) + dt * next.droll(leg);
  }

  next.contact_force.setZero();
  for (const auto& cp : contacts)
    if (cp.foot >= 0) next.contact_force(cp.foot) = cp.normal_force;

  next.t = s.t + dt;
  next.step_index = s.step_index + 1;
  if (!next.is_finite()) throw DynamicsBlowup(next.step_index);
  next.contact = detect_contacts(next, model, terrain, contact);
  return next;
}

std::array<Vec2, kNumLegs> hip_positions(const SimState& s, const RobotModel& model) {
  std::array<Vec2, kNumLegs> out;
  for (int leg = 0; leg < kNumLegs; ++leg)
    out[leg] = Vec2(s.x, s.z) + rotate(s.pitch, model.hip_offsets[leg]);
  return out;
}

std::array<Vec2, kNumLegs> foot_positions(const SimState& s, const RobotModel& model) {
  auto out = hip_positions(s, model);
  for (int leg = 0; leg < kNumLegs; ++leg) {
    const Vec2 local = leg_forward(s.q(planar_index(leg, JointClass::HipPitch)),
                                   s.q(planar_index(leg, JointClass::Knee)), model.thigh_length,
                                   model.shank_length);
    out[leg] += rotate(s.pitch, local);
  }
  return out;
}

std::array<Vec2, 2> torso_corner_positions(const SimState& s, const RobotModel& model) {
  const double half_len = 0.5 * model.body_dims[0];
  const double half_h = 0.5 * model.torso_height;
  return {Vec2(s.x, s.z) + rotate(s.pitch, Vec2(-half_len, -half_h)),
          Vec2(s.x, s.z) + rotate(s.pitch, Vec2(half_len, -half_h))};
}

std::array<int, kNumLegs> detect_contacts(const SimState& s, const RobotModel& model,
                                          const Terrain& terrain, const ContactParams& contact) {
  std::array<int, kNumLegs> flags{};
  const auto feet = foot_positions(s, model);
  for (int leg = 0; leg < kNumLegs; ++leg) {
    const double clearance = feet[leg].y() - terrain.height_at(feet[leg].x());
    flags[leg] = clearance <= contact.contact_tolerance ? 1 : 0;
  }
  return flags;
}

bool torso_touches_terrain(const SimState& s, const RobotModel& model, const Terrain& terrain,
                           const ContactParams& contact) {
  for (const auto& p : torso_corner_positions(s, model))
    if (p.y() - terrain.height_at(p.x()) <= contact.contact_tolerance) return true;
  return false;
}

ResetPerturbation ResetPerturbation::none() {
  ResetPerturbation p;
  p.pitch = 0.0;
  p.joint = 0.0;
  p.phase_fraction = 0.0;
  return p;
}

SimState reset(const RobotModel& model, const Terrain& terrain, std::uint64_t seed,
               const ResetPerturbation& perturbation) {
  const auto& knee = model.limit(JointClass::Knee);
  const LegAngles crouch =
      leg_inverse(Vec2(0.0, -perturbation.stance_leg_length), model.thigh_length,
                  model.shank_length, knee.position_min, knee.position_max);

  Rng rng(seed);
  SimState s;
  s.pitch = symmetric(rng, perturbation.pitch);
  for (int leg = 0; leg < kNumLegs; ++leg) {
    s.q(planar_index(leg, JointClass::HipPitch)) = crouch.hip + symmetric(rng, perturbation.joint);
    s.q(planar_index(leg, JointClass::Knee)) = crouch.knee + symmetric(rng, perturbation.joint);
    s.roll(leg) = symmetric(rng, perturbation.joint);
  }
  s.gait_phase = 2.0 * kPi * perturbation.phase_fraction * canonical(rng);

  double z = -1e9;
  for (const auto& foot : foot_positions(s, model))
    z = std::max(z, terrain.height_at(foot.x()) - foot.y());
  s.z = z;
  s.contact = detect_contacts(s, model, terrain, ContactParams{});
  return s;
}

Vec2 center_of_mass(const SimState& s, const RobotModel& model) {
  const Kinematics kin = compute_kinematics(model, s.pitch, s.q, s.pitch_rate, s.dq);
  return Vec2(s.x, s.z) + kin.com.offset;
}

Vec2 center_of_mass_velocity(const SimState& s, const RobotModel& model) {
  const Kinematics kin = compute_kinematics(model, s.pitch, s.q, s.pitch_rate, s.dq);
  InternalVector rates;
  rates << s.pitch_rate, s.dq;
  return Vec2(s.vx, s.vz) + kin.com.jacobian * rates;
}

double horizontal_momentum(const SimState& s, const RobotModel& model) {
  return model.total_mass() * center_of_mass_velocity(s, model).x();
}

double mechanical_energy(const SimState& s, const RobotModel& model) {
  const Kinematics kin = compute_kinematics(model, s.pitch, s.q, s.pitch_rate, s.dq);
  InternalVector rates;
  rates << s.pitch_rate, s.dq;
  const Vec2 com_vel = Vec2(s.vx, s.vz) + kin.com.jacobian * rates;
  const double com_z = s.z + kin.com.offset.y();
  const double kinetic = 0.5 * kin.total_mass * com_vel.squaredNorm() +
                         0.5 * rates.dot(kin.mass_matrix * rates) +
                         0.5 * model.roll_inertia * s.droll.squaredNorm();
  return kinetic + kin.total_mass * kGravity * com_z;
}

}  // namespace boundlab::sim
