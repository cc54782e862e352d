#include "boundlab/sim/kinematics.hpp"

#include <algorithm>

namespace boundlab::sim {
namespace {

// Angles along one leg's chain: 0 = torso, 1 = thigh, 2 = shank (absolute).
struct Chain {
  std::array<double, 3> angle{};
  std::array<double, 3> rate{};
  std::array<int, 3> column{0, 0, 0};  // internal coordinate introduced at each level
};

// Adds the term R(angle[level]) * u to a point.
void add_term(PointKinematics& p, const Chain& chain, int level, const Vec2& u) {
  const double a = chain.angle[level];
  const double w = chain.rate[level];
  const Vec2 r = rotate(a, u);
  const Vec2 d = rotate(a, Vec2(u.y(), -u.x()));  // d/da of R(a) u
  p.offset += r;
  p.bias -= w * w * r;
  for (int k = 0; k <= level; ++k) p.jacobian.col(chain.column[k]) += d;
}

}  // namespace

Kinematics compute_kinematics(const RobotModel& model, double pitch, const PlanarVector& q,
                              double pitch_rate, const PlanarVector& dq) {
  Kinematics kin;

  Chain torso_chain;
  torso_chain.angle[0] = pitch;
  torso_chain.rate[0] = pitch_rate;

  add_term(kin.bodies[0], torso_chain, 0, model.torso.com);
  const double half_len = 0.5 * model.body_dims[0];
  const double half_h = 0.5 * model.torso_height;
  add_term(kin.torso_corners[0], torso_chain, 0, Vec2(-half_len, -half_h));
  add_term(kin.torso_corners[1], torso_chain, 0, Vec2(half_len, -half_h));

  for (int leg = 0; leg < kNumLegs; ++leg) {
    const int hip = planar_index(leg, JointClass::HipPitch);
    const int knee = planar_index(leg, JointClass::Knee);
    Chain c;
    c.angle = {pitch, pitch + q(hip), pitch + q(hip) + q(knee)};
    c.rate = {pitch_rate, pitch_rate + dq(hip), pitch_rate + dq(hip) + dq(knee)};
    c.column = {0, 1 + hip, 1 + knee};

    const Vec2 thigh_end(0.0, -model.thigh_length);
    const Vec2 shank_end(0.0, -model.shank_length);

    auto& thigh = kin.bodies[thigh_body(leg)];
    add_term(thigh, c, 0, model.hip_offsets[leg]);
    add_term(thigh, c, 1, model.thighs[leg].com);

    auto& shank = kin.bodies[shank_body(leg)];
    add_term(shank, c, 0, model.hip_offsets[leg]);
    add_term(shank, c, 1, thigh_end);
    add_term(shank, c, 2, model.shanks[leg].com);

    auto& foot = kin.feet[leg];
    add_term(foot, c, 0, model.hip_offsets[leg]);
    add_term(foot, c, 1, thigh_end);
    add_term(foot, c, 2, shank_end);
  }

  std::array<double, Kinematics::kBodies> mass{};
  std::array<double, Kinematics::kBodies> inertia{};
  mass[0] = model.torso.mass;
  inertia[0] = model.torso.inertia;
  for (int leg = 0; leg < kNumLegs; ++leg) {
    mass[thigh_body(leg)] = model.thighs[leg].mass;
    inertia[thigh_body(leg)] = model.thighs[leg].inertia;
    mass[shank_body(leg)] = model.shanks[leg].mass;
    inertia[shank_body(leg)] = model.shanks[leg].inertia;
  }

  double total = 0.0;
  for (int b = 0; b < Kinematics::kBodies; ++b) {
    const auto& body = kin.bodies[b];
    total += mass[b];
    kin.com.offset += mass[b] * body.offset;
    kin.com.jacobian += mass[b] * body.jacobian;
    kin.com.bias += mass[b] * body.bias;
  }
  kin.total_mass = total;
  kin.com.offset /= total;
  kin.com.jacobian /= total;
  kin.com.bias /= total;

  InternalMatrix m = InternalMatrix::Zero();
  InternalVector h = InternalVector::Zero();
  for (int b = 0; b < Kinematics::kBodies; ++b) {
    const auto& body = kin.bodies[b];
    m.noalias() += mass[b] * body.jacobian.transpose() * body.jacobian;
    h.noalias() += mass[b] * body.jacobian.transpose() * body.bias;
  }
  m.noalias() -= total * kin.com.jacobian.transpose() * kin.com.jacobian;
  h.noalias() -= total * kin.com.jacobian.transpose() * kin.com.bias;

  // Rotational inertia: each body's angular rate is a fixed sum of internal rates.
  m(0, 0) += inertia[0];
  for (int leg = 0; leg < kNumLegs; ++leg) {
    const int hc = 1 + planar_index(leg, JointClass::HipPitch);
    const int kc = 1 + planar_index(leg, JointClass::Knee);
    const std::array<int, 2> thigh_cols{0, hc};
    const std::array<int, 3> shank_cols{0, hc, kc};
    for (int i : thigh_cols)
      for (int j : thigh_cols) m(i, j) += inertia[thigh_body(leg)];
    for (int i : shank_cols)
      for (int j : shank_cols) m(i, j) += inertia[shank_body(leg)];
  }

  kin.mass_matrix = 0.5 * (m + m.transpose());
  kin.bias_force = h;
  return kin;
}

Vec2 leg_forward(double hip, double knee, double thigh_length, double shank_length) {
  return rotate(hip, Vec2(0.0, -thigh_length)) + rotate(hip + knee, Vec2(0.0, -shank_length));
}

LegAngles leg_inverse(const Vec2& foot, double thigh_length, double shank_length, double knee_min,
                      double knee_max) {
  const double l1 = thigh_length;
  const double l2 = shank_length;
  const double reach = foot.norm();
  double cos_knee = (reach * reach - l1 * l1 - l2 * l2) / (2.0 * l1 * l2);
  cos_knee = std::clamp(cos_knee, std::cos(knee_max), std::cos(knee_min));
  const double knee = std::acos(cos_knee);
  const double direction = reach > 1e-12 ? std::atan2(-foot.x(), -foot.y()) : 0.0;
  const double inner = std::atan2(l2 * std::sin(knee), l1 + l2 * std::cos(knee));
  return {direction - inner, knee};
}

}  // namespace boundlab::sim
