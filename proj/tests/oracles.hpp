#pragma once

// Reference computations used by the tests. They are written from first
// principles and share no code with the library beyond plain data types.

#include <cmath>
#include <vector>

#include "boundlab/sim/robot_model.hpp"
#include "boundlab/sim/state.hpp"

namespace oracle {

struct Point {
  double x = 0.0;
  double z = 0.0;
};

// Standard trig two-link FK for a leg hanging along -z; positive angles swing
// the foot backwards (toward -x).
inline Point leg_fk(double hip, double knee, double l1, double l2) {
  return {-l1 * std::sin(hip) - l2 * std::sin(hip + knee),
          -l1 * std::cos(hip) - l2 * std::cos(hip + knee)};
}

// Body-frame vector (bx, bz) expressed in world axes for a nose-down pitch.
inline Point body_to_world(double pitch, double bx, double bz) {
  return {std::cos(pitch) * bx + std::sin(pitch) * bz, -std::sin(pitch) * bx + std::cos(pitch) * bz};
}

struct Body {
  double mass;
  double inertia;
  Point pos;
  double angle;
};

// All nine rigid bodies with world CoM positions and absolute angles.
inline std::vector<Body> bodies(const boundlab::sim::SimState& s,
                                const boundlab::sim::RobotModel& m) {
  std::vector<Body> out;
  const Point tc = body_to_world(s.pitch, m.torso.com.x(), m.torso.com.y());
  out.push_back({m.torso.mass, m.torso.inertia, {s.x + tc.x, s.z + tc.z}, s.pitch});
  for (int leg = 0; leg < 4; ++leg) {
    const double hip = s.q(2 * leg), knee = s.q(2 * leg + 1);
    const Point h = body_to_world(s.pitch, m.hip_offsets[leg].x(), m.hip_offsets[leg].y());
    const Point hip_w{s.x + h.x, s.z + h.z};
    const double a1 = s.pitch + hip, a2 = a1 + knee;
    const Point c1 = body_to_world(a1, m.thighs[leg].com.x(), m.thighs[leg].com.y());
    out.push_back({m.thighs[leg].mass, m.thighs[leg].inertia, {hip_w.x + c1.x, hip_w.z + c1.z}, a1});
    const Point k = body_to_world(a1, 0.0, -m.thigh_length);
    const Point c2 = body_to_world(a2, m.shanks[leg].com.x(), m.shanks[leg].com.y());
    out.push_back({m.shanks[leg].mass, m.shanks[leg].inertia,
                   {hip_w.x + k.x + c2.x, hip_w.z + k.z + c2.z}, a2});
  }
  return out;
}

// Moves every generalized coordinate by h times its velocity.
inline boundlab::sim::SimState advance(const boundlab::sim::SimState& s, double h) {
  auto out = s;
  out.x += h * s.vx;
  out.z += h * s.vz;
  out.pitch += h * s.pitch_rate;
  out.q += h * s.dq;
  return out;
}

// Body velocities by central differences of positions along the state velocity.
struct Motion {
  double kinetic = 0.0;
  double potential = 0.0;
  double momentum_x = 0.0;
};

inline Motion motion(const boundlab::sim::SimState& s, const boundlab::sim::RobotModel& m,
                     double gravity = 9.81) {
  const double h = 1e-5;
  const auto now = bodies(s, m);
  const auto fwd = bodies(advance(s, h), m);
  const auto back = bodies(advance(s, -h), m);
  Motion r;
  for (std::size_t b = 0; b < now.size(); ++b) {
    const double vx = (fwd[b].pos.x - back[b].pos.x) / (2 * h);
    const double vz = (fwd[b].pos.z - back[b].pos.z) / (2 * h);
    const double w = (fwd[b].angle - back[b].angle) / (2 * h);
    r.kinetic += 0.5 * now[b].mass * (vx * vx + vz * vz) + 0.5 * now[b].inertia * w * w;
    r.potential += now[b].mass * gravity * now[b].pos.z;
    r.momentum_x += now[b].mass * vx;
  }
  for (int leg = 0; leg < 4; ++leg) r.kinetic += 0.5 * m.roll_inertia * s.droll(leg) * s.droll(leg);
  return r;
}

}  // namespace oracle
