#pragma once

#include <vector>

namespace boundlab::sim {

// 1-D heightfield sampled at fixed spacing, linearly interpolated and held
// constant past either end. An empty field is flat ground at z = 0.
struct Terrain {
  double origin_x = -5.0;
  double spacing = 0.2;
  std::vector<double> heights;
  double friction = 0.6;
  double restitution = 0.0;

  static Terrain flat(double friction = 0.6, double restitution = 0.0);

  double height_at(double x) const;
  void validate() const;
};

struct ContactParams {
  double normal_stiffness = 1e5;     // N/m
  double normal_damping = 1e3;       // N·s/m
  double contact_tolerance = 1e-3;   // m
  double tangential_damping = 2e4;   // N·s/m, stick regularization

  void validate() const;
};

}  // namespace boundlab::sim
