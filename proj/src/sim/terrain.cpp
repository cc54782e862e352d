#include "boundlab/sim/terrain.hpp"

#include <cmath>

#include "boundlab/errors.hpp"

namespace boundlab::sim {

Terrain Terrain::flat(double friction, double restitution) {
  Terrain t;
  t.friction = friction;
  t.restitution = restitution;
  return t;
}

double Terrain::height_at(double x) const {
  if (heights.empty()) return 0.0;
  const double u = (x - origin_x) / spacing;
  if (u <= 0.0) return heights.front();
  const auto last = static_cast<double>(heights.size() - 1);
  if (u >= last) return heights.back();
  const auto i = static_cast<std::size_t>(u);
  const double w = u - static_cast<double>(i);
  return (1.0 - w) * heights[i] + w * heights[i + 1];
}

void Terrain::validate() const {
  if (!(friction >= 0.0)) throw ConfigError("terrain friction must be >= 0");
  if (!(restitution >= 0.0 && restitution <= 1.0))
    throw ConfigError("terrain restitution must lie in [0, 1]");
  if (!(spacing > 0.0)) throw ConfigError("terrain spacing must be positive");
  for (double h : heights)
    if (!std::isfinite(h)) throw ConfigError("terrain heightfield must be finite");
}

void ContactParams::validate() const {
  if (!(normal_stiffness > 0.0)) throw ConfigError("contact stiffness must be positive");
  if (!(normal_damping >= 0.0)) throw ConfigError("contact damping must be >= 0");
  if (!(contact_tolerance >= 0.0)) throw ConfigError("contact tolerance must be >= 0");
  if (!(tangential_damping > 0.0)) throw ConfigError("tangential damping must be positive");
}

}  // namespace boundlab::sim
