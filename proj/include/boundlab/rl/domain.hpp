#pragma once

#include <cstdint>

#include "boundlab/sim/robot_model.hpp"
#include "boundlab/sim/simulator.hpp"
#include "boundlab/sim/terrain.hpp"

namespace boundlab::rl {

// Per-episode noise. Every draw is uniform; defaults follow the published
// noise table, plus the terrain and start-pose settings.
struct DomainRandomizationConfig {
  double link_mass_fraction = 0.05;     // mass scaled by 1 ± this
  double link_inertia_fraction = 0.10;  // inertia scaled by 1 ± this
  double link_com_offset = 0.075;       // m, added to each CoM coordinate
  double friction_delta = 0.1;          // added to the base friction
  bool randomize_restitution = true;
  double restitution_min = 0.0;
  double restitution_max = 0.15;

  // Heightfield of uniform [0, bump_height] samples; 0 keeps the base terrain.
  double bump_height = 0.02;
  double bump_spacing = 0.2;
  double terrain_origin = -5.0;
  double terrain_length = 60.0;

  sim::ResetPerturbation start = {};

  // No noise at all; randomize_domain then returns its inputs unchanged.
  static DomainRandomizationConfig none();
  void validate() const;
};

struct Domain {
  sim::RobotModel model;
  sim::Terrain terrain;
};

// Deterministic per seed. Masses are scaled per link, inertias per link, CoM
// offsets drawn per link and per coordinate.
Domain randomize_domain(const sim::RobotModel& model, const sim::Terrain& terrain,
                        const DomainRandomizationConfig& cfg, std::uint64_t seed);

}  // namespace boundlab::rl
