#include "boundlab/rl/domain.hpp"

#include "boundlab/errors.hpp"
#include "boundlab/random.hpp"

namespace boundlab::rl {

DomainRandomizationConfig DomainRandomizationConfig::none() {
  DomainRandomizationConfig c;
  c.link_mass_fraction = 0.0;
  c.link_inertia_fraction = 0.0;
  c.link_com_offset = 0.0;
  c.friction_delta = 0.0;
  c.randomize_restitution = false;
  c.bump_height = 0.0;
  c.start = sim::ResetPerturbation::none();
  return c;
}

void DomainRandomizationConfig::validate() const {
  if (link_mass_fraction < 0.0 || link_mass_fraction >= 1.0)
    throw ConfigError("randomization: link_mass_fraction must be in [0, 1)");
  if (link_inertia_fraction < 0.0 || link_inertia_fraction >= 1.0)
    throw ConfigError("randomization: link_inertia_fraction must be in [0, 1)");
  if (link_com_offset < 0.0 || friction_delta < 0.0 || bump_height < 0.0)
    throw ConfigError("randomization: noise widths must be >= 0");
  if (randomize_restitution && !(restitution_min >= 0.0 && restitution_min <= restitution_max &&
                                 restitution_max <= 1.0))
    throw ConfigError("randomization: restitution range must satisfy 0 <= min <= max <= 1");
  if (bump_height > 0.0 && !(bump_spacing > 0.0 && terrain_length > bump_spacing))
    throw ConfigError("randomization: bump spacing and terrain length must be positive");
}

namespace {

void perturb(sim::Link& link, const DomainRandomizationConfig& cfg, Rng& rng) {
  // Draw every value even when its width is zero so streams stay aligned.
  const double mass_factor = 1.0 + symmetric(rng, cfg.link_mass_fraction);
  const double inertia_factor = 1.0 + symmetric(rng, cfg.link_inertia_fraction);
  const double dx = symmetric(rng, cfg.link_com_offset);
  const double dz = symmetric(rng, cfg.link_com_offset);
  if (cfg.link_mass_fraction > 0.0) link.mass *= mass_factor;
  if (cfg.link_inertia_fraction > 0.0) link.inertia *= inertia_factor;
  if (cfg.link_com_offset > 0.0) link.com += Vec2(dx, dz);
}

}  // namespace

Domain randomize_domain(const sim::RobotModel& model, const sim::Terrain& terrain,
                        const DomainRandomizationConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Rng rng(mix_seed(seed, 0x646f6d61696eULL));
  Domain d{model, terrain};
  perturb(d.model.torso, cfg, rng);
  for (int leg = 0; leg < kNumLegs; ++leg) {
    perturb(d.model.thighs[leg], cfg, rng);
    perturb(d.model.shanks[leg], cfg, rng);
  }
  const double df = symmetric(rng, cfg.friction_delta);
  const double rest = uniform(rng, cfg.restitution_min, cfg.restitution_max);
  if (cfg.friction_delta > 0.0) d.terrain.friction = std::max(0.0, terrain.friction + df);
  if (cfg.randomize_restitution) d.terrain.restitution = rest;
  if (cfg.bump_height > 0.0) {
    const int n = static_cast<int>(cfg.terrain_length / cfg.bump_spacing) + 1;
    d.terrain.origin_x = cfg.terrain_origin;
    d.terrain.spacing = cfg.bump_spacing;
    d.terrain.heights.resize(n);
    for (int i = 0; i < n; ++i) d.terrain.heights[i] = uniform(rng, 0.0, cfg.bump_height);
  }
  return d;
}

}  // namespace boundlab::rl
