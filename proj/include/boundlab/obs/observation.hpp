#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "boundlab/common.hpp"
#include "boundlab/sim/robot_model.hpp"
#include "boundlab/sim/state.hpp"
#include "boundlab/sim/terrain.hpp"

namespace boundlab::obs {

inline constexpr int kRawSize = 34;
inline constexpr int kEngineeredSize = 30;

// Raw layout:
//   [0]      body height above the terrain under the torso
//   [1:4]    world z-axis in the robot frame, (-sin φ, 0, cos φ)
//   [4:16]   joint positions, LF RF LH RH x (roll, hip pitch, knee)
//   [16:19]  body angular velocity (0, φ', 0)
//   [19:22]  linear acceleration, finite-differenced world velocity (x, y, z)
//   [22:34]  joint velocities
// Engineered layout drops the eight hip-pitch/knee positions and keeps the
// rolls, then appends the front-minus-hind differences in their place:
//   [0:4] as raw, [4:8] rolls, [8:12] LF-LH hip, LF-LH knee, RF-RH hip,
//   RF-RH knee, [12:30] raw [16:34].
enum class FeatureMode { Raw, Engineered };

struct FeatureConfig {
  FeatureMode mode = FeatureMode::Raw;
  int size() const { return mode == FeatureMode::Raw ? kRawSize : kEngineeredSize; }
};

FeatureMode parse_feature_mode(const std::string& text);
std::string to_string(FeatureMode mode);

// Column names, for CSV headers.
std::vector<std::string> observation_names(const FeatureConfig& cfg);

// `acceleration` is supplied by the caller (see ObservationBuilder).
Eigen::VectorXd build_observation(const sim::SimState& state, const sim::Terrain& terrain,
                                  const Eigen::Vector3d& acceleration, const FeatureConfig& cfg);

// Throws DimensionError unless raw has 34 entries.
Eigen::VectorXd apply_feature_engineering(const Eigen::VectorXd& raw);

// Per-environment wrapper that carries the previous torso velocity for the
// acceleration slots. The first observation after reset() reports zero
// acceleration.
class ObservationBuilder {
 public:
  ObservationBuilder(FeatureConfig cfg, double period) : cfg_(cfg), period_(period) {}

  void reset(const sim::SimState& state);
  Eigen::VectorXd build(const sim::SimState& state, const sim::Terrain& terrain);

  const FeatureConfig& config() const { return cfg_; }

 private:
  FeatureConfig cfg_;
  double period_;
  bool has_previous_ = false;
  Vec2 previous_velocity_ = Vec2::Zero();
};

}  // namespace boundlab::obs
