#include "boundlab/obs/observation.hpp"

#include <cmath>

#include "boundlab/errors.hpp"

namespace boundlab::obs {

FeatureMode parse_feature_mode(const std::string& text) {
  if (text == "raw") return FeatureMode::Raw;
  if (text == "engineered") return FeatureMode::Engineered;
  throw ConfigError("unknown feature mode '" + text + "' (expected raw or engineered)");
}

std::string to_string(FeatureMode mode) { return mode == FeatureMode::Raw ? "raw" : "engineered"; }

std::vector<std::string> observation_names(const FeatureConfig& cfg) {
  static const char* legs[] = {"lf", "rf", "lh", "rh"};
  static const char* joints[] = {"roll", "hip", "knee"};
  std::vector<std::string> raw{"height", "zaxis_x", "zaxis_y", "zaxis_z"};
  for (auto leg : legs)
    for (auto j : joints) raw.push_back(std::string("q_") + leg + "_" + j);
  for (auto a : {"angvel_x", "angvel_y", "angvel_z", "acc_x", "acc_y", "acc_z"}) raw.push_back(a);
  for (auto leg : legs)
    for (auto j : joints) raw.push_back(std::string("dq_") + leg + "_" + j);
  if (cfg.mode == FeatureMode::Raw) return raw;

  std::vector<std::string> out(raw.begin(), raw.begin() + 4);
  for (auto leg : legs) out.push_back(std::string("q_") + leg + "_roll");
  for (auto d : {"d_left_hip", "d_left_knee", "d_right_hip", "d_right_knee"}) out.push_back(d);
  out.insert(out.end(), raw.begin() + 16, raw.end());
  return out;
}

Eigen::VectorXd build_observation(const sim::SimState& state, const sim::Terrain& terrain,
                                  const Eigen::Vector3d& acceleration, const FeatureConfig& cfg) {
  Eigen::VectorXd raw(kRawSize);
  raw(0) = state.z - terrain.height_at(state.x);
  raw.segment<3>(1) << -std::sin(state.pitch), 0.0, std::cos(state.pitch);
  raw.segment<12>(4) = state.joint_positions();
  raw.segment<3>(16) << 0.0, state.pitch_rate, 0.0;
  raw.segment<3>(19) = acceleration;
  raw.segment<12>(22) = state.joint_velocities();
  if (cfg.mode == FeatureMode::Raw) return raw;
  return apply_feature_engineering(raw);
}

Eigen::VectorXd apply_feature_engineering(const Eigen::VectorXd& raw) {
  if (raw.size() != kRawSize)
    throw DimensionError("feature engineering expects " + std::to_string(kRawSize) +
                         " values, got " + std::to_string(raw.size()));
  auto q = [&](int leg, JointClass j) { return raw(4 + joint_index(leg, j)); };
  Eigen::VectorXd out(kEngineeredSize);
  out.head<4>() = raw.head<4>();
  for (int leg = 0; leg < kNumLegs; ++leg) out(4 + leg) = q(leg, JointClass::HipRoll);
  const int lf = static_cast<int>(Leg::LF), lh = static_cast<int>(Leg::LH);
  const int rf = static_cast<int>(Leg::RF), rh = static_cast<int>(Leg::RH);
  out(8) = q(lf, JointClass::HipPitch) - q(lh, JointClass::HipPitch);
  out(9) = q(lf, JointClass::Knee) - q(lh, JointClass::Knee);
  out(10) = q(rf, JointClass::HipPitch) - q(rh, JointClass::HipPitch);
  out(11) = q(rf, JointClass::Knee) - q(rh, JointClass::Knee);
  out.tail<18>() = raw.tail<18>();
  return out;
}

void ObservationBuilder::reset(const sim::SimState& state) {
  previous_velocity_ = Vec2(state.vx, state.vz);
  has_previous_ = false;
}

Eigen::VectorXd ObservationBuilder::build(const sim::SimState& state,
                                          const sim::Terrain& terrain) {
  const Vec2 velocity(state.vx, state.vz);
  Eigen::Vector3d acc = Eigen::Vector3d::Zero();
  if (has_previous_) {
    const Vec2 a = (velocity - previous_velocity_) / period_;
    acc << a.x(), 0.0, a.y();
  }
  previous_velocity_ = velocity;
  has_previous_ = true;
  return build_observation(state, terrain, acc, cfg_);
}

}  // namespace boundlab::obs
