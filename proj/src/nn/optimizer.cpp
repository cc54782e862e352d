#include "boundlab/nn/optimizer.hpp"

#include <cmath>

#include "boundlab/errors.hpp"

namespace boundlab::nn {

OptimizerKind parse_optimizer_kind(const std::string& text) {
  if (text == "sgd") return OptimizerKind::Sgd;
  if (text == "adam") return OptimizerKind::Adam;
  throw ConfigError("unknown optimizer '" + text + "' (expected sgd or adam)");
}

std::string to_string(OptimizerKind kind) { return kind == OptimizerKind::Sgd ? "sgd" : "adam"; }

OptimizerState OptimizerState::sgd(double lr) {
  OptimizerState s;
  s.kind = OptimizerKind::Sgd;
  s.learning_rate = lr;
  return s;
}

OptimizerState OptimizerState::adam(double lr) {
  OptimizerState s;
  s.kind = OptimizerKind::Adam;
  s.learning_rate = lr;
  return s;
}

void optimizer_step(OptimizerState& state, Eigen::VectorXd& weights,
                    const Eigen::VectorXd& gradient) {
  if (weights.size() != gradient.size()) throw DimensionError("optimizer: gradient shape mismatch");
  if (state.kind == OptimizerKind::Sgd) {
    weights.noalias() -= state.learning_rate * gradient;
    ++state.step;
    return;
  }
  if (state.first_moment.size() != weights.size()) {
    if (state.step != 0) throw DimensionError("optimizer: moment shape mismatch");
    state.first_moment = Eigen::VectorXd::Zero(weights.size());
    state.second_moment = Eigen::VectorXd::Zero(weights.size());
  }
  ++state.step;
  const double b1 = state.beta1, b2 = state.beta2;
  state.first_moment = b1 * state.first_moment + (1.0 - b1) * gradient;
  state.second_moment = b2 * state.second_moment + (1.0 - b2) * gradient.cwiseAbs2();
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  weights.array() -= state.learning_rate * (state.first_moment.array() / c1) /
                     ((state.second_moment.array() / c2).sqrt() + state.epsilon);
}

}  // namespace boundlab::nn
