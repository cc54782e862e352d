#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Core>

namespace boundlab::nn {

enum class OptimizerKind { Sgd, Adam };

OptimizerKind parse_optimizer_kind(const std::string& text);
std::string to_string(OptimizerKind kind);

struct OptimizerState {
  OptimizerKind kind = OptimizerKind::Adam;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  Eigen::VectorXd first_moment;
  Eigen::VectorXd second_moment;
  std::uint64_t step = 0;

  static OptimizerState sgd(double lr);
  static OptimizerState adam(double lr);
};

// SGD: w -= lr g. Adam: bias-corrected moments. Moments are (re)sized on the
// first call. Throws DimensionError if shapes disagree.
void optimizer_step(OptimizerState& state, Eigen::VectorXd& weights,
                    const Eigen::VectorXd& gradient);

}  // namespace boundlab::nn
