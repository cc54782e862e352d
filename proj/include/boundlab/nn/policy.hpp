#pragma once

#include <Eigen/Core>

#include "boundlab/nn/mlp.hpp"
#include "boundlab/random.hpp"

namespace boundlab::nn {

// Diagonal Gaussian over actions with a state-independent log std.
struct GaussianPolicy {
  Mlp mean;
  Eigen::VectorXd log_std;

  static GaussianPolicy random(const MlpSpec& spec, Rng& rng, double initial_log_std);

  int action_size() const { return static_cast<int>(log_std.size()); }

  Eigen::VectorXd sample(const Eigen::VectorXd& mu, Rng& rng) const;
  double log_prob(const Eigen::VectorXd& mu, const Eigen::VectorXd& action) const;
  double entropy() const;

  // Network parameters followed by log_std.
  Eigen::VectorXd flat_parameters() const;
  void set_flat_parameters(const Eigen::VectorXd& flat);
};

}  // namespace boundlab::nn
