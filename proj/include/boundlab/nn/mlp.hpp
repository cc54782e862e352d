#pragma once

#include <vector>

#include <Eigen/Core>

#include "boundlab/random.hpp"

namespace boundlab::nn {

// Layer widths from input to output. Hidden layers use tanh, the output layer
// is affine.
struct MlpSpec {
  std::vector<int> layer_sizes;

  int input_size() const { return layer_sizes.front(); }
  int output_size() const { return layer_sizes.back(); }
  int num_layers() const { return static_cast<int>(layer_sizes.size()) - 1; }
  int num_parameters() const;
  // Throws ConfigError unless there are >= 1 hidden layer and all widths > 0.
  void validate() const;
};

// Per-layer activations kept for the backward pass; column j is sample j.
struct ForwardCache {
  std::vector<Eigen::MatrixXd> inputs;  // input to each layer
  Eigen::MatrixXd output;
};

// All parameters live in one flat vector, layer by layer: the out x in weight
// matrix (column-major) followed by its bias. Gradients share the layout.
class Mlp {
 public:
  Mlp() = default;
  explicit Mlp(MlpSpec spec);  // zero parameters

  // Uniform in ±sqrt(6 / (fan_in + fan_out)), zero biases.
  static Mlp random(const MlpSpec& spec, Rng& rng);

  const MlpSpec& spec() const { return spec_; }
  int num_layers() const { return spec_.num_layers(); }

  Eigen::Map<Eigen::MatrixXd> weight(int layer);
  Eigen::Map<const Eigen::MatrixXd> weight(int layer) const;
  Eigen::Map<Eigen::VectorXd> bias(int layer);
  Eigen::Map<const Eigen::VectorXd> bias(int layer) const;

  Eigen::VectorXd& parameters() { return params_; }
  const Eigen::VectorXd& parameters() const { return params_; }

  // Throws DimensionError on a width mismatch.
  Eigen::VectorXd forward(const Eigen::VectorXd& input) const;
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& inputs, ForwardCache* cache = nullptr) const;

  // Gradient of a scalar loss w.r.t. the parameters given dLoss/dOutput for
  // the batch in `cache`.
  Eigen::VectorXd backward(const ForwardCache& cache, const Eigen::MatrixXd& grad_output) const;

 private:
  int offset(int layer) const { return offsets_[layer]; }

  MlpSpec spec_;
  std::vector<int> offsets_;
  Eigen::VectorXd params_;
};

// Mean over samples and outputs of the squared error, and its gradient w.r.t.
// the predictions. Columns are samples.
double mse(const Eigen::MatrixXd& prediction, const Eigen::MatrixXd& target);
Eigen::MatrixXd mse_gradient(const Eigen::MatrixXd& prediction, const Eigen::MatrixXd& target);

}  // namespace boundlab::nn
