#include "boundlab/prefit/prefit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "boundlab/nn/weights_csv.hpp"
#include "boundlab/random.hpp"

namespace boundlab::prefit {

TrainingSchedule TrainingSchedule::standard() {
  return TrainingSchedule{{{nn::OptimizerKind::Sgd, 1e-2, 500},
                           {nn::OptimizerKind::Adam, 1e-3, 500},
                           {nn::OptimizerKind::Adam, 1e-4, 500}}};
}

int TrainingSchedule::total_iterations() const {
  int n = 0;
  for (const auto& p : phases) n += p.iterations;
  return n;
}

void TrainingSchedule::validate() const {
  if (phases.empty()) throw ConfigError("prefit schedule has no phases");
  for (const auto& p : phases) {
    if (p.iterations < 1) throw ConfigError("prefit schedule: iteration counts must be > 0");
    if (!(p.learning_rate > 0.0)) throw ConfigError("prefit schedule: learning rate must be > 0");
  }
}

double evaluate_mse(const nn::Mlp& net, const Eigen::MatrixXd& observations,
                    const Eigen::MatrixXd& labels) {
  if (observations.cols() != labels.cols()) throw DimensionError("evaluate_mse: row mismatch");
  if (observations.cols() == 0) return 0.0;
  return nn::mse(net.forward_batch(observations), labels);
}

namespace {

// Rescales the first layer so that net(standardized x) == folded(x).
void fold_standardization(nn::Mlp& net, const Eigen::VectorXd& mean, const Eigen::VectorXd& inv_std) {
  auto w = net.weight(0);
  w = w * inv_std.asDiagonal();
  net.bias(0) -= w * mean;
}

}  // namespace

PrefitResult run_prefit(const PrefitDataset& data, const nn::MlpSpec& spec,
                        const PrefitConfig& cfg, const nn::Mlp* initial) {
  // An affine net (no hidden layer) is accepted here; configured actors are
  // checked with MlpSpec::validate upstream.
  if (spec.layer_sizes.size() < 2 ||
      std::any_of(spec.layer_sizes.begin(), spec.layer_sizes.end(), [](int w) { return w <= 0; }))
    throw ConfigError("prefit: invalid network widths");
  cfg.schedule.validate();
  if (data.train_rows < 1) throw DataError("prefit: empty training split");
  if (spec.input_size() != data.observations.rows())
    throw DimensionError("prefit: network input " + std::to_string(spec.input_size()) +
                         " does not match dataset width " +
                         std::to_string(data.observations.rows()));
  if (spec.output_size() != data.labels.rows())
    throw DimensionError("prefit: network output does not match label width");
  if (cfg.minibatch < 0) throw ConfigError("prefit: minibatch must be >= 0");

  Rng rng(mix_seed(cfg.seed, 0x7072656669ULL));
  PrefitResult result;
  result.net = initial ? *initial : nn::Mlp::random(spec, rng);
  if (result.net.spec().layer_sizes != spec.layer_sizes)
    throw DimensionError("prefit: initial network does not match the spec");

  Eigen::MatrixXd X = data.train_observations();
  const Eigen::MatrixXd Y = data.train_labels();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(X.rows());
  Eigen::VectorXd inv_std = Eigen::VectorXd::Ones(X.rows());
  if (cfg.standardize_inputs) {
    mean = X.rowwise().mean();
    const Eigen::VectorXd var = (X.colwise() - mean).array().square().rowwise().mean();
    for (int i = 0; i < var.size(); ++i) inv_std(i) = var(i) > 1e-12 ? 1.0 / std::sqrt(var(i)) : 1.0;
    X = inv_std.asDiagonal() * (X.colwise() - mean);
    // Work in standardized coordinates: undo the fold on the starting weights.
    auto w = result.net.weight(0);
    result.net.bias(0) += w * mean;
    w = w * inv_std.cwiseInverse().asDiagonal();
  }

  const int n = static_cast<int>(X.cols());
  const int batch = cfg.minibatch == 0 ? n : std::min(cfg.minibatch, n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  int cursor = n;
  Eigen::MatrixXd xb, yb;

  result.train_loss.reserve(cfg.schedule.total_iterations());
  for (int p = 0; p < static_cast<int>(cfg.schedule.phases.size()); ++p) {
    const auto& phase = cfg.schedule.phases[p];
    nn::OptimizerState opt = phase.kind == nn::OptimizerKind::Sgd
                                 ? nn::OptimizerState::sgd(phase.learning_rate)
                                 : nn::OptimizerState::adam(phase.learning_rate);
    for (int it = 0; it < phase.iterations; ++it) {
      nn::ForwardCache cache;
      Eigen::MatrixXd pred;
      double loss;
      if (batch == n) {
        pred = result.net.forward_batch(X, &cache);
        loss = nn::mse(pred, Y);
        result.train_loss.push_back(loss);
        if (!std::isfinite(loss)) throw PrefitDiverged(p, it);
        optimizer_step(opt, result.net.parameters(), result.net.backward(cache, nn::mse_gradient(pred, Y)));
      } else {
        if (cursor + batch > n) {
          std::shuffle(order.begin(), order.end(), rng);
          cursor = 0;
        }
        xb.resize(X.rows(), batch);
        yb.resize(Y.rows(), batch);
        for (int j = 0; j < batch; ++j) {
          xb.col(j) = X.col(order[cursor + j]);
          yb.col(j) = Y.col(order[cursor + j]);
        }
        cursor += batch;
        pred = result.net.forward_batch(xb, &cache);
        loss = nn::mse(pred, yb);
        result.train_loss.push_back(loss);
        if (!std::isfinite(loss)) throw PrefitDiverged(p, it);
        optimizer_step(opt, result.net.parameters(), result.net.backward(cache, nn::mse_gradient(pred, yb)));
      }
      if (!result.net.parameters().allFinite()) throw PrefitDiverged(p, it);
    }
    nn::Mlp folded = result.net;
    if (cfg.standardize_inputs) fold_standardization(folded, mean, inv_std);
    result.phase_train_mse.push_back(evaluate_mse(folded, data.train_observations(), Y));
    result.phase_validation_mse.push_back(
        evaluate_mse(folded, data.validation_observations(), data.validation_labels()));
  }
  if (cfg.standardize_inputs) fold_standardization(result.net, mean, inv_std);
  result.final_train_mse = result.phase_train_mse.back();
  result.final_validation_mse = result.phase_validation_mse.back();
  return result;
}

void write_loss_curve_csv(const PrefitResult& result, const TrainingSchedule& schedule,
                          const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "iteration,phase,optimizer,learning_rate,train_mse\n";
  int it = 0;
  for (int p = 0; p < static_cast<int>(schedule.phases.size()); ++p) {
    const auto& phase = schedule.phases[p];
    for (int k = 0; k < phase.iterations && it < static_cast<int>(result.train_loss.size()); ++k, ++it)
      out << it + 1 << ',' << p << ',' << nn::to_string(phase.kind) << ','
          << nn::format_number(phase.learning_rate) << ','
          << nn::format_number(result.train_loss[it]) << '\n';
  }
}

}  // namespace boundlab::prefit
