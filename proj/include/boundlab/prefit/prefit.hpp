#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Core>

#include "boundlab/errors.hpp"
#include "boundlab/nn/mlp.hpp"
#include "boundlab/nn/optimizer.hpp"
#include "boundlab/prefit/dataset.hpp"

namespace boundlab::prefit {

struct SchedulePhase {
  nn::OptimizerKind kind = nn::OptimizerKind::Sgd;
  double learning_rate = 1e-2;
  int iterations = 500;
};

struct TrainingSchedule {
  std::vector<SchedulePhase> phases;

  // SGD 1e-2 x 500, Adam 1e-3 x 500, Adam 1e-4 x 500.
  static TrainingSchedule standard();
  int total_iterations() const;
  void validate() const;
};

struct PrefitConfig {
  TrainingSchedule schedule = TrainingSchedule::standard();
  int minibatch = 0;  // 0 = full batch
  bool standardize_inputs = false;
  std::uint64_t seed = 0;  // weight init and minibatch order
};

struct PrefitResult {
  nn::Mlp net;
  std::vector<double> train_loss;           // one entry per iteration, before its update
  std::vector<double> phase_train_mse;      // at the end of each phase
  std::vector<double> phase_validation_mse;
  double final_train_mse = 0.0;
  double final_validation_mse = 0.0;
};

class PrefitDiverged : public NumericalError {
 public:
  PrefitDiverged(int phase, int iteration)
      : NumericalError("prefit divergence in phase " + std::to_string(phase) + " at iteration " +
                       std::to_string(iteration)),
        phase_index(phase),
        iteration_index(iteration) {}
  int phase_index;
  int iteration_index;
};

// Mean over rows of the per-joint mean squared error.
double evaluate_mse(const nn::Mlp& net, const Eigen::MatrixXd& observations,
                    const Eigen::MatrixXd& labels);

// Trains `initial` (or a fresh random net of `spec` when initial is null) on
// the training split. With standardize_inputs the scaling is folded into the
// first layer, so the returned net always takes raw observations.
PrefitResult run_prefit(const PrefitDataset& data, const nn::MlpSpec& spec,
                        const PrefitConfig& cfg, const nn::Mlp* initial = nullptr);

void write_loss_curve_csv(const PrefitResult& result, const TrainingSchedule& schedule,
                          const std::filesystem::path& path);

}  // namespace boundlab::prefit
