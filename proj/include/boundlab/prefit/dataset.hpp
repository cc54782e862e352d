#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "boundlab/control/loop.hpp"
#include "boundlab/control/pd.hpp"
#include "boundlab/control/slip.hpp"
#include "boundlab/errors.hpp"
#include "boundlab/obs/observation.hpp"
#include "boundlab/reward/reward.hpp"
#include "boundlab/sim/robot_model.hpp"
#include "boundlab/sim/simulator.hpp"
#include "boundlab/sim/terrain.hpp"

namespace boundlab::prefit {

// Column j of `observations` / `labels` is row j of the dataset, in time order.
// The first `train_rows` columns are the training split, the rest validation.
struct PrefitDataset {
  obs::FeatureMode mode = obs::FeatureMode::Raw;
  Eigen::MatrixXd observations;
  Eigen::MatrixXd labels;
  int train_rows = 0;

  int rows() const { return static_cast<int>(observations.cols()); }
  int validation_rows() const { return rows() - train_rows; }
  int row_width() const { return static_cast<int>(observations.rows() + labels.rows()); }

  auto train_observations() const { return observations.leftCols(train_rows); }
  auto train_labels() const { return labels.leftCols(train_rows); }
  auto validation_observations() const { return observations.rightCols(validation_rows()); }
  auto validation_labels() const { return labels.rightCols(validation_rows()); }
};

// The SLIP rollout hit a failure condition while recording.
class ReferenceControllerFell : public DataError {
 public:
  ReferenceControllerFell(int episode, int step, const std::string& reason)
      : DataError("reference controller fell in episode " + std::to_string(episode) +
                  " at control step " + std::to_string(step) + " (" + reason + ")"),
        episode_index(episode),
        step_index(step) {}
  int episode_index;
  int step_index;
};

struct CollectConfig {
  int control_steps = 60000;       // total rows
  int episode_steps = 800;         // rows per seeded episode
  double validation_fraction = 0.1;
  int workers = 1;
  obs::FeatureConfig features;
  control::ControlTiming timing;
  control::GainSet gains;
  control::SlipParams slip;
  sim::ResetPerturbation perturbation;
  reward::TerminationRule termination;

  void validate(const sim::RobotModel& model) const;
};

// Runs seeded SLIP episodes (episode e uses mix_seed(seed, e)) and records,
// every control period, the observation at t and the reference command at
// t + period as the label. Throws ReferenceControllerFell on a failure
// termination.
PrefitDataset collect_dataset(const CollectConfig& cfg, std::uint64_t seed,
                              const sim::RobotModel& model, const sim::Terrain& terrain,
                              const sim::ContactParams& contact);

std::vector<std::string> label_names();

// CSV: a `# rows=<n> train=<m> features=<mode>` line, a header naming every
// column, then one row per sample (observation then label columns).
void write_dataset_csv(const PrefitDataset& data, const std::filesystem::path& path);
PrefitDataset read_dataset_csv(const std::filesystem::path& path);

}  // namespace boundlab::prefit
