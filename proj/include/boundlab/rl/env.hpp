#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "boundlab/control/loop.hpp"
#include "boundlab/control/pd.hpp"
#include "boundlab/obs/observation.hpp"
#include "boundlab/reward/reward.hpp"
#include "boundlab/rl/domain.hpp"
#include "boundlab/sim/state.hpp"

namespace boundlab::rl {

struct EnvConfig {
  obs::FeatureConfig features;
  control::ControlTiming timing;
  control::GainSet gains;
  sim::ContactParams contact;
  reward::RewardWeights weights;
  reward::GaitSignalParams gait;
  reward::TerminationRule termination;
  DomainRandomizationConfig randomization;

  void validate() const;
};

struct StepResult {
  Eigen::VectorXd observation;  // first observation of the next episode when done
  sim::SimState state;          // state after the step, before any reset
  double reward = 0.0;
  reward::RewardBreakdown breakdown;
  JointVector torque = JointVector::Zero();
  reward::Termination termination;
  bool blowup = false;  // the simulator diverged; counted as a fall
  // Length and summed reward of the episode that just ended, when done.
  int episode_steps = 0;
  double episode_return = 0.0;

  bool done() const { return blowup || termination.terminated(); }
  bool failed() const { return blowup || termination.failed(); }
  // Observation of the final state when the episode was truncated, for
  // bootstrapping. Empty otherwise.
  Eigen::VectorXd terminal_observation;
};

// One bounding environment: owns a domain draw, a simulator state and the
// observation history. Episode e of environment seed s uses domain seed
// mix_seed(s, e). Auto-resets after a terminal step.
class BoundingEnv {
 public:
  BoundingEnv(EnvConfig cfg, sim::RobotModel base_model, sim::Terrain base_terrain,
              std::uint64_t seed);

  const Eigen::VectorXd& observation() const { return observation_; }
  const sim::SimState& state() const { return state_; }
  const Domain& domain() const { return domain_; }
  const EnvConfig& config() const { return cfg_; }
  std::uint64_t episode_index() const { return episode_; }
  int episode_steps() const { return steps_; }
  double episode_return() const { return return_; }

  // Applies target joint positions for one control period.
  StepResult step(const JointVector& action);

 private:
  void begin_episode();

  EnvConfig cfg_;
  sim::RobotModel base_model_;
  sim::Terrain base_terrain_;
  std::uint64_t seed_;
  std::uint64_t episode_ = 0;

  Domain domain_;
  sim::SimState state_;
  obs::ObservationBuilder builder_;
  Eigen::VectorXd observation_;
  JointVector previous_torque_ = JointVector::Zero();
  bool first_step_ = true;
  int steps_ = 0;
  double return_ = 0.0;
};

}  // namespace boundlab::rl
