#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "boundlab/nn/mlp.hpp"
#include "boundlab/nn/optimizer.hpp"
#include "boundlab/nn/policy.hpp"
#include "boundlab/rl/env.hpp"
#include "boundlab/rl/ppo.hpp"
#include "boundlab/rl/rollout.hpp"
#include "boundlab/sim/robot_model.hpp"
#include "boundlab/sim/terrain.hpp"

namespace boundlab::rl {

struct TrainConfig {
  PpoConfig ppo;
  EnvConfig env;
  nn::MlpSpec actor_spec{{34, 128, 128, 12}};
  nn::MlpSpec critic_spec{{34, 128, 128, 1}};
  sim::RobotModel model = sim::RobotModel::jueying_mini();
  sim::Terrain terrain = sim::Terrain::flat();
  std::uint64_t seed = 0;
  int checkpoint_every = 50;  // plus iteration 0 and the final one; 0 = those two only
  std::string config_hash;    // recorded in checkpoint metadata

  void validate() const;
};

struct IterationLog {
  int iteration = 0;  // 1-based
  double mean_episode_reward = 0.0;
  double mean_episode_length = 0.0;  // control steps
  int episodes = 0;  // completed this iteration; 0 means the means were carried over
  int falls = 0;
  int blowups = 0;
  double mean_step_reward = 0.0;
  UpdateStats update;
};

struct TrainResult {
  nn::GaussianPolicy policy;
  nn::Mlp critic;
  PpoOptimizers optimizers;
  std::vector<IterationLog> curve;
};

// Seeds derived from the master seed.
std::uint64_t env_seed(std::uint64_t master, int env);
std::uint64_t action_seed(std::uint64_t master, int env);

// collect -> GAE -> normalize -> update, ppo.iterations times. The actor mean
// starts from `initial_actor` when given (log std from the config), else from
// a seeded random init; the critic is always random. With a non-empty
// out_dir, writes checkpoints/iter_<n>/ and reward_curve.csv; progress lines
// go to `log`.
TrainResult train(const TrainConfig& cfg, const nn::Mlp* initial_actor,
                  const std::filesystem::path& out_dir, std::ostream* log);

std::string progress_line(const IterationLog& it);

void write_reward_curve_header(std::ostream& out);
void write_reward_curve_row(std::ostream& out, const IterationLog& it);

struct CheckpointMeta {
  int iteration = 0;
  std::string config_hash;
  std::uint64_t seed = 0;
  int n_envs = 0;
};

void write_checkpoint(const std::filesystem::path& dir, const nn::GaussianPolicy& policy,
                      const nn::Mlp& critic, const PpoOptimizers& optimizers,
                      const CheckpointMeta& meta);

struct Checkpoint {
  nn::GaussianPolicy policy;
  nn::Mlp critic;
  PpoOptimizers optimizers;
  CheckpointMeta meta;
};

// Throws DataError on missing or malformed files.
Checkpoint read_checkpoint(const std::filesystem::path& dir);

std::string optimizer_to_text(const nn::OptimizerState& s, const std::string& name);
nn::OptimizerState optimizer_from_text(const std::string& text, const std::string& name);

}  // namespace boundlab::rl
