#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "boundlab/control/slip.hpp"
#include "boundlab/nn/mlp.hpp"
#include "boundlab/prefit/dataset.hpp"
#include "boundlab/prefit/prefit.hpp"
#include "boundlab/rl/env.hpp"
#include "boundlab/rl/ppo.hpp"
#include "boundlab/rl/trainer.hpp"
#include "boundlab/sim/robot_model.hpp"
#include "boundlab/sim/terrain.hpp"

namespace boundlab::app {

struct EvalConfig {
  int episodes = 4;
  bool randomize = false;  // full domain randomization instead of the nominal domain
  bool full_com = false;   // metrics use the multi-body CoM instead of the torso origin
};

// Everything a command needs. Defaults are the library defaults.
struct RunConfig {
  std::uint64_t seed = 0;
  std::string output_dir = "boundlab_out";
  int workers = 1;

  sim::RobotModel model = sim::RobotModel::jueying_mini();
  sim::Terrain terrain = sim::Terrain::flat();
  rl::EnvConfig env;
  control::SlipParams slip;
  std::vector<int> hidden_sizes{128, 128};
  prefit::CollectConfig collect;
  prefit::PrefitConfig prefit;
  rl::PpoConfig ppo;
  int checkpoint_every = 50;
  EvalConfig eval;

  nn::MlpSpec actor_spec() const;
  nn::MlpSpec critic_spec() const;
  // Module configs with the shared sections (features, timing, gains, SLIP,
  // termination, worker count, seed) filled in.
  prefit::CollectConfig collect_config() const;
  prefit::PrefitConfig prefit_config() const;
  rl::TrainConfig train_config() const;

  void validate() const;
};

struct ConfigKey {
  std::string key;  // section.name
  std::function<std::string()> get;
  std::function<void(const std::string&)> set;  // throws ConfigError on a bad value
};

// Every recognised key, bound to `cfg`, in output order.
std::vector<ConfigKey> config_keys(RunConfig& cfg);

// `section.key = value` lines; '#' starts a comment. Unknown keys, duplicate
// keys and bad values throw ConfigError naming the line.
void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin = "config");
RunConfig load_config(const std::filesystem::path& path);

// Every key with its resolved value; parsing this reproduces the config.
std::string resolved_config_text(const RunConfig& cfg);

// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace boundlab::app
