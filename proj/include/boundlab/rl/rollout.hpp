#pragma once

#include <vector>

#include "boundlab/nn/mlp.hpp"
#include "boundlab/nn/policy.hpp"
#include "boundlab/random.hpp"
#include "boundlab/rl/env.hpp"
#include "boundlab/rl/ppo.hpp"

namespace boundlab::rl {

struct EpisodeRecord {
  int env = 0;
  int steps = 0;
  double total_reward = 0.0;
  bool failed = false;
  bool blowup = false;
};

struct RolloutStats {
  std::vector<EpisodeRecord> episodes;  // completed during the rollout, env order
  int blowups = 0;
  double mean_step_reward = 0.0;
};

// Each env steps `length` times with actions sampled around the actor mean
// using its own RNG (rngs[e]). Workers only split envs, so the buffer does not
// depend on the worker count.
RolloutStats collect_rollouts(const nn::GaussianPolicy& policy, const nn::Mlp& critic,
                              std::vector<BoundingEnv>& envs, std::vector<Rng>& rngs, int length,
                              int workers, RolloutBuffer& buffer);

}  // namespace boundlab::rl
