#include "boundlab/rl/rollout.hpp"

#include "boundlab/errors.hpp"
#include "boundlab/parallel.hpp"

namespace boundlab::rl {

RolloutStats collect_rollouts(const nn::GaussianPolicy& policy, const nn::Mlp& critic,
                              std::vector<BoundingEnv>& envs, std::vector<Rng>& rngs, int length,
                              int workers, RolloutBuffer& buffer) {
  const int n_envs = static_cast<int>(envs.size());
  if (n_envs == 0 || static_cast<int>(rngs.size()) != n_envs)
    throw ConfigError("collect_rollouts: need one RNG per environment");
  const int obs_size = static_cast<int>(envs.front().observation().size());
  if (obs_size != policy.mean.spec().input_size() || obs_size != critic.spec().input_size())
    throw DimensionError("collect_rollouts: network input does not match the observation size");
  buffer.resize(n_envs, length, obs_size, policy.action_size());

  std::vector<std::vector<EpisodeRecord>> per_env(n_envs);
  parallel_for(n_envs, workers, [&](int e) {
    BoundingEnv& env = envs[e];
    for (int k = 0; k < length; ++k) {
      const int i = e * length + k;
      const Eigen::VectorXd obs = env.observation();
      const Eigen::VectorXd mu = policy.mean.forward(obs);
      const Eigen::VectorXd action = policy.sample(mu, rngs[e]);
      buffer.observations.col(i) = obs;
      buffer.actions.col(i) = action;
      buffer.log_probs(i) = policy.log_prob(mu, action);
      buffer.values(i) = critic.forward(obs)(0);

      const StepResult r = env.step(action);
      buffer.rewards(i) = r.reward;
      if (r.done()) {
        buffer.episode_end(i) = 1.0;
        buffer.failed(i) = r.failed() ? 1.0 : 0.0;
        buffer.next_values(i) = r.failed() ? 0.0 : critic.forward(r.terminal_observation)(0);
        per_env[e].push_back({e, r.episode_steps, r.episode_return, r.failed(), r.blowup});
      } else if (k + 1 == length) {
        buffer.next_values(i) = critic.forward(r.observation)(0);
      }
    }
    // Mid-episode successors are the next stored values.
    for (int k = 0; k + 1 < length; ++k) {
      const int i = e * length + k;
      if (buffer.episode_end(i) == 0.0) buffer.next_values(i) = buffer.values(i + 1);
    }
  });

  RolloutStats stats;
  for (auto& v : per_env)
    for (auto& ep : v) {
      stats.blowups += ep.blowup ? 1 : 0;
      stats.episodes.push_back(ep);
    }
  stats.mean_step_reward = buffer.rewards.mean();
  return stats;
}

}  // namespace boundlab::rl
