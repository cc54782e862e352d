#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "boundlab/nn/mlp.hpp"
#include "boundlab/nn/optimizer.hpp"
#include "boundlab/nn/policy.hpp"
#include "boundlab/random.hpp"

namespace boundlab::rl {

struct PpoConfig {
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double clip_epsilon = 0.2;
  int epochs = 4;
  int minibatch_size = 4096;
  double actor_learning_rate = 1e-4;
  double critic_learning_rate = 1e-4;
  int n_envs = 16;
  int rollout_length = 400;  // control steps per env per iteration
  int iterations = 4000;
  double value_coef = 0.5;
  double entropy_coef = 0.0;
  double initial_log_std = std::log(0.1);
  bool normalize_rewards = true;  // divide by the running std of the discounted return
  int workers = 1;

  void validate() const;
};

// Sample k of env e sits at column/entry e * length + k.
struct RolloutBuffer {
  int n_envs = 0;
  int length = 0;
  Eigen::MatrixXd observations;
  Eigen::MatrixXd actions;
  Eigen::VectorXd log_probs;
  Eigen::VectorXd rewards;
  Eigen::VectorXd values;
  // Value to bootstrap from after sample k: V(s_{k+1}) mid-episode, V of the
  // final observation on truncation, 0 after a fall.
  Eigen::VectorXd next_values;
  Eigen::VectorXd episode_end;  // 1 where an episode ended (fall or truncation)
  Eigen::VectorXd failed;       // 1 where it ended in a fall
  Eigen::VectorXd advantages;
  Eigen::VectorXd returns;

  int size() const { return n_envs * length; }
  void resize(int envs, int steps, int obs_size, int action_size);
};

// delta_k = r_k + gamma next_value_k - V_k,
// A_k = delta_k + gamma lambda (1 - end_k) A_{k+1}, returns = A + V.
void compute_gae(RolloutBuffer& buffer, double gamma, double lambda);

// Running std of each env's discounted return, as in VecNormalize. Rewards
// seen by GAE and the critic are r / sqrt(var + 1e-8); logged rewards stay
// raw. Steps are folded in time-major, env-minor order, so the result does
// not depend on how rollouts were scheduled.
class ReturnScaler {
 public:
  explicit ReturnScaler(int n_envs);

  // Updates the statistics from the buffer and rescales buffer.rewards.
  void apply(RolloutBuffer& buffer, double gamma);

  double variance() const { return var_; }
  double count() const { return count_; }

 private:
  Eigen::VectorXd running_;
  double mean_ = 0.0;
  double var_ = 1.0;
  double count_ = 1e-4;
};

// Zero mean, unit (population) variance in place. Leaves a constant vector
// at zero.
void normalize_advantages(Eigen::VectorXd& advantages);

struct PpoBatch {
  Eigen::MatrixXd observations;
  Eigen::MatrixXd actions;
  Eigen::VectorXd old_log_probs;
  Eigen::VectorXd advantages;
  Eigen::VectorXd returns;
};

struct PpoLoss {
  double policy = 0.0;
  double value = 0.0;
  double entropy = 0.0;
  double total = 0.0;
  double clip_fraction = 0.0;
  double approx_kl = 0.0;
};

// Clipped surrogate plus value_coef * value loss minus entropy_coef * entropy.
// Gradients w.r.t. GaussianPolicy::flat_parameters() and the critic are
// written when the pointers are non-null.
PpoLoss ppo_loss(const nn::GaussianPolicy& policy, const nn::Mlp& critic, const PpoBatch& batch,
                 const PpoConfig& cfg, Eigen::VectorXd* actor_grad = nullptr,
                 Eigen::VectorXd* critic_grad = nullptr);

// min(rho A, clip(rho, 1 - eps, 1 + eps) A)
double clipped_objective(double ratio, double advantage, double epsilon);

struct UpdateStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;
  double approx_kl = 0.0;
  int minibatches = 0;
  bool aborted = false;  // non-finite loss; networks restored
};

struct PpoOptimizers {
  nn::OptimizerState actor;
  nn::OptimizerState critic;

  static PpoOptimizers adam(const PpoConfig& cfg);
};

// Epochs of shuffled minibatch Adam steps on both networks. Advantages in the
// buffer should already be normalized. On a non-finite loss the networks and
// optimizer states are restored to their entry values.
UpdateStats ppo_update(nn::GaussianPolicy& policy, nn::Mlp& critic, PpoOptimizers& optimizers,
                       const RolloutBuffer& buffer, const PpoConfig& cfg, Rng& rng);

}  // namespace boundlab::rl
