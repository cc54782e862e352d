#include "boundlab/rl/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "boundlab/common.hpp"
#include "boundlab/errors.hpp"

namespace boundlab::rl {

void PpoConfig::validate() const {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("ppo: gamma must be in (0, 1]");
  if (!(gae_lambda >= 0.0 && gae_lambda <= 1.0)) throw ConfigError("ppo: gae_lambda must be in [0, 1]");
  if (!(clip_epsilon > 0.0)) throw ConfigError("ppo: clip_epsilon must be > 0");
  if (epochs < 1 || minibatch_size < 1) throw ConfigError("ppo: epochs and minibatch_size must be >= 1");
  if (actor_learning_rate < 0.0 || critic_learning_rate < 0.0)
    throw ConfigError("ppo: learning rates must be >= 0");
  if (n_envs < 1 || rollout_length < 1) throw ConfigError("ppo: n_envs and rollout_length must be >= 1");
  if (iterations < 0) throw ConfigError("ppo: iterations must be >= 0");
  if (value_coef < 0.0 || entropy_coef < 0.0) throw ConfigError("ppo: loss coefficients must be >= 0");
  if (workers < 1) throw ConfigError("ppo: workers must be >= 1");
}

void RolloutBuffer::resize(int envs, int steps, int obs_size, int action_size) {
  n_envs = envs;
  length = steps;
  const int n = envs * steps;
  observations.resize(obs_size, n);
  actions.resize(action_size, n);
  for (auto* v : {&log_probs, &rewards, &values, &next_values, &episode_end, &failed, &advantages,
                  &returns})
    v->setZero(n);
}

void compute_gae(RolloutBuffer& buffer, double gamma, double lambda) {
  const int n = buffer.size();
  buffer.advantages.resize(n);
  buffer.returns.resize(n);
  for (int e = 0; e < buffer.n_envs; ++e) {
    double next_advantage = 0.0;
    for (int k = buffer.length - 1; k >= 0; --k) {
      const int i = e * buffer.length + k;
      const double cont = 1.0 - buffer.episode_end(i);
      const double delta = buffer.rewards(i) + gamma * buffer.next_values(i) - buffer.values(i);
      // The last sample of a rollout has no successor inside the buffer.
      const double carry = k + 1 < buffer.length ? cont * next_advantage : 0.0;
      const double a = delta + gamma * lambda * carry;
      buffer.advantages(i) = a;
      buffer.returns(i) = a + buffer.values(i);
      next_advantage = a;
    }
  }
}

ReturnScaler::ReturnScaler(int n_envs) : running_(Eigen::VectorXd::Zero(n_envs)) {}

void ReturnScaler::apply(RolloutBuffer& buffer, double gamma) {
  if (buffer.n_envs != running_.size()) throw DimensionError("ReturnScaler: env count mismatch");
  const int n = buffer.n_envs;
  const Eigen::VectorXd raw = buffer.rewards;
  for (int k = 0; k < buffer.length; ++k) {
    for (int e = 0; e < n; ++e) running_(e) = running_(e) * gamma + raw(e * buffer.length + k);
    // Chan et al. batch merge.
    const double batch_mean = running_.mean();
    const double batch_var = (running_.array() - batch_mean).square().mean();
    const double total = count_ + n;
    const double delta = batch_mean - mean_;
    mean_ += delta * n / total;
    var_ = (var_ * count_ + batch_var * n + delta * delta * count_ * n / total) / total;
    count_ = total;
    const double inv = 1.0 / std::sqrt(var_ + 1e-8);
    for (int e = 0; e < n; ++e) {
      const int i = e * buffer.length + k;
      buffer.rewards(i) = raw(i) * inv;
      if (buffer.episode_end(i) != 0.0) running_(e) = 0.0;
    }
  }
}

void normalize_advantages(Eigen::VectorXd& a) {
  if (a.size() == 0) return;
  const double mean = a.mean();
  a.array() -= mean;
  const double var = a.squaredNorm() / static_cast<double>(a.size());
  if (var > 0.0) a /= std::sqrt(var);
}

double clipped_objective(double ratio, double advantage, double epsilon) {
  const double clipped = std::clamp(ratio, 1.0 - epsilon, 1.0 + epsilon);
  return std::min(ratio * advantage, clipped * advantage);
}

PpoLoss ppo_loss(const nn::GaussianPolicy& policy, const nn::Mlp& critic, const PpoBatch& batch,
                 const PpoConfig& cfg, Eigen::VectorXd* actor_grad, Eigen::VectorXd* critic_grad) {
  const int n = static_cast<int>(batch.observations.cols());
  if (n == 0) throw DataError("ppo_loss: empty batch");
  const int m = policy.action_size();
  const double inv_n = 1.0 / n;

  nn::ForwardCache actor_cache;
  const Eigen::MatrixXd mu = policy.mean.forward_batch(batch.observations, &actor_cache);
  const Eigen::VectorXd inv_std = (-policy.log_std).array().exp();
  const Eigen::MatrixXd z = inv_std.asDiagonal() * (batch.actions - mu);
  const double log_norm = policy.log_std.sum() + 0.5 * m * std::log(2.0 * kPi);

  PpoLoss loss;
  Eigen::MatrixXd grad_mu(m, n);
  Eigen::VectorXd grad_log_std = Eigen::VectorXd::Zero(m);
  int clipped = 0;
  for (int j = 0; j < n; ++j) {
    const double logp = -0.5 * z.col(j).squaredNorm() - log_norm;
    const double diff = logp - batch.old_log_probs(j);
    const double ratio = std::exp(diff);
    const double adv = batch.advantages(j);
    const double unclipped = ratio * adv;
    const double obj = clipped_objective(ratio, adv, cfg.clip_epsilon);
    loss.policy -= obj * inv_n;
    loss.approx_kl -= diff * inv_n;
    if (std::abs(ratio - 1.0) > cfg.clip_epsilon) ++clipped;
    // d(-obj)/d logp: the clipped branch is constant in the parameters.
    const double g = unclipped <= obj ? -adv * ratio * inv_n : 0.0;
    grad_mu.col(j) = g * inv_std.cwiseProduct(z.col(j));
    grad_log_std.array() += g * (z.col(j).array().square() - 1.0);
  }
  loss.clip_fraction = static_cast<double>(clipped) * inv_n;
  loss.entropy = policy.entropy();

  nn::ForwardCache critic_cache;
  const Eigen::MatrixXd v = critic.forward_batch(batch.observations, &critic_cache);
  const Eigen::RowVectorXd err = v.row(0) - batch.returns.transpose();
  loss.value = err.squaredNorm() * inv_n;
  loss.total = loss.policy + cfg.value_coef * loss.value - cfg.entropy_coef * loss.entropy;

  if (actor_grad) {
    actor_grad->resize(policy.mean.parameters().size() + m);
    actor_grad->head(policy.mean.parameters().size()) = policy.mean.backward(actor_cache, grad_mu);
    // entropy = sum(log_std) + const
    actor_grad->tail(m) = grad_log_std.array() - cfg.entropy_coef;
  }
  if (critic_grad) *critic_grad = critic.backward(critic_cache, (2.0 * cfg.value_coef * inv_n) * err);
  return loss;
}

PpoOptimizers PpoOptimizers::adam(const PpoConfig& cfg) {
  return {nn::OptimizerState::adam(cfg.actor_learning_rate),
          nn::OptimizerState::adam(cfg.critic_learning_rate)};
}

UpdateStats ppo_update(nn::GaussianPolicy& policy, nn::Mlp& critic, PpoOptimizers& optimizers,
                       const RolloutBuffer& buffer, const PpoConfig& cfg, Rng& rng) {
  const nn::GaussianPolicy policy_snapshot = policy;
  const nn::Mlp critic_snapshot = critic;
  const PpoOptimizers optimizer_snapshot = optimizers;

  const int n = buffer.size();
  // ceil(n / minibatch_size) near-equal minibatches so no sample is dropped.
  const int batches = (n + cfg.minibatch_size - 1) / cfg.minibatch_size;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  UpdateStats stats;
  PpoBatch mb;
  Eigen::VectorXd actor_grad, critic_grad, actor_params;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (int b = 0; b < batches; ++b) {
      const int start = static_cast<int>(static_cast<long long>(n) * b / batches);
      const int batch_size = static_cast<int>(static_cast<long long>(n) * (b + 1) / batches) - start;
      mb.observations.resize(buffer.observations.rows(), batch_size);
      mb.actions.resize(buffer.actions.rows(), batch_size);
      mb.old_log_probs.resize(batch_size);
      mb.advantages.resize(batch_size);
      mb.returns.resize(batch_size);
      for (int j = 0; j < batch_size; ++j) {
        const int i = order[start + j];
        mb.observations.col(j) = buffer.observations.col(i);
        mb.actions.col(j) = buffer.actions.col(i);
        mb.old_log_probs(j) = buffer.log_probs(i);
        mb.advantages(j) = buffer.advantages(i);
        mb.returns(j) = buffer.returns(i);
      }
      const PpoLoss l = ppo_loss(policy, critic, mb, cfg, &actor_grad, &critic_grad);
      if (!std::isfinite(l.total) || !actor_grad.allFinite() || !critic_grad.allFinite()) {
        policy = policy_snapshot;
        critic = critic_snapshot;
        optimizers = optimizer_snapshot;
        stats.aborted = true;
        return stats;
      }
      actor_params = policy.flat_parameters();
      nn::optimizer_step(optimizers.actor, actor_params, actor_grad);
      policy.set_flat_parameters(actor_params);
      nn::optimizer_step(optimizers.critic, critic.parameters(), critic_grad);
      stats.policy_loss += l.policy;
      stats.value_loss += l.value;
      stats.entropy += l.entropy;
      stats.clip_fraction += l.clip_fraction;
      stats.approx_kl += l.approx_kl;
      ++stats.minibatches;
    }
  }
  if (stats.minibatches > 0) {
    const double k = 1.0 / stats.minibatches;
    stats.policy_loss *= k;
    stats.value_loss *= k;
    stats.entropy *= k;
    stats.clip_fraction *= k;
    stats.approx_kl *= k;
  }
  return stats;
}

}  // namespace boundlab::rl
