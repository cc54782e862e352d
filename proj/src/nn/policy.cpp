#include "boundlab/nn/policy.hpp"

#include <cmath>

#include "boundlab/common.hpp"
#include "boundlab/errors.hpp"

namespace boundlab::nn {

GaussianPolicy GaussianPolicy::random(const MlpSpec& spec, Rng& rng, double initial_log_std) {
  GaussianPolicy p;
  p.mean = Mlp::random(spec, rng);
  p.log_std = Eigen::VectorXd::Constant(spec.output_size(), initial_log_std);
  return p;
}

Eigen::VectorXd GaussianPolicy::sample(const Eigen::VectorXd& mu, Rng& rng) const {
  Eigen::VectorXd a(mu.size());
  for (int i = 0; i < mu.size(); ++i) a(i) = mu(i) + std::exp(log_std(i)) * standard_normal(rng);
  return a;
}

double GaussianPolicy::log_prob(const Eigen::VectorXd& mu, const Eigen::VectorXd& action) const {
  const double half_log_2pi = 0.5 * std::log(2.0 * kPi);
  double lp = 0.0;
  for (int i = 0; i < mu.size(); ++i) {
    const double z = (action(i) - mu(i)) * std::exp(-log_std(i));
    lp += -0.5 * z * z - log_std(i) - half_log_2pi;
  }
  return lp;
}

double GaussianPolicy::entropy() const {
  return log_std.sum() + 0.5 * static_cast<double>(log_std.size()) * (1.0 + std::log(2.0 * kPi));
}

Eigen::VectorXd GaussianPolicy::flat_parameters() const {
  Eigen::VectorXd flat(mean.parameters().size() + log_std.size());
  flat << mean.parameters(), log_std;
  return flat;
}

void GaussianPolicy::set_flat_parameters(const Eigen::VectorXd& flat) {
  const auto n = mean.parameters().size();
  if (flat.size() != n + log_std.size()) throw DimensionError("policy: parameter count mismatch");
  mean.parameters() = flat.head(n);
  log_std = flat.tail(log_std.size());
}

}  // namespace boundlab::nn
