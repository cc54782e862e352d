#include "boundlab/rl/trainer.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "boundlab/errors.hpp"
#include "boundlab/nn/weights_csv.hpp"

namespace boundlab::rl {

void TrainConfig::validate() const {
  ppo.validate();
  env.validate();
  actor_spec.validate();
  critic_spec.validate();
  model.validate();
  terrain.validate();
  if (actor_spec.input_size() != env.features.size() || critic_spec.input_size() != env.features.size())
    throw ConfigError("network input width " + std::to_string(actor_spec.input_size()) +
                      " does not match the observation size " + std::to_string(env.features.size()));
  if (actor_spec.output_size() != kNumJoints) throw ConfigError("actor output must be 12");
  if (critic_spec.output_size() != 1) throw ConfigError("critic output must be 1");
  if (checkpoint_every < 0) throw ConfigError("checkpoint_every must be >= 0");
}

std::uint64_t env_seed(std::uint64_t master, int env) { return mix_seed(master, 0x1000 + env); }
std::uint64_t action_seed(std::uint64_t master, int env) { return mix_seed(master, 0x2000 + env); }

std::string progress_line(const IterationLog& it) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "iter=%d reward=%.4f ep_len=%.2f clip_frac=%.4f", it.iteration,
                it.mean_episode_reward, it.mean_episode_length, it.update.clip_fraction);
  return buf;
}

void write_reward_curve_header(std::ostream& out) {
  out << "iteration,mean_episode_reward,mean_episode_length,episodes,falls,blowups,"
         "mean_step_reward,policy_loss,value_loss,clip_fraction,approx_kl\n";
}

void write_reward_curve_row(std::ostream& out, const IterationLog& it) {
  using nn::format_number;
  out << it.iteration << ',' << format_number(it.mean_episode_reward) << ','
      << format_number(it.mean_episode_length) << ',' << it.episodes << ',' << it.falls << ','
      << it.blowups << ',' << format_number(it.mean_step_reward) << ','
      << format_number(it.update.policy_loss) << ',' << format_number(it.update.value_loss) << ','
      << format_number(it.update.clip_fraction) << ',' << format_number(it.update.approx_kl) << '\n';
}

std::string optimizer_to_text(const nn::OptimizerState& s, const std::string& name) {
  using nn::format_number;
  std::string out = "# optimizer " + name + " kind=" + nn::to_string(s.kind) +
                    " lr=" + format_number(s.learning_rate) + " beta1=" + format_number(s.beta1) +
                    " beta2=" + format_number(s.beta2) + " eps=" + format_number(s.epsilon) +
                    " step=" + std::to_string(s.step) +
                    " size=" + std::to_string(s.first_moment.size()) + "\n";
  for (const auto* v : {&s.first_moment, &s.second_moment}) {
    for (int i = 0; i < v->size(); ++i) {
      if (i) out += ',';
      out += format_number((*v)(i));
    }
    out += '\n';
  }
  return out;
}

nn::OptimizerState optimizer_from_text(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  const std::string tag = "# optimizer " + name + " ";
  while (std::getline(in, line)) {
    if (line.rfind(tag, 0) != 0) continue;
    nn::OptimizerState s;
    long size = -1;
    std::istringstream fields(line.substr(tag.size()));
    std::string tok;
    try {
      while (fields >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw DataError("bad optimizer field '" + tok + "'");
        const auto key = tok.substr(0, eq);
        const auto val = tok.substr(eq + 1);
        if (key == "kind") s.kind = nn::parse_optimizer_kind(val);
        else if (key == "lr") s.learning_rate = nn::parse_number(val);
        else if (key == "beta1") s.beta1 = nn::parse_number(val);
        else if (key == "beta2") s.beta2 = nn::parse_number(val);
        else if (key == "eps") s.epsilon = nn::parse_number(val);
        else if (key == "step") s.step = std::stoull(val);
        else if (key == "size") size = std::stol(val);
        else throw DataError("unknown optimizer field '" + key + "'");
      }
    } catch (const ConfigError& e) {
      throw DataError(e.what());
    } catch (const std::logic_error&) {
      throw DataError("bad optimizer field '" + tok + "'");
    }
    if (size < 0) throw DataError("optimizer " + name + ": missing size");
    for (auto* v : {&s.first_moment, &s.second_moment}) {
      v->resize(size);
      if (!std::getline(in, line)) throw DataError("optimizer " + name + ": missing moment row");
      std::size_t start = 0;
      for (long i = 0; i < size; ++i) {
        const auto comma = line.find(',', start);
        const auto end = comma == std::string::npos ? line.size() : comma;
        (*v)(i) = nn::parse_number(std::string_view(line).substr(start, end - start));
        if ((comma == std::string::npos) != (i + 1 == size))
          throw DataError("optimizer " + name + ": moment row has the wrong length");
        start = end + 1;
      }
    }
    return s;
  }
  throw DataError("optimizer " + name + " not found");
}

void write_checkpoint(const std::filesystem::path& dir, const nn::GaussianPolicy& policy,
                      const nn::Mlp& critic, const PpoOptimizers& optimizers,
                      const CheckpointMeta& meta) {
  std::filesystem::create_directories(dir);
  nn::export_csv(policy.mean, &policy.log_std, dir / "actor.csv");
  nn::export_csv(critic, nullptr, dir / "critic.csv");
  {
    std::ofstream out(dir / "optimizer.txt", std::ios::binary);
    out << optimizer_to_text(optimizers.actor, "actor") << optimizer_to_text(optimizers.critic, "critic");
    if (!out) throw DataError("failed writing " + (dir / "optimizer.txt").string());
  }
  std::ofstream out(dir / "meta.txt", std::ios::binary);
  out << "iteration=" << meta.iteration << "\nconfig_hash=" << meta.config_hash
      << "\nseed=" << meta.seed << "\nn_envs=" << meta.n_envs << "\nenv_seeds=";
  for (int e = 0; e < meta.n_envs; ++e) out << (e ? "," : "") << env_seed(meta.seed, e);
  out << "\naction_seeds=";
  for (int e = 0; e < meta.n_envs; ++e) out << (e ? "," : "") << action_seed(meta.seed, e);
  out << "\n";
  if (!out) throw DataError("failed writing " + (dir / "meta.txt").string());
}

Checkpoint read_checkpoint(const std::filesystem::path& dir) {
  Checkpoint c;
  auto actor = nn::import_csv(dir / "actor.csv");
  if (!actor.log_std) throw DataError((dir / "actor.csv").string() + ": missing logstd block");
  c.policy.mean = std::move(actor.net);
  c.policy.log_std = *actor.log_std;
  c.critic = nn::import_csv(dir / "critic.csv").net;

  std::ifstream opt(dir / "optimizer.txt", std::ios::binary);
  if (!opt) throw DataError("cannot read " + (dir / "optimizer.txt").string());
  std::ostringstream buf;
  buf << opt.rdbuf();
  c.optimizers.actor = optimizer_from_text(buf.str(), "actor");
  c.optimizers.critic = optimizer_from_text(buf.str(), "critic");

  std::ifstream meta(dir / "meta.txt");
  if (!meta) throw DataError("cannot read " + (dir / "meta.txt").string());
  std::string line;
  try {
    while (std::getline(meta, line)) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const auto key = line.substr(0, eq);
      const auto val = line.substr(eq + 1);
      if (key == "iteration") c.meta.iteration = std::stoi(val);
      else if (key == "config_hash") c.meta.config_hash = val;
      else if (key == "seed") c.meta.seed = std::stoull(val);
      else if (key == "n_envs") c.meta.n_envs = std::stoi(val);
    }
  } catch (const std::logic_error&) {
    throw DataError((dir / "meta.txt").string() + ": bad line '" + line + "'");
  }
  return c;
}

TrainResult train(const TrainConfig& cfg, const nn::Mlp* initial_actor,
                  const std::filesystem::path& out_dir, std::ostream* log) {
  cfg.validate();
  if (initial_actor && initial_actor->spec().layer_sizes != cfg.actor_spec.layer_sizes)
    throw ConfigError("initial actor widths do not match the actor spec");

  Rng init_rng(mix_seed(cfg.seed, 1));
  TrainResult result;
  result.policy = nn::GaussianPolicy::random(cfg.actor_spec, init_rng, cfg.ppo.initial_log_std);
  result.critic = nn::Mlp::random(cfg.critic_spec, init_rng);
  if (initial_actor) result.policy.mean = *initial_actor;
  result.optimizers = PpoOptimizers::adam(cfg.ppo);

  std::ofstream curve;
  auto checkpoint = [&](int iteration) {
    if (out_dir.empty()) return;
    char name[32];
    std::snprintf(name, sizeof(name), "iter_%06d", iteration);
    write_checkpoint(out_dir / "checkpoints" / name, result.policy, result.critic,
                     result.optimizers, {iteration, cfg.config_hash, cfg.seed, cfg.ppo.n_envs});
  };
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    curve.open(out_dir / "reward_curve.csv", std::ios::binary);
    if (!curve) throw DataError("cannot write " + (out_dir / "reward_curve.csv").string());
    write_reward_curve_header(curve);
  }
  checkpoint(0);

  std::vector<BoundingEnv> envs;
  std::vector<Rng> rngs;
  for (int e = 0; e < cfg.ppo.n_envs; ++e) {
    envs.emplace_back(cfg.env, cfg.model, cfg.terrain, env_seed(cfg.seed, e));
    rngs.emplace_back(action_seed(cfg.seed, e));
  }
  Rng update_rng(mix_seed(cfg.seed, 2));
  RolloutBuffer buffer;
  ReturnScaler scaler(cfg.ppo.n_envs);
  double carried_reward = 0.0, carried_length = 0.0;

  for (int it = 1; it <= cfg.ppo.iterations; ++it) {
    const RolloutStats rs =
        collect_rollouts(result.policy, result.critic, envs, rngs, cfg.ppo.rollout_length,
                         cfg.ppo.workers, buffer);
    if (cfg.ppo.normalize_rewards) scaler.apply(buffer, cfg.ppo.gamma);
    compute_gae(buffer, cfg.ppo.gamma, cfg.ppo.gae_lambda);
    normalize_advantages(buffer.advantages);

    IterationLog row;
    row.iteration = it;
    row.episodes = static_cast<int>(rs.episodes.size());
    row.blowups = rs.blowups;
    row.mean_step_reward = rs.mean_step_reward;
    if (row.episodes > 0) {
      double r = 0.0, l = 0.0;
      for (const auto& ep : rs.episodes) {
        r += ep.total_reward;
        l += ep.steps;
        row.falls += ep.failed ? 1 : 0;
      }
      carried_reward = r / row.episodes;
      carried_length = l / row.episodes;
    } else if (it == 1) {
      // Nothing finished yet: report the episodes in progress.
      double r = 0.0, l = 0.0;
      for (const auto& env : envs) {
        r += env.episode_return();
        l += env.episode_steps();
      }
      carried_reward = r / envs.size();
      carried_length = l / envs.size();
    }
    row.mean_episode_reward = carried_reward;
    row.mean_episode_length = carried_length;

    row.update = ppo_update(result.policy, result.critic, result.optimizers, buffer, cfg.ppo, update_rng);
    result.curve.push_back(row);
    if (curve.is_open()) {
      write_reward_curve_row(curve, row);
      curve.flush();
    }
    if (log) {
      *log << progress_line(row);
      if (row.update.aborted) *log << " update=aborted";
      if (row.blowups) *log << " blowups=" << row.blowups;
      *log << '\n' << std::flush;
    }
    if (it == cfg.ppo.iterations || (cfg.checkpoint_every > 0 && it % cfg.checkpoint_every == 0))
      checkpoint(it);
  }
  return result;
}

}  // namespace boundlab::rl
