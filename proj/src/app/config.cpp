#include "boundlab/app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "boundlab/errors.hpp"
#include "boundlab/nn/weights_csv.hpp"

namespace boundlab::app {

nn::MlpSpec RunConfig::actor_spec() const {
  nn::MlpSpec s;
  s.layer_sizes.push_back(env.features.size());
  for (int h : hidden_sizes) s.layer_sizes.push_back(h);
  s.layer_sizes.push_back(kNumJoints);
  return s;
}

nn::MlpSpec RunConfig::critic_spec() const {
  nn::MlpSpec s = actor_spec();
  s.layer_sizes.back() = 1;
  return s;
}

prefit::CollectConfig RunConfig::collect_config() const {
  prefit::CollectConfig c = collect;
  c.features = env.features;
  c.timing = env.timing;
  c.gains = env.gains;
  c.slip = slip;
  c.termination = env.termination;
  c.workers = workers;
  return c;
}

prefit::PrefitConfig RunConfig::prefit_config() const {
  prefit::PrefitConfig c = prefit;
  c.seed = seed;
  return c;
}

rl::TrainConfig RunConfig::train_config() const {
  rl::TrainConfig t;
  t.ppo = ppo;
  t.ppo.workers = workers;
  t.env = env;
  t.actor_spec = actor_spec();
  t.critic_spec = critic_spec();
  t.model = model;
  t.terrain = terrain;
  t.seed = seed;
  t.checkpoint_every = checkpoint_every;
  // Where outputs go and how many threads run must not change the hash.
  RunConfig hashed = *this;
  hashed.workers = 1;
  hashed.output_dir = "-";
  t.config_hash = fnv1a_hex(resolved_config_text(hashed));
  return t;
}

void RunConfig::validate() const {
  if (workers < 1) throw ConfigError("run.workers must be >= 1");
  if (output_dir.empty()) throw ConfigError("run.output_dir must not be empty");
  if (hidden_sizes.empty()) throw ConfigError("network.hidden_sizes needs at least one layer");
  if (eval.episodes < 1) throw ConfigError("eval.episodes must be >= 1");
  if (checkpoint_every < 0) throw ConfigError("train.checkpoint_every must be >= 0");
  model.validate();
  terrain.validate();
  actor_spec().validate();
  collect_config().validate(model);
  prefit.schedule.validate();
  train_config().validate();
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    return nn::parse_number(v);
  } catch (const DataError&) {
    throw ConfigError(key + ": '" + v + "' is not a number");
  }
}

template <typename Int>
Int to_int(const std::string& key, const std::string& v) {
  Int out{};
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError(key + ": '" + v + "' is not an integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(key + ": '" + v + "' is not a boolean");
}

template <typename T, typename Format>
std::string join(const std::vector<T>& items, Format fmt) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? "," : "") + fmt(items[i]);
  return s;
}

struct Binder {
  std::vector<ConfigKey>& keys;

  void real(const std::string& k, double& ref) {
    keys.push_back({k, [&ref] { return nn::format_number(ref); },
                    [k, &ref](const std::string& v) { ref = to_double(k, v); }});
  }
  void integer(const std::string& k, int& ref) {
    keys.push_back({k, [&ref] { return std::to_string(ref); },
                    [k, &ref](const std::string& v) { ref = to_int<int>(k, v); }});
  }
  void u64(const std::string& k, std::uint64_t& ref) {
    keys.push_back({k, [&ref] { return std::to_string(ref); },
                    [k, &ref](const std::string& v) { ref = to_int<std::uint64_t>(k, v); }});
  }
  void boolean(const std::string& k, bool& ref) {
    keys.push_back({k, [&ref] { return std::string(ref ? "true" : "false"); },
                    [k, &ref](const std::string& v) { ref = to_bool(k, v); }});
  }
  void text(const std::string& k, std::string& ref) {
    keys.push_back({k, [&ref] { return ref; }, [&ref](const std::string& v) { ref = v; }});
  }
  void custom(const std::string& k, std::function<std::string()> get,
              std::function<void(const std::string&)> set) {
    keys.push_back({k, std::move(get), std::move(set)});
  }
};

// Applies to every leg's link of one kind.
void bind_leg_links(Binder& b, const std::string& name, std::array<sim::Link, kNumLegs>& links) {
  b.custom("robot." + name + "_mass", [&links] { return nn::format_number(links[0].mass); },
           [name, &links](const std::string& v) {
             const double m = to_double("robot." + name + "_mass", v);
             for (auto& l : links) l.mass = m;
           });
  b.custom("robot." + name + "_inertia", [&links] { return nn::format_number(links[0].inertia); },
           [name, &links](const std::string& v) {
             const double j = to_double("robot." + name + "_inertia", v);
             for (auto& l : links) l.inertia = j;
           });
}

std::string schedule_text(const prefit::TrainingSchedule& s) {
  return join(s.phases, [](const prefit::SchedulePhase& p) {
    return nn::to_string(p.kind) + ":" + nn::format_number(p.learning_rate) + ":" +
           std::to_string(p.iterations);
  });
}

prefit::TrainingSchedule parse_schedule(const std::string& v) {
  prefit::TrainingSchedule s;
  std::istringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    const auto a = item.find(':');
    const auto b = item.find(':', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos)
      throw ConfigError("prefit.schedule: expected optimizer:rate:iterations, got '" + item + "'");
    prefit::SchedulePhase p;
    p.kind = nn::parse_optimizer_kind(item.substr(0, a));
    p.learning_rate = to_double("prefit.schedule", item.substr(a + 1, b - a - 1));
    p.iterations = to_int<int>("prefit.schedule", item.substr(b + 1));
    s.phases.push_back(p);
  }
  return s;
}

}  // namespace

std::vector<ConfigKey> config_keys(RunConfig& c) {
  std::vector<ConfigKey> keys;
  Binder b{keys};
  b.u64("run.seed", c.seed);
  b.text("run.output_dir", c.output_dir);
  b.integer("run.workers", c.workers);

  b.real("robot.thigh_length", c.model.thigh_length);
  b.real("robot.shank_length", c.model.shank_length);
  b.real("robot.torso_mass", c.model.torso.mass);
  b.real("robot.torso_inertia", c.model.torso.inertia);
  b.real("robot.torso_com_x", c.model.torso.com.x());
  b.real("robot.torso_com_z", c.model.torso.com.y());
  bind_leg_links(b, "thigh", c.model.thighs);
  bind_leg_links(b, "shank", c.model.shanks);
  b.real("robot.torso_height", c.model.torso_height);
  b.real("robot.roll_inertia", c.model.roll_inertia);
  b.real("robot.roll_damping", c.model.roll_damping);

  b.real("terrain.friction", c.terrain.friction);
  b.real("terrain.restitution", c.terrain.restitution);

  b.real("contact.normal_stiffness", c.env.contact.normal_stiffness);
  b.real("contact.normal_damping", c.env.contact.normal_damping);
  b.real("contact.tolerance", c.env.contact.contact_tolerance);
  b.real("contact.tangential_damping", c.env.contact.tangential_damping);

  b.real("sim.dt", c.env.timing.dt);
  b.integer("control.pd_decimation", c.env.timing.pd_decimation);
  b.integer("control.substeps", c.env.timing.substeps);
  b.custom("control.kp", [&c] { return nn::format_number(c.env.gains.kp(0)); },
           [&c](const std::string& v) { c.env.gains.kp.setConstant(to_double("control.kp", v)); });
  b.custom("control.kd", [&c] { return nn::format_number(c.env.gains.kd(0)); },
           [&c](const std::string& v) { c.env.gains.kd.setConstant(to_double("control.kd", v)); });

  b.real("slip.gait_frequency", c.slip.gait_frequency);
  b.real("slip.duty_factor", c.slip.duty_factor);
  b.real("slip.spring_stiffness", c.slip.spring_stiffness);
  b.real("slip.rest_length", c.slip.rest_length);
  b.real("slip.raibert_gain", c.slip.raibert_gain);
  b.real("slip.desired_speed", c.slip.desired_speed);
  b.real("slip.pitch_gain", c.slip.pitch_gain);
  b.real("slip.pitch_rate_split", c.slip.pitch_rate_split);
  b.real("slip.touchdown_length", c.slip.touchdown_length);
  b.real("slip.swing_clearance", c.slip.swing_clearance);
  b.real("slip.joint_stiffness", c.slip.joint_stiffness);

  auto& w = c.env.weights;
  b.real("reward.body_velocity_k", w.body_velocity_k);
  b.real("reward.joint_torque_k", w.joint_torque_k);
  b.real("reward.joint_torque_c", w.joint_torque_c);
  b.real("reward.joint_velocity_k", w.joint_velocity_k);
  b.real("reward.joint_velocity_c", w.joint_velocity_c);
  b.real("reward.gait_k", w.gait_k);
  b.real("reward.position_uniformity_k", w.position_uniformity_k);
  b.real("reward.torque_uniformity_k", w.torque_uniformity_k);
  b.real("reward.smoothness_k", w.smoothness_k);
  b.real("reward.pitch_limit_k", w.pitch_limit_k);
  b.real("reward.pitch_threshold", w.pitch_threshold);

  b.real("gait.omega", c.env.gait.omega);
  b.custom("gait.per_foot_phase",
           [&c] {
             return join(std::vector<double>(c.env.gait.per_foot_phase.begin(),
                                             c.env.gait.per_foot_phase.end()),
                         [](double x) { return nn::format_number(x); });
           },
           [&c](const std::string& v) {
             std::vector<double> xs;
             std::istringstream in(v);
             std::string item;
             while (std::getline(in, item, ',')) xs.push_back(to_double("gait.per_foot_phase", trim(item)));
             if (xs.size() != kNumLegs) throw ConfigError("gait.per_foot_phase needs 4 values");
             for (int i = 0; i < kNumLegs; ++i) c.env.gait.per_foot_phase[i] = xs[i];
           });

  b.real("termination.min_body_height", c.env.termination.min_body_height);
  b.real("termination.max_abs_pitch", c.env.termination.max_abs_pitch);
  b.boolean("termination.torso_contact_fails", c.env.termination.torso_contact_fails);
  b.real("termination.max_episode_duration", c.env.termination.max_episode_duration);

  b.custom("features.mode", [&c] { return obs::to_string(c.env.features.mode); },
           [&c](const std::string& v) { c.env.features.mode = obs::parse_feature_mode(v); });

  b.custom("network.hidden_sizes",
           [&c] { return join(c.hidden_sizes, [](int h) { return std::to_string(h); }); },
           [&c](const std::string& v) {
             std::vector<int> hs;
             std::istringstream in(v);
             std::string item;
             while (std::getline(in, item, ',')) hs.push_back(to_int<int>("network.hidden_sizes", trim(item)));
             c.hidden_sizes = hs;
           });

  b.integer("collect.control_steps", c.collect.control_steps);
  b.integer("collect.episode_steps", c.collect.episode_steps);
  b.real("collect.validation_fraction", c.collect.validation_fraction);
  b.real("collect.start_pitch", c.collect.perturbation.pitch);
  b.real("collect.start_joint", c.collect.perturbation.joint);
  b.real("collect.start_phase_fraction", c.collect.perturbation.phase_fraction);
  b.real("collect.start_leg_length", c.collect.perturbation.stance_leg_length);

  b.custom("prefit.schedule", [&c] { return schedule_text(c.prefit.schedule); },
           [&c](const std::string& v) { c.prefit.schedule = parse_schedule(v); });
  b.integer("prefit.minibatch", c.prefit.minibatch);
  b.boolean("prefit.standardize_inputs", c.prefit.standardize_inputs);

  b.real("ppo.gamma", c.ppo.gamma);
  b.real("ppo.gae_lambda", c.ppo.gae_lambda);
  b.real("ppo.clip_epsilon", c.ppo.clip_epsilon);
  b.integer("ppo.epochs", c.ppo.epochs);
  b.integer("ppo.minibatch_size", c.ppo.minibatch_size);
  b.real("ppo.actor_learning_rate", c.ppo.actor_learning_rate);
  b.real("ppo.critic_learning_rate", c.ppo.critic_learning_rate);
  b.integer("ppo.n_envs", c.ppo.n_envs);
  b.integer("ppo.rollout_length", c.ppo.rollout_length);
  b.integer("ppo.iterations", c.ppo.iterations);
  b.real("ppo.value_coef", c.ppo.value_coef);
  b.real("ppo.entropy_coef", c.ppo.entropy_coef);
  b.real("ppo.initial_log_std", c.ppo.initial_log_std);
  b.boolean("ppo.normalize_rewards", c.ppo.normalize_rewards);

  auto& r = c.env.randomization;
  b.real("randomization.link_mass_fraction", r.link_mass_fraction);
  b.real("randomization.link_inertia_fraction", r.link_inertia_fraction);
  b.real("randomization.link_com_offset", r.link_com_offset);
  b.real("randomization.friction_delta", r.friction_delta);
  b.boolean("randomization.randomize_restitution", r.randomize_restitution);
  b.real("randomization.restitution_min", r.restitution_min);
  b.real("randomization.restitution_max", r.restitution_max);
  b.real("randomization.bump_height", r.bump_height);
  b.real("randomization.bump_spacing", r.bump_spacing);
  b.real("randomization.terrain_origin", r.terrain_origin);
  b.real("randomization.terrain_length", r.terrain_length);
  b.real("randomization.start_pitch", r.start.pitch);
  b.real("randomization.start_joint", r.start.joint);
  b.real("randomization.start_phase_fraction", r.start.phase_fraction);
  b.real("randomization.start_leg_length", r.start.stance_leg_length);

  b.integer("train.checkpoint_every", c.checkpoint_every);

  b.integer("eval.episodes", c.eval.episodes);
  b.boolean("eval.randomize", c.eval.randomize);
  b.boolean("eval.full_com", c.eval.full_com);
  return keys;
}

void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin) {
  auto keys = config_keys(cfg);
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'section.key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.find('.') == std::string::npos || key.find('.') != key.rfind('.'))
      throw ConfigError(where + "key '" + key + "' must have the form section.key");
    auto it = std::find_if(keys.begin(), keys.end(), [&](const ConfigKey& k) { return k.key == key; });
    if (it == keys.end()) throw ConfigError(where + "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + "duplicate key '" + key + "'");
    try {
      it->set(value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  RunConfig cfg;
  apply_config_text(cfg, buf.str(), path.string());
  cfg.validate();
  return cfg;
}

std::string resolved_config_text(const RunConfig& cfg) {
  RunConfig copy = cfg;
  std::string out;
  for (const auto& k : config_keys(copy)) out += k.key + " = " + k.get() + "\n";
  return out;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace boundlab::app
