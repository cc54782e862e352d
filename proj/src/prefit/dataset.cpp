#include "boundlab/prefit/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "boundlab/nn/weights_csv.hpp"
#include "boundlab/parallel.hpp"
#include "boundlab/random.hpp"

namespace boundlab::prefit {

void CollectConfig::validate(const sim::RobotModel& model) const {
  if (control_steps < 2) throw ConfigError("collect: control_steps must be >= 2");
  if (episode_steps < 1) throw ConfigError("collect: episode_steps must be >= 1");
  if (!(validation_fraction >= 0.0 && validation_fraction < 1.0))
    throw ConfigError("collect: validation_fraction must be in [0, 1)");
  if (workers < 1) throw ConfigError("collect: workers must be >= 1");
  timing.validate();
  gains.validate();
  slip.validate(model);
  termination.validate();
}

namespace {

struct Episode {
  Eigen::MatrixXd observations;
  Eigen::MatrixXd labels;
};

Episode run_episode(const CollectConfig& cfg, int index, int rows, std::uint64_t seed,
                    const sim::RobotModel& model, const sim::Terrain& terrain,
                    const sim::ContactParams& contact) {
  Episode ep{Eigen::MatrixXd(cfg.features.size(), rows), Eigen::MatrixXd(kNumJoints, rows)};
  sim::SimState s = sim::reset(model, terrain, mix_seed(seed, index), cfg.perturbation);
  obs::ObservationBuilder builder(cfg.features, cfg.timing.period());
  builder.reset(s);
  control::JointCommand cmd = control::slip_reference(s.t, s, cfg.slip, model);
  for (int k = 0; k < rows; ++k) {
    ep.observations.col(k) = builder.build(s, terrain);
    s = control::run_control_period(s, cmd, cfg.gains, model, terrain, contact, cfg.timing).state;
    const auto term = reward::check_termination(s, cfg.termination, model, terrain, contact);
    if (term.failed()) throw ReferenceControllerFell(index, k, reward::to_string(term.reason));
    cmd = control::slip_reference(s.t, s, cfg.slip, model);
    ep.labels.col(k) = cmd.position;
  }
  return ep;
}

}  // namespace

PrefitDataset collect_dataset(const CollectConfig& cfg, std::uint64_t seed,
                              const sim::RobotModel& model, const sim::Terrain& terrain,
                              const sim::ContactParams& contact) {
  cfg.validate(model);
  // Episodes never reach the timeout rule while recording.
  CollectConfig run = cfg;
  run.termination.max_episode_duration =
      std::max(cfg.termination.max_episode_duration, (cfg.episode_steps + 1) * cfg.timing.period());

  const int n_episodes = (cfg.control_steps + cfg.episode_steps - 1) / cfg.episode_steps;
  std::vector<Episode> episodes(n_episodes);
  parallel_for(n_episodes, cfg.workers, [&](int e) {
    const int rows = std::min(cfg.episode_steps, cfg.control_steps - e * cfg.episode_steps);
    episodes[e] = run_episode(run, e, rows, seed, model, terrain, contact);
  });

  PrefitDataset data;
  data.mode = cfg.features.mode;
  data.observations.resize(cfg.features.size(), cfg.control_steps);
  data.labels.resize(kNumJoints, cfg.control_steps);
  int col = 0;
  for (const auto& ep : episodes) {
    data.observations.middleCols(col, ep.observations.cols()) = ep.observations;
    data.labels.middleCols(col, ep.labels.cols()) = ep.labels;
    col += static_cast<int>(ep.observations.cols());
  }
  const int validation =
      static_cast<int>(std::ceil(cfg.validation_fraction * cfg.control_steps - 1e-9));
  data.train_rows = cfg.control_steps - validation;
  return data;
}

std::vector<std::string> label_names() {
  static const char* legs[] = {"LF", "RF", "LH", "RH"};
  static const char* joints[] = {"roll", "hip", "knee"};
  std::vector<std::string> names;
  for (int leg = 0; leg < kNumLegs; ++leg)
    for (int j = 0; j < 3; ++j) names.push_back(std::string("label_") + legs[leg] + "_" + joints[j]);
  return names;
}

void write_dataset_csv(const PrefitDataset& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "# rows=" << data.rows() << " train=" << data.train_rows
      << " features=" << obs::to_string(data.mode) << "\n";
  auto names = obs::observation_names(obs::FeatureConfig{data.mode});
  for (const auto& n : label_names()) names.push_back(n);
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << "\n";
  std::string line;
  for (int r = 0; r < data.rows(); ++r) {
    line.clear();
    for (int i = 0; i < data.observations.rows(); ++i) {
      if (i) line += ',';
      line += nn::format_number(data.observations(i, r));
    }
    for (int i = 0; i < data.labels.rows(); ++i) {
      line += ',';
      line += nn::format_number(data.labels(i, r));
    }
    line += '\n';
    out << line;
  }
  if (!out) throw DataError("failed writing " + path.string());
}

PrefitDataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::string line;
  PrefitDataset data;
  int rows = -1;
  std::string mode;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    throw DataError(path.string() + ": missing '# rows=... train=... features=...' line");
  {
    std::istringstream meta(line.substr(2));
    std::string tok;
    while (meta >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const auto key = tok.substr(0, eq);
      const auto val = tok.substr(eq + 1);
      try {
        if (key == "rows") rows = std::stoi(val);
        if (key == "train") data.train_rows = std::stoi(val);
      } catch (const std::exception&) {
        throw DataError(path.string() + ": bad metadata value '" + tok + "'");
      }
      if (key == "features") mode = val;
    }
  }
  try {
    data.mode = obs::parse_feature_mode(mode);
  } catch (const ConfigError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  const int width = obs::FeatureConfig{data.mode}.size();
  if (rows < 1 || data.train_rows < 1 || data.train_rows > rows)
    throw DataError(path.string() + ": inconsistent row counts");
  if (!std::getline(in, line)) throw DataError(path.string() + ": missing header");
  auto expected = obs::observation_names(obs::FeatureConfig{data.mode});
  for (const auto& n : label_names()) expected.push_back(n);
  std::string joined;
  for (std::size_t i = 0; i < expected.size(); ++i) joined += (i ? "," : "") + expected[i];
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != joined) throw DataError(path.string() + ": header does not match the feature mode");

  data.observations.resize(width, rows);
  data.labels.resize(kNumJoints, rows);
  for (int r = 0; r < rows; ++r) {
    if (!std::getline(in, line))
      throw DataError(path.string() + ": expected " + std::to_string(rows) + " rows, got " +
                      std::to_string(r));
    std::size_t start = 0;
    for (int c = 0; c < width + kNumJoints; ++c) {
      const auto comma = line.find(',', start);
      const bool last = c + 1 == width + kNumJoints;
      if ((comma == std::string::npos) != last)
        throw DataError(path.string() + ": row " + std::to_string(r) + " has the wrong width");
      const auto end = last ? line.size() : comma;
      const double v = nn::parse_number(std::string_view(line).substr(start, end - start));
      if (c < width)
        data.observations(c, r) = v;
      else
        data.labels(c - width, r) = v;
      start = end + 1;
    }
  }
  return data;
}

}  // namespace boundlab::prefit
