#include "boundlab/app/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "boundlab/errors.hpp"
#include "boundlab/nn/weights_csv.hpp"
#include "boundlab/random.hpp"

namespace boundlab::app {

namespace fs = std::filesystem;

fs::path output_dir(const RunConfig& cfg) {
  if (const char* env = std::getenv("BOUNDLAB_OUTPUT_DIR"); env && *env) return env;
  return cfg.output_dir;
}

void write_resolved_config(const RunConfig& cfg, const fs::path& dir) {
  fs::create_directories(dir);
  std::ofstream out(dir / "resolved_config.txt", std::ios::binary);
  out << resolved_config_text(cfg);
  if (!out) throw DataError("failed writing " + (dir / "resolved_config.txt").string());
}

prefit::PrefitDataset command_collect(const RunConfig& cfg, const fs::path& dir) {
  auto data = prefit::collect_dataset(cfg.collect_config(), cfg.seed, cfg.model, cfg.terrain,
                                      cfg.env.contact);
  fs::create_directories(dir);
  prefit::write_dataset_csv(data, dir / "dataset.csv");
  write_resolved_config(cfg, dir);
  return data;
}

prefit::PrefitResult command_prefit(const RunConfig& cfg, const fs::path& dir,
                                    const std::optional<fs::path>& dataset, std::ostream* log) {
  const prefit::PrefitDataset data =
      dataset ? prefit::read_dataset_csv(*dataset)
              : prefit::collect_dataset(cfg.collect_config(), cfg.seed, cfg.model, cfg.terrain,
                                        cfg.env.contact);
  if (data.mode != cfg.env.features.mode)
    throw DataError("dataset feature mode " + obs::to_string(data.mode) +
                    " does not match features.mode " + obs::to_string(cfg.env.features.mode));
  const auto pcfg = cfg.prefit_config();
  auto result = prefit::run_prefit(data, cfg.actor_spec(), pcfg);
  const fs::path sub = dir / "prefit";
  fs::create_directories(sub);
  nn::export_csv(result.net, nullptr, sub / "actor.csv");
  prefit::write_loss_curve_csv(result, pcfg.schedule, sub / "loss_curve.csv");
  std::ofstream summary(sub / "summary.txt", std::ios::binary);
  summary << "rows = " << data.rows() << "\ntrain_rows = " << data.train_rows << "\n";
  for (std::size_t p = 0; p < result.phase_train_mse.size(); ++p)
    summary << "phase_" << p << "_train_mse = " << nn::format_number(result.phase_train_mse[p])
            << "\nphase_" << p << "_validation_mse = "
            << nn::format_number(result.phase_validation_mse[p]) << "\n";
  if (log)
    *log << "prefit train_mse=" << result.final_train_mse
         << " validation_mse=" << result.final_validation_mse << '\n';
  write_resolved_config(cfg, dir);
  return result;
}

rl::TrainResult command_train(const RunConfig& cfg, const fs::path& dir,
                              const std::optional<fs::path>& init_actor, std::ostream* log) {
  const auto tcfg = cfg.train_config();
  tcfg.validate();
  std::optional<nn::Mlp> init;
  if (init_actor) init = load_actor(*init_actor);
  write_resolved_config(cfg, dir);
  return rl::train(tcfg, init ? &*init : nullptr, dir / "train", log);
}

nn::Mlp load_actor(const fs::path& checkpoint) {
  const fs::path file = fs::is_directory(checkpoint) ? checkpoint / "actor.csv" : checkpoint;
  return nn::import_csv(file).net;
}

std::vector<EpisodeTrace> evaluate_actor(const nn::Mlp& actor, const RunConfig& cfg) {
  rl::EnvConfig env_cfg = cfg.env;
  if (!cfg.eval.randomize) {
    const auto start = env_cfg.randomization.start;
    env_cfg.randomization = rl::DomainRandomizationConfig::none();
    env_cfg.randomization.start = start;
  }
  if (actor.spec().input_size() != env_cfg.features.size())
    throw DataError("actor input width " + std::to_string(actor.spec().input_size()) +
                    " does not match features.mode " + obs::to_string(env_cfg.features.mode));
  std::vector<EpisodeTrace> traces;
  for (int k = 0; k < cfg.eval.episodes; ++k) {
    rl::BoundingEnv env(env_cfg, cfg.model, cfg.terrain, mix_seed(cfg.seed, 0x6576616cULL + k));
    traces.push_back(run_policy_episode(actor, env, k));
  }
  return traces;
}

std::vector<EpisodeTrace> command_eval(const RunConfig& cfg, const fs::path& dir,
                                       const fs::path& checkpoint) {
  const nn::Mlp actor = load_actor(checkpoint);
  auto traces = evaluate_actor(actor, cfg);
  const fs::path sub = dir / "eval";
  fs::create_directories(sub);
  for (const auto& t : traces) {
    char name[32];
    std::snprintf(name, sizeof(name), "episode_%03d.csv", t.episode);
    write_trace_csv(t, sub / name);
  }
  write_resolved_config(cfg, dir);
  return traces;
}

void command_export(const fs::path& checkpoint, const fs::path& out) {
  const fs::path file = fs::is_directory(checkpoint) ? checkpoint / "actor.csv" : checkpoint;
  const auto w = nn::import_csv(file);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  nn::export_csv(w.net, w.log_std ? &*w.log_std : nullptr, out);
}

std::vector<fs::path> list_traces(const fs::path& dir) {
  std::vector<fs::path> files;
  if (!fs::is_directory(dir)) throw DataError("no trace directory " + dir.string());
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".csv") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

MetricsReport command_metrics(const std::vector<fs::path>& traces, const fs::path& out_file,
                              bool full_com) {
  std::vector<EpisodeTrace> loaded;
  for (const auto& p : traces) loaded.push_back(read_trace_csv(p));
  const auto report = compute_metrics(loaded, full_com);
  if (out_file.has_parent_path()) fs::create_directories(out_file.parent_path());
  std::ofstream out(out_file, std::ios::binary);
  out << metrics_to_text(report);
  if (!out) throw DataError("failed writing " + out_file.string());
  return report;
}

namespace {

// Copies selected columns of a CSV with a plain header line.
void project_csv(const fs::path& in_path, const fs::path& out_path,
                 const std::vector<std::string>& columns) {
  std::ifstream in(in_path, std::ios::binary);
  std::string header;
  std::getline(in, header);
  std::vector<std::string> names;
  {
    std::istringstream h(header);
    std::string n;
    while (std::getline(h, n, ',')) names.push_back(n);
  }
  std::vector<int> idx;
  for (const auto& c : columns) {
    auto it = std::find(names.begin(), names.end(), c);
    if (it == names.end()) throw DataError(in_path.string() + ": missing column " + c);
    idx.push_back(static_cast<int>(it - names.begin()));
  }
  std::ofstream out(out_path, std::ios::binary);
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream l(line);
    std::string c;
    while (std::getline(l, c, ',')) cells.push_back(c);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] >= static_cast<int>(cells.size())) throw DataError(in_path.string() + ": short row");
      out << (i ? "," : "") << cells[idx[i]];
    }
    out << '\n';
  }
}

}  // namespace

std::vector<fs::path> command_plot_data(const fs::path& dir) {
  const fs::path plots = dir / "plots";
  fs::create_directories(plots);
  std::vector<fs::path> written;

  if (fs::exists(dir / "prefit" / "loss_curve.csv")) {
    project_csv(dir / "prefit" / "loss_curve.csv", plots / "prefit_loss.csv",
                {"iteration", "phase", "optimizer", "train_mse"});
    written.push_back(plots / "prefit_loss.csv");
  }
  if (fs::exists(dir / "train" / "reward_curve.csv")) {
    project_csv(dir / "train" / "reward_curve.csv", plots / "reward_curve.csv",
                {"iteration", "mean_episode_reward", "mean_episode_length"});
    written.push_back(plots / "reward_curve.csv");
  }
  if (fs::is_directory(dir / "eval")) {
    static const char* legs[] = {"LF", "RF", "LH", "RH"};
    static const char* joints[] = {"roll", "hip", "knee"};
    std::ofstream joints_out(plots / "joint_trajectories.csv", std::ios::binary);
    std::ofstream height_out(plots / "com_height.csv", std::ios::binary);
    std::ofstream gait_out(plots / "gait_diagram.csv", std::ios::binary);
    joints_out << "episode,t,leg,joint,position,torque\n";
    height_out << "episode,t,torso_z,com_z\n";
    gait_out << "episode,t,foot,contact\n";
    using nn::format_number;
    for (const auto& p : list_traces(dir / "eval")) {
      const auto tr = read_trace_csv(p);
      for (const auto& r : tr.rows) {
        const std::string prefix = std::to_string(tr.episode) + "," + format_number(r.t) + ",";
        for (int leg = 0; leg < kNumLegs; ++leg) {
          for (int j = 0; j < 3; ++j)
            joints_out << prefix << legs[leg] << ',' << joints[j] << ','
                       << format_number(r.q(leg * 3 + j)) << ',' << format_number(r.tau(leg * 3 + j))
                       << '\n';
          gait_out << prefix << legs[leg] << ',' << r.contact[leg] << '\n';
        }
        height_out << prefix << format_number(r.z) << ',' << format_number(r.com_z) << '\n';
      }
    }
    for (const char* f : {"joint_trajectories.csv", "com_height.csv", "gait_diagram.csv"})
      written.push_back(plots / f);
  }
  return written;
}

}  // namespace boundlab::app
