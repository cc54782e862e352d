#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <sstream>

#include "boundlab/app/commands.hpp"
#include "boundlab/app/config.hpp"
#include "boundlab/app/metrics.hpp"
#include "boundlab/app/trace.hpp"
#include "boundlab/errors.hpp"
#include "boundlab/nn/mlp.hpp"
#include "boundlab/nn/weights_csv.hpp"
#include "boundlab/random.hpp"
#include "boundlab/reward/reward.hpp"
#include "boundlab/rl/env.hpp"
#include "boundlab/sim/kinematics.hpp"
#include "boundlab/sim/simulator.hpp"

namespace py = pybind11;
using namespace boundlab;

namespace {

py::dict breakdown_dict(const reward::RewardBreakdown& b) {
  py::dict d;
  const auto terms = b.terms();
  const auto& names = reward::RewardBreakdown::names();
  for (std::size_t i = 0; i < terms.size(); ++i) d[py::str(names[i])] = terms[i];
  d["total"] = b.total;
  return d;
}

py::dict metrics_dict(const app::MetricsReport& m) {
  py::dict d;
  d["mean_forward_speed"] = m.mean_forward_speed;
  d["com_height_min"] = m.height.min;
  d["com_height_max"] = m.height.max;
  d["com_height_mean"] = m.height.mean;
  d["com_height_stddev"] = m.height.stddev;
  d["contact_frequency"] = m.contact_frequency;
  d["pair_phase_difference"] = m.pair_phase_difference;
  d["falls_per_minute"] = m.falls_per_minute;
  d["episodes"] = m.episodes;
  d["duration"] = m.duration;
  py::list per;
  for (const auto& h : m.per_episode) per.append(h.stddev);
  d["per_episode_stddev"] = per;
  return d;
}

app::RunConfig config_from(const std::optional<std::string>& text) {
  app::RunConfig cfg;
  if (text) app::apply_config_text(cfg, *text, "python");
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Planar quadruped bounding simulator, pre-fit and PPO pipeline";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  auto data = py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  (void)data;

  m.def("gait_wave", &reward::gait_wave, py::arg("x"));
  m.def(
      "gait_signal",
      [](double t, int foot) { return reward::gait_signal(t, reward::GaitSignalParams{}, foot); },
      py::arg("t"), py::arg("foot"));

  py::class_<sim::RobotModel>(m, "RobotModel")
      .def_static("jueying_mini", &sim::RobotModel::jueying_mini)
      .def_readwrite("thigh_length", &sim::RobotModel::thigh_length)
      .def_readwrite("shank_length", &sim::RobotModel::shank_length)
      .def("total_mass", &sim::RobotModel::total_mass);

  py::class_<sim::Terrain>(m, "Terrain")
      .def_static("flat", &sim::Terrain::flat, py::arg("friction") = 0.6, py::arg("restitution") = 0.0)
      .def_readwrite("friction", &sim::Terrain::friction)
      .def_readwrite("restitution", &sim::Terrain::restitution)
      .def("height_at", &sim::Terrain::height_at);

  py::class_<sim::ContactParams>(m, "ContactParams").def(py::init<>());

  py::class_<sim::SimState>(m, "SimState")
      .def(py::init<>())
      .def_readwrite("x", &sim::SimState::x)
      .def_readwrite("z", &sim::SimState::z)
      .def_readwrite("pitch", &sim::SimState::pitch)
      .def_readwrite("vx", &sim::SimState::vx)
      .def_readwrite("vz", &sim::SimState::vz)
      .def_readwrite("pitch_rate", &sim::SimState::pitch_rate)
      .def_readwrite("q", &sim::SimState::q)
      .def_readwrite("dq", &sim::SimState::dq)
      .def_readwrite("t", &sim::SimState::t)
      .def_readonly("contact", &sim::SimState::contact)
      .def_readonly("contact_force", &sim::SimState::contact_force)
      .def("joint_positions", &sim::SimState::joint_positions)
      .def("joint_velocities", &sim::SimState::joint_velocities);

  m.def(
      "reset",
      [](const sim::RobotModel& model, const sim::Terrain& terrain, std::uint64_t seed, bool perturb) {
        return sim::reset(model, terrain, seed,
                          perturb ? sim::ResetPerturbation{} : sim::ResetPerturbation::none());
      },
      py::arg("model"), py::arg("terrain"), py::arg("seed"), py::arg("perturb") = true);
  m.def(
      "step",
      [](const sim::SimState& s, const JointVector& tau, const sim::RobotModel& model,
         const sim::Terrain& terrain, double dt) {
        return sim::step(s, tau, model, terrain, sim::ContactParams{}, dt);
      },
      py::arg("state"), py::arg("torques"), py::arg("model"), py::arg("terrain"), py::arg("dt") = 0.0025);
  m.def("foot_positions", [](const sim::SimState& s, const sim::RobotModel& model) {
    std::vector<std::pair<double, double>> out;
    for (const auto& f : sim::foot_positions(s, model)) out.emplace_back(f.x(), f.y());
    return out;
  });
  m.def("mechanical_energy", &sim::mechanical_energy);

  py::class_<app::RunConfig>(m, "RunConfig")
      .def(py::init([](const std::optional<std::string>& text) { return config_from(text); }),
           py::arg("text") = std::nullopt)
      .def_static("load", &app::load_config, py::arg("path"))
      .def("apply", [](app::RunConfig& c, const std::string& text) { app::apply_config_text(c, text, "python"); })
      .def("resolved", &app::resolved_config_text)
      .def_readwrite("seed", &app::RunConfig::seed)
      .def_readwrite("output_dir", &app::RunConfig::output_dir)
      .def_readwrite("workers", &app::RunConfig::workers)
      .def("__repr__", [](const app::RunConfig& c) { return "<RunConfig seed=" + std::to_string(c.seed) + ">"; });

  py::class_<nn::Mlp>(m, "Mlp")
      .def_static(
          "random",
          [](const std::vector<int>& sizes, std::uint64_t seed) {
            Rng rng(seed);
            return nn::Mlp::random(nn::MlpSpec{sizes}, rng);
          },
          py::arg("layer_sizes"), py::arg("seed") = 0)
      .def_static("load_csv", [](const std::filesystem::path& p) { return nn::import_csv(p).net; })
      .def("save_csv",
           [](const nn::Mlp& net, const std::filesystem::path& p) { nn::export_csv(net, nullptr, p); })
      .def("to_csv", [](const nn::Mlp& net) { return nn::weights_to_csv(net, nullptr); })
      .def_static("from_csv", [](const std::string& text) { return nn::weights_from_csv(text).net; })
      .def("forward", [](const nn::Mlp& net, const Eigen::VectorXd& x) { return net.forward(x); })
      .def("forward_batch",
           [](const nn::Mlp& net, const Eigen::MatrixXd& x) {
             // rows are samples on the Python side
             return Eigen::MatrixXd(net.forward_batch(x.transpose()).transpose());
           })
      .def_property_readonly("layer_sizes", [](const nn::Mlp& net) { return net.spec().layer_sizes; })
      .def_property(
          "parameters", [](const nn::Mlp& net) { return Eigen::VectorXd(net.parameters()); },
          [](nn::Mlp& net, const Eigen::VectorXd& p) {
            if (p.size() != net.parameters().size()) throw DimensionError("parameter vector size mismatch");
            net.parameters() = p;
          });

  py::class_<rl::BoundingEnv>(m, "BoundingEnv")
      .def(py::init([](const app::RunConfig& cfg, std::uint64_t seed, bool randomize) {
             rl::EnvConfig env_cfg = cfg.env;
             if (!randomize) {
               const auto start = env_cfg.randomization.start;
               env_cfg.randomization = rl::DomainRandomizationConfig::none();
               env_cfg.randomization.start = start;
             }
             return rl::BoundingEnv(env_cfg, cfg.model, cfg.terrain, seed);
           }),
           py::arg("config"), py::arg("seed") = 0, py::arg("randomize") = true)
      .def_property_readonly("observation", [](const rl::BoundingEnv& e) { return e.observation(); })
      .def_property_readonly("state", [](const rl::BoundingEnv& e) { return e.state(); })
      .def_property_readonly("episode_index", &rl::BoundingEnv::episode_index)
      .def(
          "step",
          [](rl::BoundingEnv& e, const JointVector& action) {
            const auto r = e.step(action);
            py::dict info;
            info["terms"] = breakdown_dict(r.breakdown);
            info["termination"] = r.blowup ? std::string("blowup") : reward::to_string(r.termination.reason);
            info["torque"] = r.torque;
            info["failed"] = r.failed();
            if (r.done()) {
              info["episode_steps"] = r.episode_steps;
              info["episode_return"] = r.episode_return;
            }
            return py::make_tuple(r.observation, r.reward, r.done(), info);
          },
          py::arg("action"));

  m.def(
      "collect",
      [](const app::RunConfig& cfg, const std::filesystem::path& dir) {
        py::gil_scoped_release release;
        return app::command_collect(cfg, dir).rows();
      },
      py::arg("config"), py::arg("output_dir"));
  m.def(
      "prefit",
      [](const app::RunConfig& cfg, const std::filesystem::path& dir,
         std::optional<std::filesystem::path> dataset) {
        py::gil_scoped_release release;
        const auto r = app::command_prefit(cfg, dir, dataset, nullptr);
        return std::make_pair(r.final_train_mse, r.final_validation_mse);
      },
      py::arg("config"), py::arg("output_dir"), py::arg("dataset") = std::nullopt);
  m.def(
      "train",
      [](const app::RunConfig& cfg, const std::filesystem::path& dir,
         std::optional<std::filesystem::path> init) {
        std::vector<std::tuple<int, double, double>> curve;
        {
          py::gil_scoped_release release;
          for (const auto& row : app::command_train(cfg, dir, init, nullptr).curve)
            curve.emplace_back(row.iteration, row.mean_episode_reward, row.mean_episode_length);
        }
        return curve;
      },
      py::arg("config"), py::arg("output_dir"), py::arg("init_actor") = std::nullopt,
      "Returns (iteration, mean episode reward, mean episode length) rows.");
  m.def(
      "evaluate",
      [](const app::RunConfig& cfg, const std::filesystem::path& dir, const std::filesystem::path& checkpoint) {
        py::gil_scoped_release release;
        return app::command_eval(cfg, dir, checkpoint).size();
      },
      py::arg("config"), py::arg("output_dir"), py::arg("checkpoint"));
  m.def(
      "metrics",
      [](const std::vector<std::filesystem::path>& traces, bool full_com) {
        std::vector<app::EpisodeTrace> loaded;
        for (const auto& p : traces) loaded.push_back(app::read_trace_csv(p));
        return metrics_dict(app::compute_metrics(loaded, full_com));
      },
      py::arg("traces"), py::arg("full_com") = false);
}
