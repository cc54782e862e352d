#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "boundlab/app/commands.hpp"
#include "boundlab/errors.hpp"

namespace fs = std::filesystem;
using namespace boundlab;

namespace {

app::RunConfig resolve(const std::string& config_path, const std::optional<std::uint64_t>& seed) {
  app::RunConfig cfg = config_path.empty() ? app::RunConfig{} : app::load_config(config_path);
  if (seed) cfg.seed = *seed;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"boundlab: planar quadruped bounding, pre-fit and PPO pipeline"};
  cli.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  cli.add_option("--config", config_path, "run config (section.key = value lines)");
  cli.add_option("--seed", seed, "override run.seed");

  auto* collect = cli.add_subcommand("collect", "record a reference-controller dataset");

  auto* prefit = cli.add_subcommand("prefit", "fit the actor to reference-controller targets");
  std::string dataset;
  prefit->add_option("--dataset", dataset, "dataset CSV from collect (default: collect now)");

  auto* train = cli.add_subcommand("train", "PPO fine-tuning");
  std::string init_actor;
  train->add_option("--init", init_actor, "initial actor weights (CSV or checkpoint dir)");

  auto* eval = cli.add_subcommand("eval", "roll out a checkpoint and write traces");
  std::string checkpoint;
  eval->add_option("checkpoint", checkpoint, "checkpoint directory or actor CSV")->required();

  auto* exp = cli.add_subcommand("export", "write a weight CSV from a checkpoint");
  std::string export_from, export_to;
  exp->add_option("checkpoint", export_from, "checkpoint directory or actor CSV")->required();
  exp->add_option("output", export_to, "destination CSV")->required();

  auto* metrics = cli.add_subcommand("metrics", "summarise traces");
  std::vector<std::string> trace_args;
  std::string metrics_out;
  metrics->add_option("traces", trace_args, "trace CSVs or directories (default: <out>/eval)");
  metrics->add_option("-o,--output", metrics_out, "report path (default: <out>/metrics.txt)");

  auto* plot = cli.add_subcommand("plot-data", "tidy CSVs for plotting");

  CLI11_PARSE(cli, argc, argv);

  try {
    if (exp->parsed()) {
      app::command_export(export_from, export_to);
      return 0;
    }
    const app::RunConfig cfg = resolve(config_path, seed);
    const fs::path out = app::output_dir(cfg);

    if (collect->parsed()) {
      const auto data = app::command_collect(cfg, out);
      std::cout << "rows=" << data.rows() << " -> " << (out / "dataset.csv").string() << '\n';
    } else if (prefit->parsed()) {
      std::optional<fs::path> ds;
      if (!dataset.empty()) ds = dataset;
      app::command_prefit(cfg, out, ds, &std::cout);
    } else if (train->parsed()) {
      std::optional<fs::path> init;
      if (!init_actor.empty()) init = init_actor;
      app::command_train(cfg, out, init, &std::cout);
    } else if (eval->parsed()) {
      const auto traces = app::command_eval(cfg, out, checkpoint);
      for (const auto& t : traces)
        std::cout << "episode=" << t.episode << " steps=" << t.rows.size()
                  << " termination=" << t.termination << '\n';
    } else if (metrics->parsed()) {
      std::vector<fs::path> files;
      if (trace_args.empty()) trace_args.push_back((out / "eval").string());
      for (const auto& a : trace_args) {
        if (fs::is_directory(a)) {
          for (auto& p : app::list_traces(a)) files.push_back(p);
        } else {
          files.emplace_back(a);
        }
      }
      const fs::path report = metrics_out.empty() ? out / "metrics.txt" : fs::path(metrics_out);
      const auto m = app::command_metrics(files, report, cfg.eval.full_com);
      std::cout << app::metrics_to_text(m);
    } else if (plot->parsed()) {
      for (const auto& p : app::command_plot_data(out)) std::cout << p.string() << '\n';
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
