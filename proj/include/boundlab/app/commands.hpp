#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "boundlab/app/config.hpp"
#include "boundlab/app/metrics.hpp"
#include "boundlab/app/trace.hpp"
#include "boundlab/nn/mlp.hpp"
#include "boundlab/prefit/prefit.hpp"
#include "boundlab/rl/trainer.hpp"

namespace boundlab::app {

// BOUNDLAB_OUTPUT_DIR when set, else run.output_dir.
std::filesystem::path output_dir(const RunConfig& cfg);

// Writes resolved_config.txt into `dir`.
void write_resolved_config(const RunConfig& cfg, const std::filesystem::path& dir);

// dataset.csv
prefit::PrefitDataset command_collect(const RunConfig& cfg, const std::filesystem::path& dir);

// prefit/actor.csv, prefit/loss_curve.csv, prefit/summary.txt. Collects a
// fresh dataset unless `dataset` is given.
prefit::PrefitResult command_prefit(const RunConfig& cfg, const std::filesystem::path& dir,
                                    const std::optional<std::filesystem::path>& dataset,
                                    std::ostream* log);

// train/checkpoints/..., train/reward_curve.csv. Starts from `init_actor`
// (weight CSV) when given.
rl::TrainResult command_train(const RunConfig& cfg, const std::filesystem::path& dir,
                              const std::optional<std::filesystem::path>& init_actor,
                              std::ostream* log);

// Actor weights from a checkpoint directory (its actor.csv) or a weight CSV.
nn::Mlp load_actor(const std::filesystem::path& checkpoint);

// eval.episodes deterministic episodes of the actor mean. Episode k runs in an
// environment seeded from (run.seed, k); nominal domain unless eval.randomize.
std::vector<EpisodeTrace> evaluate_actor(const nn::Mlp& actor, const RunConfig& cfg);

// eval/episode_<k>.csv from the standalone CSV import path.
std::vector<EpisodeTrace> command_eval(const RunConfig& cfg, const std::filesystem::path& dir,
                                       const std::filesystem::path& checkpoint);

void command_export(const std::filesystem::path& checkpoint, const std::filesystem::path& out);

// metrics.txt next to the traces (or in `dir`).
MetricsReport command_metrics(const std::vector<std::filesystem::path>& traces,
                              const std::filesystem::path& out_file, bool full_com);

// Trace CSVs in a directory, sorted by name.
std::vector<std::filesystem::path> list_traces(const std::filesystem::path& dir);

// plots/*.csv projected from the stored loss curve, reward curve and traces.
// Missing inputs are skipped; returns the files written.
std::vector<std::filesystem::path> command_plot_data(const std::filesystem::path& dir);

}  // namespace boundlab::app
