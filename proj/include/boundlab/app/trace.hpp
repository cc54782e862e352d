#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "boundlab/common.hpp"
#include "boundlab/nn/mlp.hpp"
#include "boundlab/reward/reward.hpp"
#include "boundlab/rl/env.hpp"

namespace boundlab::app {

struct TraceRow {
  double t = 0.0;
  double x = 0.0, z = 0.0, pitch = 0.0;
  double vx = 0.0, vz = 0.0, pitch_rate = 0.0;
  double com_z = 0.0;  // multi-body centre of mass height
  JointVector q = JointVector::Zero();
  JointVector dq = JointVector::Zero();
  JointVector tau = JointVector::Zero();
  std::array<int, kNumLegs> contact{0, 0, 0, 0};
  std::array<double, reward::RewardBreakdown::kTerms> reward_terms{};
  double reward = 0.0;
};

struct EpisodeTrace {
  int episode = 0;
  std::string termination = "none";  // TerminationReason name, or "blowup"
  std::vector<TraceRow> rows;

  bool fell() const { return termination != "none" && termination != "timeout"; }
};

// Deterministic rollout of the actor mean in one environment episode, one row
// per control step after the step is applied.
EpisodeTrace run_policy_episode(const nn::Mlp& actor, rl::BoundingEnv& env, int episode);

std::vector<std::string> trace_columns();

// A `# episode=<n> termination=<reason>` line, the column header, then rows.
void write_trace_csv(const EpisodeTrace& trace, const std::filesystem::path& path);
// Throws DataError when the header does not match trace_columns().
EpisodeTrace read_trace_csv(const std::filesystem::path& path);

}  // namespace boundlab::app
