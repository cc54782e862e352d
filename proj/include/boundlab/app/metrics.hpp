#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "boundlab/app/trace.hpp"

namespace boundlab::app {

struct HeightStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double stddev = 0.0;  // population
};

struct MetricsReport {
  double mean_forward_speed = 0.0;  // m/s, displacement / time averaged over traces
  HeightStats height;               // pooled over all samples
  std::vector<HeightStats> per_episode;
  double contact_frequency = 0.0;   // Hz, 0 when no periodicity is found
  double pair_phase_difference = 0.0;  // fraction of a period in [0, 1)
  double falls_per_minute = 0.0;
  int episodes = 0;
  double duration = 0.0;  // s of simulated time in all traces
};

// Two-pass population statistics. Throws DataError on an empty series.
HeightStats height_stats(const std::vector<double>& series);

// Dominant period of a sampled signal, in samples: the first autocorrelation
// peak after the first zero crossing that reaches 90% of the tallest one,
// refined by a parabola through the peak. Returns 0 when the signal is
// constant or has no peak.
double dominant_period(const std::vector<double>& signal);

// Lag in [0, period) maximising the circular-free cross-correlation of a(t)
// with b(t + lag), refined by a parabola, as a fraction of the period.
double phase_lag_fraction(const std::vector<double>& a, const std::vector<double>& b, double period);

// Throws DataError when `traces` is empty or any trace has no rows.
MetricsReport compute_metrics(const std::vector<EpisodeTrace>& traces, bool full_com = false);

std::string metrics_to_text(const MetricsReport& m);

}  // namespace boundlab::app
