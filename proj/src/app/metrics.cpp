#include "boundlab/app/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "boundlab/errors.hpp"
#include "boundlab/nn/weights_csv.hpp"

namespace boundlab::app {

HeightStats height_stats(const std::vector<double>& s) {
  if (s.empty()) throw DataError("height statistics of an empty series");
  HeightStats h;
  h.min = *std::min_element(s.begin(), s.end());
  h.max = *std::max_element(s.begin(), s.end());
  // shifted by the first sample so a constant series gives exactly 0
  const double shift = s.front();
  double sum = 0.0;
  for (double v : s) sum += v - shift;
  const double mean = sum / s.size();
  double sq = 0.0;
  for (double v : s) sq += (v - shift - mean) * (v - shift - mean);
  h.mean = shift + mean;
  h.stddev = std::sqrt(sq / s.size());
  return h;
}

namespace {

std::vector<double> centered(const std::vector<double>& x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= x.empty() ? 1.0 : x.size();
  std::vector<double> c(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) c[i] = x[i] - mean;
  return c;
}

// Normalised correlation of a(t) with b(t + lag) over the overlap.
double correlation(const std::vector<double>& a, const std::vector<double>& b, int lag) {
  const int n = static_cast<int>(a.size()) - lag;
  if (n <= 0) return 0.0;
  double s = 0.0;
  for (int t = 0; t < n; ++t) s += a[t] * b[t + lag];
  return s / n;
}

double parabola_offset(double left, double mid, double right) {
  const double denom = left - 2.0 * mid + right;
  if (denom >= 0.0) return 0.0;
  return std::clamp(0.5 * (left - right) / denom, -0.5, 0.5);
}

}  // namespace

double dominant_period(const std::vector<double>& signal) {
  const auto c = centered(signal);
  const int n = static_cast<int>(c.size());
  const double r0 = correlation(c, c, 0);
  if (n < 4 || r0 <= 1e-15) return 0.0;
  const int max_lag = n / 2;
  std::vector<double> r(max_lag + 2, 0.0);
  for (int lag = 0; lag <= max_lag + 1 && lag < n; ++lag) r[lag] = correlation(c, c, lag) / r0;
  int lag = 1;
  while (lag <= max_lag && r[lag] > 0.0) ++lag;
  std::vector<int> peaks;
  for (; lag <= max_lag; ++lag)
    if (r[lag] > 0.0 && r[lag] >= r[lag - 1] && r[lag] >= r[lag + 1]) peaks.push_back(lag);
  if (peaks.empty()) return 0.0;
  // multiples of the period peak about as high; take the first near the top
  double top = 0.0;
  for (int p : peaks) top = std::max(top, r[p]);
  int best = peaks.front();
  for (int p : peaks)
    if (r[p] >= 0.9 * top) {
      best = p;
      break;
    }
  return best + parabola_offset(r[best - 1], r[best], r[best + 1]);
}

double phase_lag_fraction(const std::vector<double>& a, const std::vector<double>& b, double period) {
  if (!(period > 0.0) || a.size() != b.size()) return 0.0;
  const auto ca = centered(a);
  const auto cb = centered(b);
  const int span = static_cast<int>(std::ceil(period));
  std::vector<double> r(span + 2);
  for (int lag = 0; lag < span + 2; ++lag) r[lag] = correlation(ca, cb, lag);
  int best = 0;
  for (int lag = 1; lag <= span; ++lag)
    if (r[lag] > r[best]) best = lag;
  double refined = best;
  if (best > 0) refined += parabola_offset(r[best - 1], r[best], r[best + 1]);
  const double frac = std::fmod(refined / period, 1.0);
  return frac < 0.0 ? frac + 1.0 : frac;
}

MetricsReport compute_metrics(const std::vector<EpisodeTrace>& traces, bool full_com) {
  if (traces.empty()) throw DataError("metrics need at least one trace");
  MetricsReport m;
  m.episodes = static_cast<int>(traces.size());
  std::vector<double> pooled;
  double speed_sum = 0.0, freq_sum = 0.0, phase_sum = 0.0;
  int freq_count = 0, phase_count = 0, falls = 0;
  for (const auto& tr : traces) {
    if (tr.rows.empty()) throw DataError("trace " + std::to_string(tr.episode) + " is empty");
    const auto& first = tr.rows.front();
    const auto& last = tr.rows.back();
    // each row covers one control period
    const double dt = tr.rows.size() > 1 ? tr.rows[1].t - first.t : first.t;
    const double elapsed = last.t - first.t + dt;
    const double span = last.t - first.t;
    speed_sum += span > 0.0 ? (last.x - first.x) / span : 0.0;
    m.duration += elapsed;
    if (tr.fell()) ++falls;

    std::vector<double> h;
    for (const auto& r : tr.rows) h.push_back(full_com ? r.com_z : r.z);
    m.per_episode.push_back(height_stats(h));
    pooled.insert(pooled.end(), h.begin(), h.end());

    std::vector<double> front(tr.rows.size()), hind(tr.rows.size());
    double period_sum = 0.0;
    int periods = 0;
    for (int foot = 0; foot < kNumLegs; ++foot) {
      std::vector<double> c(tr.rows.size());
      for (std::size_t i = 0; i < tr.rows.size(); ++i) c[i] = tr.rows[i].contact[foot];
      const double p = dominant_period(c);
      if (p > 0.0) {
        period_sum += p;
        ++periods;
      }
    }
    for (std::size_t i = 0; i < tr.rows.size(); ++i) {
      front[i] = 0.5 * (tr.rows[i].contact[0] + tr.rows[i].contact[1]);
      hind[i] = 0.5 * (tr.rows[i].contact[2] + tr.rows[i].contact[3]);
    }
    if (periods > 0 && dt > 0.0) {
      const double period = period_sum / periods;
      freq_sum += 1.0 / (period * dt);
      ++freq_count;
      phase_sum += phase_lag_fraction(front, hind, period);
      ++phase_count;
    }
  }
  m.mean_forward_speed = speed_sum / traces.size();
  m.height = height_stats(pooled);
  m.contact_frequency = freq_count ? freq_sum / freq_count : 0.0;
  m.pair_phase_difference = phase_count ? phase_sum / phase_count : 0.0;
  m.falls_per_minute = m.duration > 0.0 ? falls / (m.duration / 60.0) : 0.0;
  return m;
}

std::string metrics_to_text(const MetricsReport& m) {
  using nn::format_number;
  std::string s = "# height statistics use the population standard deviation\n";
  s += "episodes = " + std::to_string(m.episodes) + "\n";
  s += "duration_s = " + format_number(m.duration) + "\n";
  s += "mean_forward_speed = " + format_number(m.mean_forward_speed) + "\n";
  s += "com_height_min = " + format_number(m.height.min) + "\n";
  s += "com_height_max = " + format_number(m.height.max) + "\n";
  s += "com_height_mean = " + format_number(m.height.mean) + "\n";
  s += "com_height_stddev = " + format_number(m.height.stddev) + "\n";
  s += "contact_frequency_hz = " + format_number(m.contact_frequency) + "\n";
  s += "pair_phase_difference = " + format_number(m.pair_phase_difference) + "\n";
  s += "falls_per_minute = " + format_number(m.falls_per_minute) + "\n";
  for (std::size_t i = 0; i < m.per_episode.size(); ++i)
    s += "episode_" + std::to_string(i) + "_com_height_stddev = " +
         format_number(m.per_episode[i].stddev) + "\n";
  return s;
}

}  // namespace boundlab::app
