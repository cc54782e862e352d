#include "boundlab/app/trace.hpp"

#include <fstream>
#include <sstream>

#include "boundlab/errors.hpp"
#include "boundlab/nn/weights_csv.hpp"
#include "boundlab/sim/simulator.hpp"

namespace boundlab::app {

EpisodeTrace run_policy_episode(const nn::Mlp& actor, rl::BoundingEnv& env, int episode) {
  EpisodeTrace trace;
  trace.episode = episode;
  while (true) {
    const sim::RobotModel model = env.domain().model;
    const rl::StepResult r = env.step(actor.forward(env.observation()));
    const sim::SimState& s = r.state;
    TraceRow row;
    row.t = s.t;
    row.x = s.x;
    row.z = s.z;
    row.pitch = s.pitch;
    row.vx = s.vx;
    row.vz = s.vz;
    row.pitch_rate = s.pitch_rate;
    row.com_z = r.blowup ? s.z : sim::center_of_mass(s, model).y();
    row.q = s.joint_positions();
    row.dq = s.joint_velocities();
    row.tau = r.torque;
    row.contact = s.contact;
    row.reward_terms = r.breakdown.terms();
    row.reward = r.reward;
    trace.rows.push_back(row);
    if (r.done()) {
      trace.termination = r.blowup ? "blowup" : reward::to_string(r.termination.reason);
      break;
    }
  }
  return trace;
}

std::vector<std::string> trace_columns() {
  static const char* legs[] = {"LF", "RF", "LH", "RH"};
  static const char* joints[] = {"roll", "hip", "knee"};
  std::vector<std::string> c = {"t", "x", "z", "pitch", "vx", "vz", "pitch_rate", "com_z"};
  for (const char* kind : {"q", "dq", "tau"})
    for (int leg = 0; leg < kNumLegs; ++leg)
      for (const char* j : joints) c.push_back(std::string(kind) + "_" + legs[leg] + "_" + j);
  for (const char* leg : legs) c.push_back(std::string("contact_") + leg);
  for (const auto& n : reward::RewardBreakdown::names()) c.push_back("r_" + n);
  c.push_back("reward");
  return c;
}

void write_trace_csv(const EpisodeTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "# episode=" << trace.episode << " termination=" << trace.termination << "\n";
  const auto cols = trace_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  using nn::format_number;
  std::string line;
  for (const auto& r : trace.rows) {
    line.clear();
    for (double v : {r.t, r.x, r.z, r.pitch, r.vx, r.vz, r.pitch_rate, r.com_z})
      line += format_number(v) + ",";
    for (const JointVector* v : {&r.q, &r.dq, &r.tau})
      for (int i = 0; i < kNumJoints; ++i) line += format_number((*v)(i)) + ",";
    for (int c : r.contact) line += std::to_string(c) + ",";
    for (double v : r.reward_terms) line += format_number(v) + ",";
    line += format_number(r.reward) + "\n";
    out << line;
  }
  if (!out) throw DataError("failed writing " + path.string());
}

EpisodeTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read trace " + path.string());
  EpisodeTrace trace;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    throw DataError(path.string() + ": missing '# episode=... termination=...' line");
  {
    std::istringstream meta(line.substr(2));
    std::string tok;
    while (meta >> tok) {
      if (tok.rfind("episode=", 0) == 0) {
        try {
          trace.episode = std::stoi(tok.substr(8));
        } catch (const std::logic_error&) {
          throw DataError(path.string() + ": bad episode number");
        }
      } else if (tok.rfind("termination=", 0) == 0) {
        trace.termination = tok.substr(12);
      }
    }
  }
  const auto cols = trace_columns();
  std::string expected;
  for (std::size_t i = 0; i < cols.size(); ++i) expected += (i ? "," : "") + cols[i];
  if (!std::getline(in, line)) throw DataError(path.string() + ": missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected) throw DataError(path.string() + ": trace columns do not match the schema");

  const int n = static_cast<int>(cols.size());
  std::vector<double> v(n);
  int row_no = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row_no;
    std::size_t start = 0;
    for (int c = 0; c < n; ++c) {
      const auto comma = line.find(',', start);
      const bool last = c + 1 == n;
      if ((comma == std::string::npos) != last)
        throw DataError(path.string() + ": row " + std::to_string(row_no) + " has the wrong width");
      const auto end = last ? line.size() : comma;
      v[c] = nn::parse_number(std::string_view(line).substr(start, end - start));
      start = end + 1;
    }
    TraceRow r;
    int k = 0;
    for (double* f : {&r.t, &r.x, &r.z, &r.pitch, &r.vx, &r.vz, &r.pitch_rate, &r.com_z}) *f = v[k++];
    for (JointVector* jv : {&r.q, &r.dq, &r.tau})
      for (int i = 0; i < kNumJoints; ++i) (*jv)(i) = v[k++];
    for (int& c : r.contact) {
      if (v[k] != 0.0 && v[k] != 1.0)
        throw DataError(path.string() + ": contact flags must be 0 or 1");
      c = static_cast<int>(v[k++]);
    }
    for (double& t : r.reward_terms) t = v[k++];
    r.reward = v[k];
    if (!trace.rows.empty() && !(r.t > trace.rows.back().t))
      throw DataError(path.string() + ": time is not strictly increasing");
    trace.rows.push_back(r);
  }
  return trace;
}

}  // namespace boundlab::app
