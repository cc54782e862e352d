#include "boundlab/control/loop.hpp"

#include "boundlab/errors.hpp"
#include "boundlab/sim/simulator.hpp"

namespace boundlab::control {

void ControlTiming::validate() const {
  if (!(dt > 0.0)) throw ConfigError("timing: dt must be positive");
  if (pd_decimation < 1 || substeps < 1) throw ConfigError("timing: step counts must be >= 1");
}

PeriodResult run_control_period(const sim::SimState& state, const JointCommand& cmd,
                                const GainSet& gains, const sim::RobotModel& model,
                                const sim::Terrain& terrain, const sim::ContactParams& contact,
                                const ControlTiming& timing) {
  PeriodResult r{state, JointVector::Zero()};
  const JointVector tau_ff = feedforward(clamp_to_limits(cmd, model), model);
  for (int k = 0; k < timing.substeps; ++k) {
    if (k % timing.pd_decimation == 0) r.torque = pd_torque(cmd, r.state, gains, tau_ff, model);
    r.state = sim::step(r.state, r.torque, model, terrain, contact, timing.dt);
  }
  return r;
}

}  // namespace boundlab::control
