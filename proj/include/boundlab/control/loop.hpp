#pragma once

#include "boundlab/control/pd.hpp"
#include "boundlab/sim/robot_model.hpp"
#include "boundlab/sim/state.hpp"
#include "boundlab/sim/terrain.hpp"

namespace boundlab::control {

// Simulator step, PD refresh and control period, all in simulator steps.
struct ControlTiming {
  double dt = 0.0025;
  int pd_decimation = 2;
  int substeps = 4;

  double period() const { return dt * substeps; }
  void validate() const;
};

struct PeriodResult {
  sim::SimState state;
  JointVector torque = JointVector::Zero();  // last PD + feedforward output applied
};

// Holds `cmd` for one control period: PD plus gravity feedforward refreshed
// every pd_decimation steps.
PeriodResult run_control_period(const sim::SimState& state, const JointCommand& cmd,
                                const GainSet& gains, const sim::RobotModel& model,
                                const sim::Terrain& terrain, const sim::ContactParams& contact,
                                const ControlTiming& timing);

}  // namespace boundlab::control
