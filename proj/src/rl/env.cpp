#include "boundlab/rl/env.hpp"

#include "boundlab/errors.hpp"
#include "boundlab/random.hpp"
#include "boundlab/sim/simulator.hpp"

namespace boundlab::rl {

void EnvConfig::validate() const {
  timing.validate();
  gains.validate();
  contact.validate();
  gait.validate();
  termination.validate();
  randomization.validate();
}

BoundingEnv::BoundingEnv(EnvConfig cfg, sim::RobotModel base_model, sim::Terrain base_terrain,
                         std::uint64_t seed)
    : cfg_(std::move(cfg)),
      base_model_(std::move(base_model)),
      base_terrain_(std::move(base_terrain)),
      seed_(seed),
      builder_(cfg_.features, cfg_.timing.period()) {
  cfg_.validate();
  base_model_.validate();
  base_terrain_.validate();
  begin_episode();
}

void BoundingEnv::begin_episode() {
  const std::uint64_t s = mix_seed(seed_, episode_);
  domain_ = randomize_domain(base_model_, base_terrain_, cfg_.randomization, s);
  state_ = sim::reset(domain_.model, domain_.terrain, mix_seed(s, 1), cfg_.randomization.start);
  builder_.reset(state_);
  observation_ = builder_.build(state_, domain_.terrain);
  previous_torque_.setZero();
  first_step_ = true;
  steps_ = 0;
  return_ = 0.0;
}

StepResult BoundingEnv::step(const JointVector& action) {
  StepResult r;
  control::JointCommand cmd;
  cmd.position = action;
  try {
    const auto period = control::run_control_period(state_, cmd, cfg_.gains, domain_.model,
                                                    domain_.terrain, cfg_.contact, cfg_.timing);
    state_ = period.state;
    r.torque = period.torque;
    // No torque history on the first step of an episode: smoothness starts at 0.
    const JointVector& prev = first_step_ ? r.torque : previous_torque_;
    r.breakdown = reward::compute_reward(state_, r.torque, prev, state_.t, cfg_.weights, cfg_.gait);
    r.reward = r.breakdown.total;
    r.termination =
        reward::check_termination(state_, cfg_.termination, domain_.model, domain_.terrain, cfg_.contact);
  } catch (const DynamicsBlowup&) {
    r.blowup = true;
  }
  r.state = state_;
  previous_torque_ = r.torque;
  first_step_ = false;
  ++steps_;
  return_ += r.reward;

  if (r.done()) {
    r.episode_steps = steps_;
    r.episode_return = return_;
    if (!r.failed()) r.terminal_observation = builder_.build(state_, domain_.terrain);
    ++episode_;
    begin_episode();
    r.observation = observation_;
  } else {
    observation_ = builder_.build(state_, domain_.terrain);
    r.observation = observation_;
  }
  return r;
}

}  // namespace boundlab::rl
