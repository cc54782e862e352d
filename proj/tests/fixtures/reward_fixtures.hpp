#pragma once

// Generated by gen_reward_fixtures.py. Expected values come from the term
// definitions evaluated independently in Python.

#include <array>

namespace fixtures {

struct RewardFixture {
  const char* name;
  double vx;
  double t;
  std::array<double, 12> tau;
  std::array<double, 12> prev_tau;
  std::array<double, 12> q;
  std::array<double, 12> dq;
  std::array<int, 4> contact;
  double pitch;
  std::array<double, 4> phase;
  // body_velocity, joint_torque, joint_velocity, gait, position_uniformity,
  // torque_uniformity, smoothness, pitch_limit
  std::array<double, 8> expected;
};

inline const std::array<RewardFixture, 10> kRewardFixtures{{
    {"forward speed 1 m/s", 1.0, 0.0,
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {0.0, -0.6, 1.2, 0.0, -0.6, 1.2, 0.0, -0.6, 1.2, 0.0, -0.6, 1.2},
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {0, 0, 0, 0}, 0.0,
     {0.0, 0.0, 3.141592653589793, 3.141592653589793},
     {160.0, -0.0, -0.0, -0.0, -0.0, -0.0, -0.0, 0.0}},
    {"episode start zeroes the ramps", 0.0, 0.0,
     {1.0, -2.0, 3.0, -4.0, 5.0, -6.0, 7.0, -8.0, 9.0, -10.0, 11.0, -12.0},
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {0.0, -0.6, 1.2, 0.0, -0.6, 1.2, 0.0, -0.6, 1.2, 0.0, -0.6, 1.2},
     {-3.0, -2.5, -2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5},
     {0, 0, 0, 0}, 0.0,
     {0.0, 0.0, 3.141592653589793, 3.141592653589793},
     {0.0, -0.0, -0.0, -0.0, -0.0, -0.078, -2.5495097567963924e-05, 0.0}},
    {"all feet down at quarter period, shared phase", 0.0, 0.08333333333333333,
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {0.0, -0.6, 1.2, 0.0, -0.6, 1.2, 0.0, -0.6, 1.2, 0.0, -0.6, 1.2},
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {1, 1, 1, 1}, 0.0,
     {0.0, 0.0, 0.0, 0.0},
     {0.0, -0.0, -0.0, -173.33333333333334, -0.0, -0.0, -0.0, 0.0}},
    {"front pair down during its swing window", 0.2, 0.08333333333333333,
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {0.0, -0.6, 1.2, 0.0, -0.6, 1.2, 0.0, -0.6, 1.2, 0.0, -0.6, 1.2},
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {1, 1, 0, 0}, 0.1,
     {0.0, 0.0, 3.141592653589793, 3.141592653589793},
     {6.400000000000001, -0.0, -0.0, -86.66666666666667, -0.0, -0.0, -0.0, 0.0}},
    {"hind pair down during its stance window", 0.0, 0.08333333333333333,
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {0.0, -0.6, 1.2, 0.0, -0.6, 1.2, 0.0, -0.6, 1.2, 0.0, -0.6, 1.2},
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {0, 0, 1, 1}, -0.2,
     {0.0, 0.0, 3.141592653589793, 3.141592653589793},
     {0.0, -0.0, -0.0, 86.66666666666667, -0.0, -0.0, -0.0, 0.0}},
    {"pitch beyond threshold", 0.0, 0.5,
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {0.0, -0.6, 1.2, 0.0, -0.6, 1.2, 0.0, -0.6, 1.2, 0.0, -0.6, 1.2},
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {0, 0, 0, 0}, 0.5,
     {0.0, 0.0, 3.141592653589793, 3.141592653589793},
     {0.0, -0.0, -0.0, -0.0, -0.0, -0.0, -0.0, -4.0}},
    {"torque and velocity ramps", 0.0, 10.0,
     {1.0, -2.0, 3.0, -4.0, 5.0, -6.0, 7.0, -8.0, 9.0, -10.0, 11.0, -12.0},
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {0.0, -0.6, 1.2, 0.0, -0.6, 1.2, 0.0, -0.6, 1.2, 0.0, -0.6, 1.2},
     {-3.0, -2.5, -2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5},
     {0, 0, 0, 0}, 0.0,
     {0.0, 0.0, 3.141592653589793, 3.141592653589793},
     {0.0, -0.059272038111815084, -0.0010658267292144815, -0.0, -0.0, -0.078, -2.5495097567963924e-05, 0.0}},
    {"left right asymmetry", 0.0, 2.0,
     {1.0, 5.0, -8.0, -1.0, 4.0, -6.0, 0.5, 10.0, -12.0, 0.0, 9.0, -12.5},
     {1.0, 4.0, -7.0, -1.0, 4.0, -6.0, 0.5, 9.0, -12.0, 0.0, 9.0, -11.0},
     {0.1, -0.5, 1.2, -0.1, -0.4, 1.0, 0.0, -0.6, 1.3, 0.05, -0.6, 1.1},
     {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
     {0, 0, 0, 0}, 0.0,
     {0.0, 0.0, 3.141592653589793, 3.141592653589793},
     {0.0, -0.011016508137336128, -0.0, -0.0, -0.007499999999999999, -0.007, -2.2912878474779198e-06, 0.0}},
    {"negative pitch with mixed contact", -0.4, 0.37,
     {0.0, 3.0, -9.0, 0.0, 3.0, -9.0, 0.0, 3.0, -9.0, 0.0, 3.0, -9.0},
     {0.0, 2.0, -10.0, 0.0, 2.0, -10.0, 0.0, 2.0, -10.0, 0.0, 2.0, -10.0},
     {0.0, -0.6, 1.2, 0.0, -0.6, 1.2, 0.0, -0.6, 1.2, 0.0, -0.6, 1.2},
     {0.0, 2.0, -4.0, 0.0, 2.0, -4.0, 0.0, 2.0, -4.0, 0.0, 2.0, -4.0},
     {1, 0, 1, 0}, -0.45,
     {0.0, 0.0, 3.141592653589793, 3.141592653589793},
     {25.600000000000005, -0.0014206962717442455, -5.3279027483701996e-05, -2.7755575615628914e-14, -0.0, -0.0, -2.8284271247461903e-06, -3.0000000000000004}},
    {"everything at once", 0.83, 3.21,
     {2.0, -7.5, 15.0, -1.5, -6.0, 14.0, 0.7, 9.0, -20.0, -0.3, 8.5, -18.0},
     {1.5, -7.0, 16.0, -1.0, -6.5, 13.0, 0.2, 8.0, -19.0, 0.0, 8.0, -17.5},
     {0.05, -0.7, 1.3, -0.02, -0.65, 1.25, 0.1, -0.4, 1.0, 0.08, -0.45, 0.95},
     {0.3, -4.0, 6.0, -0.2, -3.5, 5.5, 0.1, 2.0, -3.0, 0.0, 2.5, -2.5},
     {1, 1, 0, 1}, 0.62,
     {0.0, 0.0, 3.141592653589793, 3.141592653589793},
     {110.22399999999999, -0.02617829453174417, -0.0005693140456559433, 38.981994589799406, -0.0029000000000000002, -0.0095, -2.4166091947189145e-06, -6.4}},
}};

}  // namespace fixtures
