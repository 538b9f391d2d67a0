// Polytropic-gas thermodynamics on primitive flow states.
#pragma once

#include <cmath>

#include "wedge/error.hpp"

namespace wedge::gas {

struct GasModel {
  double gamma = 1.4;  // adiabatic exponent, > 1
};

// Primitive state (u1, u2, p, rho), all nondimensional; p > 0, rho > 0.
struct FlowState {
  double u1 = 0, u2 = 0, p = 1, rho = 1;
};

inline void validate(const FlowState& s) {
  if (!(s.p > 0) || !(s.rho > 0) || !std::isfinite(s.u1) || !std::isfinite(s.u2))
    fail(Err::PreconditionViolated, "flow state requires p > 0, rho > 0, finite velocity");
}

inline double speed(const FlowState& s) { return std::hypot(s.u1, s.u2); }

inline double sonic_speed(const FlowState& s, const GasModel& g) {
  return std::sqrt(g.gamma * s.p / s.rho);
}

inline double mach(const FlowState& s, const GasModel& g) {
  return speed(s) / sonic_speed(s, g);
}

inline bool is_subsonic(const FlowState& s, const GasModel& g) { return mach(s, g) < 1.0; }

// A = p / rho^gamma, constant along streamlines away from shocks.
inline double entropy_A(const FlowState& s, const GasModel& g) {
  return s.p / std::pow(s.rho, g.gamma);
}

// B = |u|^2/2 + gamma p / ((gamma-1) rho), conserved across shocks.
inline double bernoulli_B(const FlowState& s, const GasModel& g) {
  return 0.5 * (s.u1 * s.u1 + s.u2 * s.u2) + g.gamma * s.p / ((g.gamma - 1.0) * s.rho);
}

}  // namespace wedge::gas
