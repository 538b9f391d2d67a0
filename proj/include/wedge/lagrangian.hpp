// Lagrangian potential formulation: gradient <-> state conversions, density
// recovery from Bernoulli's law, and the nonlinear flux pair N = (u2, p) with
// its derivatives in (grad phi, A).
#pragma once

#include <utility>

#include "wedge/gas.hpp"

namespace wedge::lagr {

using gas::FlowState;
using gas::GasModel;

// (phi_y1, phi_y2) = (u2/u1, 1/(rho u1)); p2 > 0 for rightward flow.
struct Gradient {
  double p1 = 0, p2 = 1;
};

// Per-streamline data: entropy A and Bernoulli B.
struct StreamData {
  double A = 1, B = 1;
};

enum class Branch { Subsonic, Supersonic };

Gradient to_lagrangian_gradient(const FlowState& s);

// Density ceiling of the sonic threshold: the largest A for which the
// Bernoulli equation admits a (sub- or supersonic) root at this gradient.
double entropy_ceiling(const Gradient& grad, double B, const GasModel& g);

// Root of (phi_y1^2+1)/(2 phi_y2^2) + gamma/(gamma-1) A rho^(gamma+1) = B rho^2
// on the requested branch; the subsonic branch satisfies
// rho^(gamma-1) > 2(gamma-1)B/(gamma(gamma+1)A).
double rho_from_gradient(const Gradient& grad, const StreamData& sd, const GasModel& g,
                         Branch branch = Branch::Subsonic);

FlowState state_from_gradient(const Gradient& grad, const StreamData& sd, const GasModel& g,
                              Branch branch = Branch::Subsonic);

// N^1 = u2, N^2 = p of the reconstructed state.
std::pair<double, double> flux_N(const Gradient& grad, const StreamData& sd, const GasModel& g);

struct FluxJacobian {
  double n1_p1, n1_p2, n2_p1, n2_p2;  // dN^i/dphi_yj, paper closed forms
  double discriminant;                // c^2 rho^2 u1^2 / (c^2 - q^2)
};
FluxJacobian flux_N_jacobian(const Gradient& grad, const StreamData& sd, const GasModel& g);

// State plus every partial the shock operators need, via the implicit rho-root.
// T1 = u1 + p/(rho u1), T2 = p u2/u1 are the RH flux combinations.
struct ThermoPoint {
  double rho, u1, u2, p, c2, q2;
  double N1, N2, T1, T2;
  double rho_p1, rho_p2, rho_A;
  double u1_p1, u1_p2, u1_A;
  double N1_p1, N1_p2, N1_A;
  double N2_p1, N2_p2, N2_A;
  double T1_p1, T1_p2, T1_A;
  double T2_p1, T2_p2, T2_A;
};
ThermoPoint thermo_point(const Gradient& grad, const StreamData& sd, const GasModel& g,
                         Branch branch = Branch::Subsonic);

// sigma-hat'(y2) = -[phi_y2]/[phi_y1] for the jump up -> down.
double shock_slope_from_jump(const Gradient& up, const Gradient& down);

}  // namespace wedge::lagr
