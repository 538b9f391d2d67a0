#include "wedge/lagrangian.hpp"

#include <algorithm>
#include <cmath>

#include "wedge/numerics.hpp"

namespace wedge::lagr {

namespace {

// Residual of the Bernoulli density equation and its rho-derivative.
// R(rho) = K + gamma/(gamma-1) A rho^(gamma+1) - B rho^2, K = (p1^2+1)/(2 p2^2).
// R_rho = rho (c^2 - q^2) evaluated on the constraint, so the subsonic branch is
// exactly where R is increasing.
struct BernoulliEq {
  double K, A, B, gamma;
  double operator()(double rho, double* dR) const {
    double rg = std::pow(rho, gamma - 1.0);  // rho^(gamma-1)
    double R = K + gamma / (gamma - 1.0) * A * rg * rho * rho - B * rho * rho;
    if (dR) *dR = gamma * (gamma + 1.0) / (gamma - 1.0) * A * rg * rho - 2.0 * B * rho;
    return R;
  }
};

double sonic_density(double A, double B, double gamma) {
  return std::pow(2.0 * (gamma - 1.0) * B / (gamma * (gamma + 1.0) * A), 1.0 / (gamma - 1.0));
}

}  // namespace

Gradient to_lagrangian_gradient(const FlowState& s) {
  gas::validate(s);
  if (s.u1 <= 0) fail(Err::Stagnation, "Lagrangian gradient requires u1 > 0");
  return Gradient{s.u2 / s.u1, 1.0 / (s.rho * s.u1)};
}

double entropy_ceiling(const Gradient& grad, double B, const GasModel& g) {
  double K = (grad.p1 * grad.p1 + 1.0) / (2.0 * grad.p2 * grad.p2);
  double r_min = std::sqrt(K * (g.gamma + 1.0) / (B * (g.gamma - 1.0)));
  return 2.0 * (g.gamma - 1.0) * B / (g.gamma * (g.gamma + 1.0) * std::pow(r_min, g.gamma - 1.0));
}

double rho_from_gradient(const Gradient& grad, const StreamData& sd, const GasModel& g,
                         Branch branch) {
  if (!(grad.p2 > 0)) fail(Err::PreconditionViolated, "phi_y2 must be positive");
  if (!(sd.A > 0) || !(sd.B > 0)) fail(Err::PreconditionViolated, "A, B must be positive");
  const double gamma = g.gamma;
  BernoulliEq eq{(grad.p1 * grad.p1 + 1.0) / (2.0 * grad.p2 * grad.p2), sd.A, sd.B, gamma};
  double rs = sonic_density(sd.A, sd.B, gamma);
  if (eq(rs, nullptr) > 0)
    fail(Err::NoSubsonicRoot, "gradient/entropy data admit no flow (past the sonic ceiling)");
  auto fdf = [&eq](double r, double* d) { return eq(r, d); };
  if (branch == Branch::Subsonic) {
    double hi = rs;
    for (int i = 0; i < 200 && eq(hi, nullptr) < 0; ++i) hi *= 1.3;
    return num::newton_bracketed(fdf, rs, hi, 0.5 * (rs + hi), 1e-15);
  }
  double lo = rs;
  for (int i = 0; i < 400 && eq(lo, nullptr) < 0; ++i) lo *= 0.7;
  if (eq(lo, nullptr) < 0) fail(Err::RootBracketFail, "no supersonic density root");
  return num::newton_bracketed(fdf, lo, rs, 0.5 * (lo + rs), 1e-15);
}

FlowState state_from_gradient(const Gradient& grad, const StreamData& sd, const GasModel& g,
                              Branch branch) {
  double rho = rho_from_gradient(grad, sd, g, branch);
  double u1 = 1.0 / (rho * grad.p2);
  return FlowState{u1, grad.p1 * u1, sd.A * std::pow(rho, g.gamma), rho};
}

std::pair<double, double> flux_N(const Gradient& grad, const StreamData& sd, const GasModel& g) {
  FlowState s = state_from_gradient(grad, sd, g);
  return {s.u2, s.p};
}

FluxJacobian flux_N_jacobian(const Gradient& grad, const StreamData& sd, const GasModel& g) {
  FlowState s = state_from_gradient(grad, sd, g);
  double c2 = g.gamma * s.p / s.rho;
  double q2 = s.u1 * s.u1 + s.u2 * s.u2;
  double D = c2 - q2;
  if (D <= 0) fail(Err::SonicDegeneracy, "flux Jacobian requires a strictly subsonic state");
  FluxJacobian j;
  j.n1_p1 = s.u1 * (c2 - s.u1 * s.u1) / D;
  j.n1_p2 = -c2 * s.rho * s.u1 * s.u2 / D;
  j.n2_p1 = j.n1_p2;
  j.n2_p2 = c2 * s.rho * s.rho * q2 * s.u1 / D;
  // product of the closed-form entries: c^2 rho^2 u1^4 / (c^2 - q^2)
  j.discriminant = j.n1_p1 * j.n2_p2 - j.n1_p2 * j.n2_p1;
  return j;
}

ThermoPoint thermo_point(const Gradient& grad, const StreamData& sd, const GasModel& g,
                         Branch branch) {
  const double gamma = g.gamma;
  ThermoPoint t;
  t.rho = rho_from_gradient(grad, sd, g, branch);
  const double p1 = grad.p1, p2 = grad.p2, rho = t.rho;
  t.u1 = 1.0 / (rho * p2);
  t.u2 = p1 * t.u1;
  double rg = std::pow(rho, gamma - 1.0);
  t.p = sd.A * rg * rho;
  t.c2 = gamma * t.p / rho;
  t.q2 = t.u1 * t.u1 + t.u2 * t.u2;
  t.N1 = t.u2;
  t.N2 = t.p;
  t.T1 = t.u1 + t.p * p2;
  t.T2 = t.p * p1;

  // implicit derivatives of the Bernoulli root: drho/dx = -R_x / R_rho,
  // R_rho = rho (c^2 - q^2)
  double Rr = rho * (t.c2 - t.q2);
  if (Rr == 0) fail(Err::SonicDegeneracy, "thermo point at the sonic threshold");
  t.rho_p1 = -(p1 / (p2 * p2)) / Rr;
  t.rho_p2 = (p1 * p1 + 1.0) / (p2 * p2 * p2) / Rr;
  t.rho_A = -gamma / (gamma - 1.0) * rg * rho * rho / Rr;

  double u1_p1 = t.u1_p1 = -t.rho_p1 / (rho * rho * p2);
  double u1_p2 = t.u1_p2 = -1.0 / (rho * p2 * p2) - t.rho_p2 / (rho * rho * p2);
  double u1_A = t.u1_A = -t.rho_A / (rho * rho * p2);
  double p_p1 = t.c2 * t.rho_p1;
  double p_p2 = t.c2 * t.rho_p2;
  double p_A = rg * rho + t.c2 * t.rho_A;

  t.N1_p1 = t.u1 + p1 * u1_p1;
  t.N1_p2 = p1 * u1_p2;
  t.N1_A = p1 * u1_A;
  t.N2_p1 = p_p1;
  t.N2_p2 = p_p2;
  t.N2_A = p_A;
  t.T1_p1 = u1_p1 + p2 * p_p1;
  t.T1_p2 = u1_p2 + t.p + p2 * p_p2;
  t.T1_A = u1_A + p2 * p_A;
  t.T2_p1 = t.p + p1 * p_p1;
  t.T2_p2 = p1 * p_p2;
  t.T2_A = p1 * p_A;
  return t;
}

double shock_slope_from_jump(const Gradient& up, const Gradient& down) {
  double j1 = down.p1 - up.p1;
  double j2 = down.p2 - up.p2;
  double scale = std::abs(down.p1) + std::abs(up.p1) + 1e-300;
  if (std::abs(j1) <= 1e-14 * scale)
    fail(Err::ParallelJump, "[phi_y1] vanishes; shock slope undefined");
  return -j2 / j1;
}

}  // namespace wedge::lagr
