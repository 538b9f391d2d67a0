#include "wedge/shock_polar.hpp"

#include <algorithm>
#include <cmath>

#include "wedge/numerics.hpp"

namespace wedge::polar {

namespace {

struct Upstream {
  double p, rho, u1, B, ir, T1;  // ir = 1/(rho u1), T1 = u1 + p/(rho u1)
};

Upstream pack(const FlowState& up, const GasModel& g) {
  Upstream u;
  u.p = up.p;
  u.rho = up.rho;
  u.u1 = up.u1;
  u.B = gas::bernoulli_B(up, g);
  u.ir = 1.0 / (up.rho * up.u1);
  u.T1 = up.u1 + up.p * u.ir;
  return u;
}

// k^2 eliminated through Bernoulli: k^2 = q^2/u1^2 - 1, q^2 = 2(B - gamma p/((gamma-1) rho)).
double k2_of(const Upstream& up, double p, double rho, double u1, double gamma) {
  double q2 = 2.0 * (up.B - gamma * p / ((gamma - 1.0) * rho));
  return q2 / (u1 * u1) - 1.0;
}

// One damped Newton solve of (con-RH-polar01),(con-RH-polar02) at fixed p.
bool newton_at_pressure(const Upstream& up, double p, double gamma, double& rho, double& u1) {
  const double jp = p - up.p;
  int polish = 0;
  for (int it = 0; it < 60; ++it) {
    double q2 = 2.0 * (up.B - gamma * p / ((gamma - 1.0) * rho));
    double k2 = q2 / (u1 * u1) - 1.0;
    double F1 = (1.0 / (rho * u1) - up.ir) * jp + u1 * k2;
    double F2 = (u1 + p / (rho * u1) - up.T1) * jp + u1 * p * k2;

    double dq2_rho = 2.0 * gamma * p / ((gamma - 1.0) * rho * rho);
    double dk2_rho = dq2_rho / (u1 * u1);
    double dk2_u1 = -2.0 * q2 / (u1 * u1 * u1);
    double a = -jp / (rho * rho * u1) + u1 * dk2_rho;
    double b = -jp / (rho * u1 * u1) + k2 + u1 * dk2_u1;
    double c = -p * jp / (rho * rho * u1) + u1 * p * dk2_rho;
    double d = jp * (1.0 - p / (rho * u1 * u1)) + p * k2 + u1 * p * dk2_u1;

    double det = a * d - b * c;
    if (det == 0) return false;
    double drho = (-F1 * d + F2 * b) / det;
    double du1 = (-a * F2 + c * F1) / det;
    double t = 1.0;
    while ((rho + t * drho <= 0 || u1 + t * du1 <= 0) && t > 1e-8) t *= 0.5;
    rho += t * drho;
    u1 += t * du1;
    // near vanishing strength the system is ill-conditioned; a couple of extra
    // full steps after the step-size test keeps residuals at rounding level
    if (std::abs(drho) <= 1e-15 * (1 + rho) && std::abs(du1) <= 1e-15 * (1 + u1)) {
      if (++polish < 3) continue;
      return true;
    }
  }
  return false;
}

FlowState assemble_downstream(const Upstream& up, double p, double rho, double u1, double gamma) {
  double k2 = k2_of(up, p, rho, u1, gamma);
  double u2 = u1 * std::sqrt(std::max(k2, 0.0));
  return FlowState{u1, u2, p, rho};
}

double mach_down(const FlowState& s, const GasModel& g) { return gas::mach(s, g); }

}  // namespace

const char* arc_name(Arc a) {
  switch (a) {
    case Arc::TS: return "TS";
    case Arc::TH: return "TH";
    case Arc::Tangent: return "Tangent";
    case Arc::Sonic: return "Sonic";
    case Arc::NormalS: return "NormalS";
    case Arc::Other: return "Other";
  }
  return "?";
}

void require_supersonic_horizontal(const FlowState& up, const GasModel& g) {
  gas::validate(up);
  if (std::abs(up.u2) > 1e-12 * std::abs(up.u1))
    fail(Err::PreconditionViolated, "upstream must be horizontal (u2 = 0)");
  double m = gas::mach(up, g);
  if (m <= 1.0) fail(Err::NotSupersonic, "upstream Mach <= 1");
  if (m < 1.0 + 1e-6) fail(Err::NearSonic, "upstream Mach within 1e-6 of 1");
}

double normal_shock_pressure(const FlowState& up, const GasModel& g) {
  double M2 = gas::mach(up, g);
  M2 *= M2;
  return up.p * (2.0 * g.gamma * M2 - (g.gamma - 1.0)) / (g.gamma + 1.0);
}

FlowState downstream_at_pressure(const FlowState& up, double p, const GasModel& g) {
  require_supersonic_horizontal(up, g);
  const Upstream u = pack(up, g);
  const double pn = normal_shock_pressure(up, g);
  if (!(p > up.p) || p > pn * (1.0 + 1e-12))
    fail(Err::PreconditionViolated, "polar pressure outside (p_upstream, p_normal]");
  // normal-shock closed form seeds the continuation
  double M2 = gas::mach(up, g);
  M2 *= M2;
  double rho = up.rho * ((g.gamma + 1.0) * M2) / ((g.gamma - 1.0) * M2 + 2.0);
  double u1 = up.u1 * up.rho / rho;
  double pc = pn;
  const int steps = 64;
  for (int m = 1; m <= steps; ++m) {
    double tgt = pn + (p - pn) * (double(m) / steps);
    if (!newton_at_pressure(u, tgt, g.gamma, rho, u1)) {
      // halve the continuation step once; the curve is smooth away from p -> p_upstream
      double mid = 0.5 * (pc + tgt);
      if (!newton_at_pressure(u, mid, g.gamma, rho, u1) ||
          !newton_at_pressure(u, tgt, g.gamma, rho, u1))
        fail(Err::SolverDiverged, "polar continuation failed");
    }
    pc = tgt;
  }
  return assemble_downstream(u, p, rho, u1, g.gamma);
}

double wedge_angle_at_pressure(const FlowState& up, double p, const GasModel& g) {
  FlowState d = downstream_at_pressure(up, p, g);
  return std::atan2(d.u2, d.u1);
}

double lagrangian_slope(const FlowState& up, const FlowState& down) {
  double jp = down.p - up.p;
  if (jp == 0) fail(Err::ParallelJump, "zero-strength shock has no slope from jumps");
  return down.u2 / jp;
}

double rh_residual_max(const FlowState& up, const FlowState& down, double s, const GasModel& g) {
  double k = down.u2 / down.u1;
  double jp = down.p - up.p;
  double ir = 1.0 / (down.rho * down.u1), ir_m = 1.0 / (up.rho * up.u1);
  double T1 = down.u1 + down.p * ir, T1_m = up.u1 + up.p * ir_m;
  double r1 = (ir - ir_m) + k * s;
  double r2 = (T1 - T1_m) + down.p * k * s;
  double r3 = down.u1 * k - jp * s;
  double r4 = gas::bernoulli_B(down, g) - gas::bernoulli_B(up, g);
  double s1 = std::abs(ir) + std::abs(ir_m) + std::abs(k * s);
  double s2 = std::abs(T1) + std::abs(T1_m) + std::abs(down.p * k * s);
  double s3 = std::abs(down.u2) + std::abs(jp * s) + 1e-300;
  double s4 = std::abs(gas::bernoulli_B(up, g));
  double m = std::abs(r1) / s1;
  m = std::max(m, std::abs(r2) / s2);
  if (s3 > 1e-250) m = std::max(m, std::abs(r3) / s3);
  m = std::max(m, std::abs(r4) / s4);
  return m;
}

PolarPoint solve_downstream(const FlowState& up, double wedge_angle, Root root,
                            const GasModel& g) {
  require_supersonic_horizontal(up, g);
  PolarSummary sum = polar_summary(up, g);
  if (wedge_angle < 0) fail(Err::PreconditionViolated, "wedge angle must be >= 0");
  if (wedge_angle > sum.theta_critical + 1e-12)
    fail(Err::Detached, "wedge angle exceeds the critical angle");

  const double pn = normal_shock_pressure(up, g);
  const double p_lo = up.p * (1.0 + 1e-10);
  // pressure of the tangency point
  double p_T = num::golden_max([&](double p) { return wedge_angle_at_pressure(up, p, g); },
                               p_lo, pn, 1e-11 * pn);
  auto theta_err = [&](double p) { return wedge_angle_at_pressure(up, p, g) - wedge_angle; };

  double p;
  if (wedge_angle >= wedge_angle_at_pressure(up, p_T, g) - 1e-12) {
    p = p_T;  // at (numerical) tangency both roots coincide
  } else if (root == Root::Strong) {
    p = num::brent(theta_err, p_T, pn, 1e-14 * pn);
  } else {
    if (wedge_angle == 0.0) {
      // vanishing-strength root: downstream equals upstream; slope is the Mach line
      PolarPoint pt;
      pt.downstream = up;
      double beta = std::asin(1.0 / gas::mach(up, g));
      pt.shock_slope_s = (1.0 / std::tan(beta)) / (up.rho * up.u1);
      pt.wedge_angle = 0;
      pt.arc = Arc::Other;
      pt.Cp = 0;
      return pt;
    }
    p = num::brent(theta_err, p_lo, p_T, 1e-14 * pn);
  }

  PolarPoint pt;
  pt.downstream = downstream_at_pressure(up, p, g);
  pt.shock_slope_s = lagrangian_slope(up, pt.downstream);
  pt.wedge_angle = std::atan2(pt.downstream.u2, pt.downstream.u1);
  if (gas::mach(pt.downstream, g) <= 1.0 + 1e-9)
    pt.arc = classify_arc(pt, up, g, &pt.Cp);
  else
    pt.Cp = classification_Cp(pt, up, g);
  return pt;
}

std::vector<PolarPoint> polar_curve(const FlowState& up, const GasModel& g, int n_samples) {
  require_supersonic_horizontal(up, g);
  if (n_samples < 3) fail(Err::PreconditionViolated, "polar_curve needs n_samples >= 3");
  const Upstream u = pack(up, g);
  const double pn = normal_shock_pressure(up, g);
  // vanishing-strength approach; below ~1e-4 of the full jump the RH residual
  // evaluation itself is rounding-noise limited in doubles
  const double p_end = up.p + (pn - up.p) * 1e-4;

  std::vector<PolarPoint> out;
  out.reserve(n_samples);
  // continuation downward in pressure, reusing the previous solution
  double M2 = gas::mach(up, g);
  M2 *= M2;
  double rho = up.rho * ((g.gamma + 1.0) * M2) / ((g.gamma - 1.0) * M2 + 2.0);
  double u1 = up.u1 * up.rho / rho;
  for (int i = 0; i < n_samples; ++i) {
    double p = pn + (p_end - pn) * (double(i) / (n_samples - 1));
    if (!newton_at_pressure(u, p, g.gamma, rho, u1))
      fail(Err::SolverDiverged, "polar_curve continuation failed");
    PolarPoint pt;
    pt.downstream = assemble_downstream(u, p, rho, u1, g.gamma);
    pt.shock_slope_s = (i == 0 && pt.downstream.u2 == 0)
                           ? 0.0
                           : lagrangian_slope(up, pt.downstream);
    pt.wedge_angle = std::atan2(pt.downstream.u2, pt.downstream.u1);
    double m = gas::mach(pt.downstream, g);
    pt.Cp = classification_Cp(pt, up, g);
    if (m > 1.0 + 1e-9)
      pt.arc = Arc::Other;
    else
      pt.arc = classify_arc(pt, up, g, &pt.Cp);
    out.push_back(pt);
  }
  return out;
}

PolarSummary polar_summary(const FlowState& up, const GasModel& g) {
  require_supersonic_horizontal(up, g);
  PolarSummary sum;
  sum.upstream = up;
  const double pn = normal_shock_pressure(up, g);
  const double p_lo = up.p * (1.0 + 1e-10);
  double p_T = num::golden_max([&](double p) { return wedge_angle_at_pressure(up, p, g); },
                               p_lo, pn, 1e-11 * pn);
  sum.theta_critical = wedge_angle_at_pressure(up, p_T, g);
  double p_sonic = num::brent(
      [&](double p) { return mach_down(downstream_at_pressure(up, p, g), g) - 1.0; }, p_lo, pn,
      1e-14 * pn);
  sum.theta_sonic = wedge_angle_at_pressure(up, p_sonic, g);
  return sum;
}

double classification_Cp(const PolarPoint& pt, const FlowState& up, const GasModel& g) {
  const FlowState& d = pt.downstream;
  double c2 = g.gamma * d.p / d.rho;
  double q2 = d.u1 * d.u1 + d.u2 * d.u2;
  double jp = d.p - up.p;
  double jir = 1.0 / (d.rho * d.u1) - 1.0 / (up.rho * up.u1);
  return jp * (c2 + (g.gamma - 1.0) * q2 - g.gamma * d.u1 * d.u1) +
         (g.gamma - 1.0) * d.rho * q2 * d.u2 * d.u2 + jir * d.rho * d.rho * c2 * d.u1 * q2;
}

Arc classify_arc(const PolarPoint& pt, const FlowState& up, const GasModel& g, double* Cp_out) {
  const FlowState& d = pt.downstream;
  double m = gas::mach(d, g);
  double Cp = classification_Cp(pt, up, g);
  if (Cp_out) *Cp_out = Cp;
  if (m > 1.0 + 1e-9) fail(Err::NotSubsonic, "classify_arc requires a subsonic downstream state");
  if (std::abs(d.u2) <= 1e-12 * std::abs(d.u1)) return Arc::NormalS;
  if (std::abs(m - 1.0) <= 1e-9) return Arc::Sonic;
  double c2 = g.gamma * d.p / d.rho;
  double tol = 1e-10 * std::abs(d.p - up.p) * c2;
  if (Cp < -tol) return Arc::TS;
  if (Cp > tol) return Arc::TH;
  return Arc::Tangent;
}

double kp_formula(const PolarPoint& pt, const FlowState& up, const GasModel& g) {
  const FlowState& d = pt.downstream;
  if (std::abs(d.u2) <= 1e-12 * std::abs(d.u1))
    fail(Err::DegeneratePoint, "k_p undefined at the normal shock (C_0 = 0)");
  double Cp = classification_Cp(pt, up, g);
  double C0 = d.u1 * d.u1 * d.u1 * d.u2 * d.rho * d.rho *
              ((g.gamma + 1.0) * d.p + (g.gamma - 1.0) * up.p);
  return -d.rho * Cp / C0;
}

}  // namespace wedge::polar
