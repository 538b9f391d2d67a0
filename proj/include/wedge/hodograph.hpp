// Partial hodograph transform: the shock becomes the z2-axis and y1 = varphi(z)
// the unknown. Transformed flux pair Mbar with its gradient Jacobian, the
// combined shock condition g-tilde (A eliminated through the RH pair G, H),
// the entropy update root of H-tilde, and the a-priori far-field state.
#pragma once

#include <functional>

#include "wedge/gas.hpp"
#include "wedge/lagrangian.hpp"
#include "wedge/numerics.hpp"
#include "wedge/upstream.hpp"

namespace wedge::hodo {

struct Context {
  gas::GasModel g;
  const up::UpstreamField* upstream = nullptr;
  double A0p = 1;                  // background downstream entropy (root bracket center)
  double A_lo = 0.5, A_hi = 2.0;   // bracket factors around A0p
};

// Downstream Lagrangian gradient composed at a hodograph point:
// phi_y1 = phi-_y1 + 1/vz1, phi_y2 = phi-_y2 - vz2/vz1; J = downstream - upstream.
struct Shifted {
  lagr::Gradient down;
  double J1 = 0, J2 = 0;
};
Shifted compose_downstream(const up::UpstreamEval& ue, double vz1, double vz2);

// Transformed fluxes (Mbar^1, Mbar^2) at (z, A, varphi, grad varphi).
std::pair<double, double> mbar_flux(const Context& ctx, double z2, double A, double varphi,
                                    double vz1, double vz2);

struct MbarJac {
  double a11, a12, a21, a22;  // d Mbar^i / d varphi_zj
  double disc;                // a11 a22 - a12 a21 = (N^2)^2 + J1^2 (N1_1 N2_2 - N1_2^2)
};
MbarJac mbar_jacobian(const Context& ctx, double z2, double A, double varphi, double vz1,
                      double vz2);

// d Mbar^i / dA (drives the optional Newton mode of the entropy fixed point).
num::Vec2 mbar_A_derivative(const Context& ctx, double z2, double A, double varphi,
                            double vz1, double vz2);

// d Mbar^i / d varphi (through the upstream field), centered differences;
// identically zero for a uniform upstream.
num::Vec2 mbar_phi_derivative(const Context& ctx, double z2, double A, double varphi,
                              double vz1, double vz2);

// Shock condition g-tilde = g2 - g1: the A-roots of H = 0 and G = 0.
// Both roots solved by safeguarded Newton within the context bracket.
double shock_g(const Context& ctx, double z2, double varphi, double vz1, double vz2);
num::Vec2 shock_g_gradient(const Context& ctx, double z2, double varphi, double vz1,
                           double vz2);
double shock_g_phi_derivative(const Context& ctx, double z2, double varphi, double vz1,
                              double vz2);

// Residuals of the two shock relations at a prescribed entropy value.
double G_residual(const Context& ctx, double z2, double A, double varphi, double vz1,
                  double vz2);
double H_residual(const Context& ctx, double z2, double A, double varphi, double vz1,
                  double vz2);

// The entropy update: unique root A of H-tilde = 0 near the background.
double entropy_update_H(const Context& ctx, double z2, double varphi, double vz1, double vz2);

// A-priori downstream state at infinity for a given entropy profile.
// l' solves (5.1a)-form pointwise; l integrates with l(0) = w0; varphi_inf is
// the pointwise inversion of z1 = (phi_inf - phi-)(varphi_inf, z2).
class FarField {
 public:
  FarField(const Context& ctx, num::Pchip A_of_z2, double theta0, double w0, double p_inf);

  double lprime(double z2) const;
  double l(double z2) const;
  double varphi(double z1, double z2) const;
  num::Vec2 grad_varphi(double z1, double z2) const;
  double btilde0(double z1) const { return varphi(z1, 0.0); }
  gas::FlowState state_at(double y2) const;  // U_inf(y2)
  double theta0() const { return theta0_; }
  double w0() const { return w0_; }
  double p_inf() const { return p_inf_; }
  double l_inverse(double s) const;  // g = l^{-1}, monotone

 private:
  const up::UpstreamField* upstream_;
  gas::GasModel g_;
  num::Pchip A_;
  num::Pchip l_;  // cumulative integral of l' on the profile nodes
  double theta0_, w0_, p_inf_, tan0_;
  double z2max_ = 0, l_end_ = 0, lp_end_ = 0;
};

}  // namespace wedge::hodo
