#include "wedge/upstream.hpp"

#include <cmath>

namespace wedge::up {

UpstreamField::UpstreamField(const UpstreamSpec& spec, const gas::GasModel& g, double s1)
    : g_(g), spec_(spec), s1_(s1) {
  double c = std::sqrt(g.gamma * spec.p / spec.rho);
  bg_ = gas::FlowState{spec.mach * c, 0.0, spec.p, spec.rho};
  gas::validate(bg_);
  if (spec.mach <= 1.0) fail(Err::NotSupersonic, "upstream background must be supersonic");
  A0_ = gas::entropy_A(bg_, g);
  B0_ = gas::bernoulli_B(bg_, g);
  phi0_slope_ = 1.0 / (bg_.rho * bg_.u1);
  uniform_ = spec.dA.zero() && spec.dB.zero() &&
             (spec.dphi1.zero() || spec.dphi2.zero());
}

double UpstreamField::A_at(double y2) const { return A0_ + spec_.dA.value(y2); }
double UpstreamField::B_at(double y2) const { return B0_ + spec_.dB.value(y2); }

double UpstreamField::phi_minus(double y1, double y2) const {
  double phi = phi0_slope_ * y2;
  if (!uniform_ && !spec_.dphi1.zero() && !spec_.dphi2.zero()) {
    double chi = num::bridge10(y1 - 2.0 * s1_ * y2);
    phi += chi * spec_.dphi1.value(y1) * spec_.dphi2.value(y2);
  }
  return phi;
}

UpstreamEval UpstreamField::eval(double y1, double y2) const {
  UpstreamEval e;
  e.A = A_at(y2);
  e.B = B_at(y2);
  e.phi = phi0_slope_ * y2;
  e.phi_y1 = 0;
  e.phi_y2 = phi0_slope_;
  if (uniform_) {
    e.state = bg_;
    return e;
  }
  if (!spec_.dphi1.zero() && !spec_.dphi2.zero()) {
    double t = y1 - 2.0 * s1_ * y2;
    double chi = num::bridge10(t), chi_d = num::bridge10_d(t), chi_dd = num::bridge10_dd(t);
    double P = spec_.dphi1.value(y1) * spec_.dphi2.value(y2);
    double P1 = spec_.dphi1.deriv(y1) * spec_.dphi2.value(y2);
    double P2 = spec_.dphi1.value(y1) * spec_.dphi2.deriv(y2);
    double P11 = spec_.dphi1.second(y1) * spec_.dphi2.value(y2);
    double P12 = spec_.dphi1.deriv(y1) * spec_.dphi2.deriv(y2);
    e.phi += chi * P;
    e.phi_y1 = chi_d * P + chi * P1;
    e.phi_y2 += chi_d * (-2.0 * s1_) * P + chi * P2;
    e.phi_y1y1 = chi_dd * P + 2.0 * chi_d * P1 + chi * P11;
    e.phi_y2y1 = chi_dd * (-2.0 * s1_) * P + chi_d * (P2 - 2.0 * s1_ * P1) + chi * P12;
  }
  lagr::Gradient grad{e.phi_y1, e.phi_y2};
  auto t = lagr::thermo_point(grad, {e.A, e.B}, g_, lagr::Branch::Supersonic);
  e.state = gas::FlowState{t.u1, t.u2, t.p, t.rho};
  // streamline data carry no y1 dependence, so d/dy1 chains only through grad
  e.du1 = t.u1_p1 * e.phi_y1y1 + t.u1_p2 * e.phi_y2y1;
  e.du2 = (t.u1 + grad.p1 * t.u1_p1) * e.phi_y1y1 + grad.p1 * t.u1_p2 * e.phi_y2y1;
  e.dp = t.c2 * (t.rho_p1 * e.phi_y1y1 + t.rho_p2 * e.phi_y2y1);
  e.drho = t.rho_p1 * e.phi_y1y1 + t.rho_p2 * e.phi_y2y1;
  return e;
}

}  // namespace wedge::up
