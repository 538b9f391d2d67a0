// Supersonic incoming flow as an analytic field: background uniform state plus
// C^2 perturbations of the entropy/Bernoulli profiles and of the upstream
// potential, extended to the whole quadrant with the background beyond the
// strip y1 > 2 s1 y2 + 1 (C^2 blend over the unit transition band).
#pragma once

#include "wedge/gas.hpp"
#include "wedge/lagrangian.hpp"
#include "wedge/numerics.hpp"

namespace wedge::up {

struct UpstreamSpec {
  double mach = 2.0, p = 1.0, rho = 1.0;
  // perturbations: dA, dB act on the streamline profiles A^-(y2), B(y2);
  // dphi perturbs the upstream potential as dphi1(y1) * dphi2(y2)
  num::Bump dA, dB, dphi1, dphi2;
};

struct UpstreamEval {
  gas::FlowState state;               // U^-(y)
  double A = 1, B = 1;                // streamline data at y2
  double phi = 0;                     // phi^-(y)
  double phi_y1 = 0, phi_y2 = 1;      // grad phi^-
  double phi_y1y1 = 0, phi_y2y1 = 0;  // d/dy1 of the gradient
  double du1 = 0, du2 = 0, dp = 0, drho = 0;  // d(state)/dy1
};

class UpstreamField {
 public:
  // s1: background Lagrangian shock slope (defines the extension strip)
  UpstreamField(const UpstreamSpec& spec, const gas::GasModel& g, double s1);

  UpstreamEval eval(double y1, double y2) const;
  double phi_minus(double y1, double y2) const;
  double A_at(double y2) const;
  double B_at(double y2) const;
  const gas::FlowState& background() const { return bg_; }
  bool uniform() const { return uniform_; }
  const gas::GasModel& gas_model() const { return g_; }

 private:
  gas::GasModel g_;
  UpstreamSpec spec_;
  gas::FlowState bg_;
  double s1_ = 0;
  double A0_ = 1, B0_ = 1, phi0_slope_ = 1;  // background A^-, B, 1/(rho- u1-)
  bool uniform_ = true;
};

}  // namespace wedge::up
