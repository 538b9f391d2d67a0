// Oblique-shock polar for a horizontal supersonic upstream state:
// Rankine-Hugoniot solves parameterized by downstream pressure, sonic and
// detachment angles, TS/TH arc classification, and the k_p derivative.
#pragma once

#include <vector>

#include "wedge/gas.hpp"

namespace wedge::polar {

using gas::FlowState;
using gas::GasModel;

enum class Root { Strong, Weak };
enum class Arc { TS, TH, Tangent, Sonic, NormalS, Other };

const char* arc_name(Arc a);

struct PolarPoint {
  FlowState downstream;
  double shock_slope_s = 0;  // Lagrangian slope: shock is y1 = s * y2
  double wedge_angle = 0;    // atan(u2/u1) of the downstream state, radians
  Arc arc = Arc::Other;
  double Cp = 0;
};

struct PolarSummary {
  double theta_sonic = 0;     // downstream Mach = 1 along the polar
  double theta_critical = 0;  // detachment: max wedge angle over the polar
  FlowState upstream;
};

// Throws NotSupersonic / NearSonic / PreconditionViolated per the operation contracts.
void require_supersonic_horizontal(const FlowState& up, const GasModel& g);

double normal_shock_pressure(const FlowState& up, const GasModel& g);

// Downstream state on the polar at downstream pressure p in (p_up, p_normal].
// Newton continuation in pressure from the normal-shock solution.
FlowState downstream_at_pressure(const FlowState& up, double p, const GasModel& g);

double wedge_angle_at_pressure(const FlowState& up, double p, const GasModel& g);

// Lagrangian shock slope s (y1 = s y2) of the jump up -> down; equals u2/[p].
double lagrangian_slope(const FlowState& up, const FlowState& down);

// Max over the four Lagrangian RH residuals, each relative to its own scale.
double rh_residual_max(const FlowState& up, const FlowState& down, double s, const GasModel& g);

PolarPoint solve_downstream(const FlowState& up, double wedge_angle, Root root,
                            const GasModel& g);

// Samples from the normal-shock pressure down to vanishing strength (descending p).
std::vector<PolarPoint> polar_curve(const FlowState& up, const GasModel& g, int n_samples);

PolarSummary polar_summary(const FlowState& up, const GasModel& g);

// C_p classification quantity (jumps downstream-minus-upstream); see classify_arc.
double classification_Cp(const PolarPoint& pt, const FlowState& up, const GasModel& g);

// TS iff C_p < -tol, TH iff C_p > tol, tol = 1e-10 |[p]| c^2; requires subsonic downstream.
Arc classify_arc(const PolarPoint& pt, const FlowState& up, const GasModel& g,
                 double* Cp_out = nullptr);

// dk/dp along the pressure-parameterized polar, k = u2/u1: k_p = -rho C_p / C_0.
double kp_formula(const PolarPoint& pt, const FlowState& up, const GasModel& g);

}  // namespace wedge::polar
