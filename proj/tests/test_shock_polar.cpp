// Shock-polar checks against an independent oracle: the classical wave-angle
// parameterization (normal-shock relations plus tangential-velocity
// preservation), written here in the test and nowhere in the library.
#include <cmath>
#include <vector>

#include "doctest.h"
#include "wedge/gas.hpp"
#include "wedge/shock_polar.hpp"

using namespace wedge;
using gas::FlowState;
using gas::GasModel;

namespace {

// Oracle: downstream state at downstream pressure p via the wave angle beta.
struct BetaOracle {
  FlowState up;
  GasModel g;

  double p_normal() const {
    double M2 = gas::mach(up, g) * gas::mach(up, g);
    return up.p * (2 * g.gamma * M2 - (g.gamma - 1)) / (g.gamma + 1);
  }
  FlowState at(double p) const {
    double M1 = gas::mach(up, g);
    double s2 = ((g.gamma + 1) * (p / up.p - 1) / (2 * g.gamma) + 1) / (M1 * M1);
    double sb = std::sqrt(s2), cb = std::sqrt(1 - s2);
    double M1n2 = M1 * M1 * s2;
    double rho = up.rho * ((g.gamma + 1) * M1n2) / ((g.gamma - 1) * M1n2 + 2);
    double r = up.rho / rho;
    double U = up.u1;
    return FlowState{U * (s2 * r + cb * cb), U * sb * cb * (1 - r), p, rho};
  }
  double k(double p) const {
    FlowState d = at(p);
    return d.u2 / d.u1;
  }
  double theta(double p) const { return std::atan(k(p)); }
  double mach(double p) const { return gas::mach(at(p), g); }
};

const GasModel kGas{1.4};
const FlowState kM2{2.0 * std::sqrt(1.4), 0.0, 1.0, 1.0};

}  // namespace

TEST_SUITE("shock_polar") {

TEST_CASE("normal shock reproduces the standard relations") {
  auto pt = polar::solve_downstream(kM2, 0.0, polar::Root::Strong, kGas);
  CHECK(pt.downstream.p == doctest::Approx(4.5).epsilon(1e-10));
  CHECK(pt.downstream.rho == doctest::Approx(8.0 / 3.0).epsilon(1e-10));
  CHECK(pt.downstream.u1 == doctest::Approx(0.887411967465).epsilon(1e-10));
  CHECK(std::abs(pt.downstream.u2) < 1e-12);
  CHECK(gas::mach(pt.downstream, kGas) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
  CHECK(pt.arc == polar::Arc::NormalS);
}

TEST_CASE("weak root at zero angle is the vanishing shock") {
  auto pt = polar::solve_downstream(kM2, 0.0, polar::Root::Weak, kGas);
  CHECK(pt.downstream.p == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pt.downstream.rho == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pt.downstream.u1 == doctest::Approx(kM2.u1).epsilon(1e-12));
}

TEST_CASE("roots coincide at the critical angle") {
  auto sum = polar::polar_summary(kM2, kGas);
  auto s = polar::solve_downstream(kM2, sum.theta_critical, polar::Root::Strong, kGas);
  auto w = polar::solve_downstream(kM2, sum.theta_critical, polar::Root::Weak, kGas);
  CHECK(std::abs(s.downstream.p - w.downstream.p) < 1e-6 * s.downstream.p);
}

TEST_CASE("polar matches the wave-angle oracle across the branch") {
  BetaOracle ora{kM2, kGas};
  double pn = ora.p_normal();
  for (double f : {0.999, 0.9, 0.7, 0.5, 0.3, 0.1, 0.01}) {
    double p = 1.0 + f * (pn - 1.0);
    FlowState mine = polar::downstream_at_pressure(kM2, p, kGas);
    FlowState ref = ora.at(p);
    CHECK(mine.rho == doctest::Approx(ref.rho).epsilon(1e-10));
    CHECK(mine.u1 == doctest::Approx(ref.u1).epsilon(1e-10));
    CHECK(mine.u2 == doctest::Approx(ref.u2).epsilon(1e-8));
  }
}

TEST_CASE("angles from dense scan + refinement oracle") {
  BetaOracle ora{kM2, kGas};
  double pn = ora.p_normal();
  // dense scan for the detachment angle, then golden refinement
  double best_p = 0, best_th = -1;
  for (int i = 1; i < 20000; ++i) {
    double p = 1.0 + (pn - 1.0) * i / 20000.0;
    double th = ora.theta(p);
    if (th > best_th) { best_th = th; best_p = p; }
  }
  double a = best_p * 0.999, b = std::min(best_p * 1.001, pn);
  const double gr = 0.5 * (std::sqrt(5.0) - 1);
  for (int it = 0; it < 200; ++it) {
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    if (ora.theta(x1) < ora.theta(x2)) a = x1; else b = x2;
  }
  double th_c_oracle = ora.theta(0.5 * (a + b));
  // sonic angle by bisection on Mach = 1
  double lo = 1.0 + 1e-9, hi = pn;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (ora.mach(mid) > 1.0 ? lo : hi) = mid;
  }
  double th_s_oracle = ora.theta(0.5 * (lo + hi));

  auto sum = polar::polar_summary(kM2, kGas);
  CHECK(sum.theta_critical == doctest::Approx(th_c_oracle).epsilon(1e-8));
  CHECK(sum.theta_sonic == doctest::Approx(th_s_oracle).epsilon(1e-8));
  CHECK(sum.theta_sonic < sum.theta_critical);
  // frozen values for the M=2, gamma=1.4 polar
  CHECK(sum.theta_critical * 180 / M_PI == doctest::Approx(22.9735318).epsilon(1e-6));
  CHECK(sum.theta_sonic * 180 / M_PI == doctest::Approx(22.7059868).epsilon(1e-6));
}

TEST_CASE("vanishing polar near Mach 1") {
  FlowState up{1.01 * std::sqrt(1.4), 0, 1, 1};
  auto sum = polar::polar_summary(up, kGas);
  CHECK(sum.theta_critical < M_PI / 180.0);
  CHECK(sum.theta_sonic < M_PI / 180.0);
  CHECK(sum.theta_sonic > 0);
}

TEST_CASE("upstream preconditions") {
  CHECK_THROWS_AS(polar::solve_downstream({0.5, 0, 1, 1}, 0.1, polar::Root::Strong, kGas),
                  Error);
  FlowState near_sonic{std::sqrt(1.4) * (1 + 1e-8), 0, 1, 1};
  CHECK_THROWS_AS(polar::polar_summary(near_sonic, kGas), Error);
  auto sum = polar::polar_summary(kM2, kGas);
  CHECK_THROWS_AS(polar::solve_downstream(kM2, sum.theta_critical + 0.01,
                                          polar::Root::Strong, kGas),
                  Error);
}

TEST_CASE("polar curve invariants: RH residuals, Bernoulli, entropy, monotonicity") {
  auto curve = polar::polar_curve(kM2, kGas, 60);
  REQUIRE(curve.size() == 60);
  CHECK(std::abs(curve.front().downstream.u2) < 1e-12);
  CHECK(curve.front().downstream.p == doctest::Approx(4.5).epsilon(1e-10));
  CHECK(curve.back().downstream.p - 1.0 < 1e-3);

  double B_up = gas::bernoulli_B(kM2, kGas);
  double prev_theta = curve.front().wedge_angle;
  bool rising = true;
  for (size_t i = 0; i < curve.size(); ++i) {
    const auto& pt = curve[i];
    if (i > 0)
      CHECK(polar::rh_residual_max(kM2, pt.downstream, pt.shock_slope_s, kGas) < 1e-10);
    CHECK(gas::bernoulli_B(pt.downstream, kGas) == doctest::Approx(B_up).epsilon(1e-10));
    if (pt.downstream.p > 1.0 + 1e-4)
      CHECK(gas::entropy_A(pt.downstream, kGas) > gas::entropy_A(kM2, kGas));
    // strong branch: wedge angle increases strictly from the normal point to T
    if (rising && pt.arc == polar::Arc::TH && i > 0) {
      CHECK(pt.wedge_angle > prev_theta);
    } else {
      rising = false;
    }
    prev_theta = pt.wedge_angle;
  }

  // max wedge angle over samples near the frozen critical angle
  double max_th = 0;
  for (const auto& pt : curve) max_th = std::max(max_th, pt.wedge_angle);
  CHECK(max_th * 180 / M_PI == doctest::Approx(22.97).epsilon(0.05 / 22.97));
}

TEST_CASE("arc classification against criterion-3 conventions") {
  // normal-shock point: strong end of the subsonic arc; C_p > 0 there
  auto S = polar::solve_downstream(kM2, 0.0, polar::Root::Strong, kGas);
  double Cp = polar::classification_Cp(S, kM2, kGas);
  CHECK(Cp > 0);
  CHECK(S.arc == polar::Arc::NormalS);

  auto sum = polar::polar_summary(kM2, kGas);
  // tangency point: |C_p| below the scaled tolerance
  auto T = polar::solve_downstream(kM2, sum.theta_critical, polar::Root::Strong, kGas);
  CHECK((T.arc == polar::Arc::Tangent || std::abs(T.Cp) < 1e-4));

  // weak subsonic root between S(onic) and T: arc TS, C_p < 0, k_p > 0
  double th = 0.5 * (sum.theta_sonic + sum.theta_critical);
  auto w = polar::solve_downstream(kM2, th, polar::Root::Weak, kGas);
  CHECK(gas::mach(w.downstream, kGas) < 1.0);
  CHECK(w.arc == polar::Arc::TS);
  CHECK(w.Cp < 0);
  CHECK(polar::kp_formula(w, kM2, kGas) > 0);

  // strong root slightly below critical: arc TH, C_p > 0, k_p < 0
  auto s = polar::solve_downstream(kM2, sum.theta_critical - 0.002, polar::Root::Strong, kGas);
  CHECK(s.arc == polar::Arc::TH);
  CHECK(s.Cp > 0);
  CHECK(polar::kp_formula(s, kM2, kGas) < 0);
}

TEST_CASE("k_p formula matches finite differences along the polar") {
  BetaOracle ora{kM2, kGas};
  double pn = ora.p_normal();
  const double dp = 1e-5;
  int checked = 0;
  for (int i = 1; i <= 50; ++i) {
    double p = 1.0 + (pn - 1.0) * i / 51.0;
    FlowState d = ora.at(p);
    if (gas::mach(d, kGas) >= 1.0) continue;  // subsonic points only
    if (d.u2 < 1e-6) continue;
    polar::PolarPoint pt;
    pt.downstream = d;
    double kp = polar::kp_formula(pt, kM2, kGas);
    double kp_fd = (ora.k(p + dp) - ora.k(p - dp)) / (2 * dp);
    CHECK(kp == doctest::Approx(kp_fd).epsilon(1e-5));
    ++checked;
  }
  CHECK(checked >= 10);
}

TEST_CASE("derivative system B X = f with finite-difference X") {
  BetaOracle ora{kM2, kGas};
  double pn = ora.p_normal();
  const double g = kGas.gamma;
  for (double f : {0.9, 0.75, 0.6}) {
    double p = 1.0 + f * (pn - 1.0);
    FlowState d = ora.at(p);
    double k = d.u2 / d.u1, rho = d.rho, u1 = d.u1, jp = p - kM2.p;
    const double dp = 1e-6;
    FlowState dp_hi = ora.at(p + dp), dp_lo = ora.at(p - dp);
    double X[3] = {(dp_hi.rho - dp_lo.rho) / (2 * dp), (dp_hi.u1 - dp_lo.u1) / (2 * dp),
                   (dp_hi.u2 / dp_hi.u1 - dp_lo.u2 / dp_lo.u1) / (2 * dp)};
    double Bm[3][3] = {
        {-jp / (rho * rho * u1), k * k - jp / (rho * u1 * u1), 2 * u1 * k},
        {-p * jp / (rho * rho * u1), p * k * k - p * jp / (rho * u1 * u1) + jp, 2 * p * u1 * k},
        {g * p / ((g - 1) * rho * rho), -u1 * (k * k + 1), -u1 * u1 * k}};
    double jir = 1 / (rho * u1) - 1 / (kM2.rho * kM2.u1);
    double jT1 = (u1 + p / (rho * u1)) - (kM2.u1 + kM2.p / (kM2.rho * kM2.u1));
    double fv[3] = {-jir, -jT1 - jp / (rho * u1) - u1 * k * k, g / ((g - 1) * rho)};
    for (int r = 0; r < 3; ++r) {
      double lhs = Bm[r][0] * X[0] + Bm[r][1] * X[1] + Bm[r][2] * X[2];
      CHECK(lhs == doctest::Approx(fv[r]).epsilon(1e-5));
    }
  }
}

TEST_CASE("k_p sign matches arc classification at sampled subsonic points") {
  auto curve = polar::polar_curve(kM2, kGas, 200);
  for (const auto& pt : curve) {
    if (pt.arc == polar::Arc::TS) CHECK(polar::kp_formula(pt, kM2, kGas) > 0);
    if (pt.arc == polar::Arc::TH && pt.downstream.u2 > 1e-9)
      CHECK(polar::kp_formula(pt, kM2, kGas) < 0);
  }
}

}  // TEST_SUITE
