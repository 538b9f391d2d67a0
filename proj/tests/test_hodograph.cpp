// Hodograph-side operators at and near the transonic background:
// Mbar Jacobian closed forms vs finite differences, shock condition roots,
// oblique coefficient signs, far-field construction, upstream field analytics.
#include <cmath>

#include "doctest.h"
#include "wedge/gas.hpp"
#include "wedge/hodograph.hpp"
#include "wedge/lagrangian.hpp"
#include "wedge/numerics.hpp"
#include "wedge/shock_polar.hpp"
#include "wedge/upstream.hpp"

using namespace wedge;
using gas::FlowState;
using gas::GasModel;

namespace {

struct Background {
  GasModel g{1.4};
  up::UpstreamSpec uspec;
  FlowState up_state;
  polar::PolarPoint down;
  double theta0 = 0, s1 = 0, vz1 = 0, vz2 = 0, A0p = 0;
};

// M = 2 background at theta0 = 22.9 deg on the sonic-to-tangent arc.
Background make_background(polar::Root root = polar::Root::Weak, double theta0_deg = 22.9) {
  Background b;
  b.uspec.mach = 2.0;
  b.up_state = FlowState{2.0 * std::sqrt(1.4), 0, 1, 1};
  b.theta0 = theta0_deg * M_PI / 180.0;
  b.down = polar::solve_downstream(b.up_state, b.theta0, root, b.g);
  b.s1 = b.down.shock_slope_s;
  double J1 = b.down.downstream.u2 / b.down.downstream.u1;
  double J2 = 1.0 / (b.down.downstream.rho * b.down.downstream.u1) -
              1.0 / (b.up_state.rho * b.up_state.u1);
  b.vz1 = 1.0 / J1;
  b.vz2 = -J2 / J1;
  b.A0p = gas::entropy_A(b.down.downstream, b.g);
  return b;
}

}  // namespace

TEST_SUITE("hodograph") {

TEST_CASE("upstream field: background values and extension rule") {
  Background b = make_background();
  up::UpstreamField uf(b.uspec, b.g, b.s1);
  CHECK(uf.uniform());
  auto e = uf.eval(3.0, 1.0);
  CHECK(e.state.u1 == doctest::Approx(b.up_state.u1).epsilon(1e-14));
  CHECK(e.phi_y2 == doctest::Approx(1.0 / (b.up_state.rho * b.up_state.u1)).epsilon(1e-14));
  CHECK(e.phi == doctest::Approx(e.phi_y2 * 1.0).epsilon(1e-14));

  // perturbed potential: background beyond the strip 0 < 2 s1 y2 < y1 - 1
  up::UpstreamSpec ps = b.uspec;
  ps.dphi1 = {num::Bump::Kind::CompactPoly, 1e-3, 0.5, 0.4};
  ps.dphi2 = {num::Bump::Kind::CompactPoly, 1.0, 2.0, 1.5};
  up::UpstreamField pf(ps, b.g, b.s1);
  CHECK_FALSE(pf.uniform());
  double y2 = 2.0;
  double phi0 = y2 / (b.up_state.rho * b.up_state.u1);
  CHECK(pf.phi_minus(2.0 * b.s1 * y2 + 1.5, y2) == doctest::Approx(phi0).epsilon(1e-14));
  // inside the strip the perturbation is alive
  CHECK(std::abs(pf.phi_minus(0.5, 2.0) - phi0) > 1e-4);
}

TEST_CASE("upstream field: analytic derivatives match finite differences") {
  Background b = make_background();
  up::UpstreamSpec ps = b.uspec;
  ps.dphi1 = {num::Bump::Kind::CompactPoly, 2e-3, 1.5, 1.2};
  ps.dphi2 = {num::Bump::Kind::Gaussian, 1.0, 2.0, 1.0};
  ps.dA = {num::Bump::Kind::CompactPoly, 1e-3, 2.0, 1.5};
  ps.dB = {num::Bump::Kind::Gaussian, 5e-4, 2.0, 1.5};
  up::UpstreamField pf(ps, b.g, b.s1);
  const double h = 1e-6;
  for (double y1 : {0.8, 1.5, 2.2}) {
    for (double y2 : {1.0, 2.0, 3.5}) {
      auto e = pf.eval(y1, y2);
      auto ep = pf.eval(y1 + h, y2);
      auto em = pf.eval(y1 - h, y2);
      CHECK(e.phi_y1 == doctest::Approx((ep.phi - em.phi) / (2 * h)).epsilon(1e-6));
      CHECK(e.phi_y1y1 == doctest::Approx((ep.phi_y1 - em.phi_y1) / (2 * h)).epsilon(1e-5));
      CHECK(e.phi_y2y1 == doctest::Approx((ep.phi_y2 - em.phi_y2) / (2 * h)).epsilon(1e-5));
      CHECK(e.du1 == doctest::Approx((ep.state.u1 - em.state.u1) / (2 * h)).epsilon(1e-5));
      CHECK(e.du2 == doctest::Approx((ep.state.u2 - em.state.u2) / (2 * h)).epsilon(1e-5));
      CHECK(e.dp == doctest::Approx((ep.state.p - em.state.p) / (2 * h)).epsilon(1e-5));
      CHECK(e.drho ==
            doctest::Approx((ep.state.rho - em.state.rho) / (2 * h)).epsilon(1e-5));
      auto e2 = pf.eval(y1, y2 + h);
      auto e2m = pf.eval(y1, y2 - h);
      CHECK(e.phi_y2 == doctest::Approx((e2.phi - e2m.phi) / (2 * h)).epsilon(1e-6));
      // the upstream state is supersonic everywhere
      CHECK(gas::mach(e.state, b.g) > 1.0);
    }
  }
}

TEST_CASE("mbar at background: constant fluxes, closed-form jacobian, ellipticity") {
  Background b = make_background();
  up::UpstreamField uf(b.uspec, b.g, b.s1);
  hodo::Context ctx{b.g, &uf, b.A0p, 0.5, 2.0};

  auto [m1a, m2a] = hodo::mbar_flux(ctx, 0.5, b.A0p, 0.3, b.vz1, b.vz2);
  auto [m1b, m2b] = hodo::mbar_flux(ctx, 4.0, b.A0p, 7.1, b.vz1, b.vz2);
  CHECK(m1a == doctest::Approx(m1b).epsilon(1e-13));  // translation invariance
  CHECK(m2a == doctest::Approx(m2b).epsilon(1e-13));

  auto J = hodo::mbar_jacobian(ctx, 1.0, b.A0p, 1.0, b.vz1, b.vz2);
  CHECK(J.disc > 0);
  // antisymmetric relation a12 - a21 = 2 N^2 = 2 p
  CHECK(J.a12 - J.a21 == doctest::Approx(2.0 * b.down.downstream.p).epsilon(1e-12));

  const double h = 1e-7;
  auto F = [&](double v1, double v2) { return hodo::mbar_flux(ctx, 1.0, b.A0p, 1.0, v1, v2); };
  auto [p1a, p2a] = F(b.vz1 + h, b.vz2);
  auto [p1b, p2b] = F(b.vz1 - h, b.vz2);
  auto [q1a, q2a] = F(b.vz1, b.vz2 + h);
  auto [q1b, q2b] = F(b.vz1, b.vz2 - h);
  CHECK(J.a11 == doctest::Approx((p1a - p1b) / (2 * h)).epsilon(1e-6));
  CHECK(J.a21 == doctest::Approx((p2a - p2b) / (2 * h)).epsilon(1e-6));
  CHECK(J.a12 == doctest::Approx((q1a - q1b) / (2 * h)).epsilon(1e-6));
  CHECK(J.a22 == doctest::Approx((q2a - q2b) / (2 * h)).epsilon(1e-6));

  // discriminant closed form (N^2)^2 + J1^2 (N1_1 N2_2 - N1_2^2)
  auto t = lagr::thermo_point(lagr::to_lagrangian_gradient(b.down.downstream),
                              {b.A0p, gas::bernoulli_B(b.up_state, b.g)}, b.g);
  double J1 = 1.0 / b.vz1;
  CHECK(J.disc == doctest::Approx(t.N2 * t.N2 +
                                  J1 * J1 * (t.N1_p1 * t.N2_p2 - t.N1_p2 * t.N1_p2))
                      .epsilon(1e-10));

  // A-derivative of the fluxes against finite differences
  auto dA = hodo::mbar_A_derivative(ctx, 1.0, b.A0p, 1.0, b.vz1, b.vz2);
  auto [r1a, r2a] = hodo::mbar_flux(ctx, 1.0, b.A0p + h, 1.0, b.vz1, b.vz2);
  auto [r1b, r2b] = hodo::mbar_flux(ctx, 1.0, b.A0p - h, 1.0, b.vz1, b.vz2);
  CHECK(dA.x == doctest::Approx((r1a - r1b) / (2 * h)).epsilon(1e-6));
  CHECK(dA.y == doctest::Approx((r2a - r2b) / (2 * h)).epsilon(1e-6));

  CHECK(hodo::mbar_phi_derivative(ctx, 1.0, b.A0p, 1.0, b.vz1, b.vz2).x == 0.0);
  CHECK_THROWS_AS(hodo::compose_downstream(uf.eval(1, 1), -0.1, 0.0), Error);
}

TEST_CASE("shock condition: background root, oblique signs, gradient") {
  Background b = make_background();
  up::UpstreamField uf(b.uspec, b.g, b.s1);
  hodo::Context ctx{b.g, &uf, b.A0p, 0.5, 2.0};

  // both RH-derived conditions hold at the background jump
  CHECK(std::abs(hodo::G_residual(ctx, 1.0, b.A0p, b.s1 * 1.0, b.vz1, b.vz2)) < 1e-12);
  CHECK(std::abs(hodo::H_residual(ctx, 1.0, b.A0p, b.s1 * 1.0, b.vz1, b.vz2)) < 1e-12);
  CHECK(hodo::shock_g(ctx, 1.0, b.s1, b.vz1, b.vz2) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(hodo::entropy_update_H(ctx, 1.0, b.s1, b.vz1, b.vz2) ==
        doctest::Approx(b.A0p).epsilon(1e-12));

  // oblique coefficients: nu1 > 0 and nu2 < 0 on the TS arc background
  auto nu = hodo::shock_g_gradient(ctx, 1.0, b.s1, b.vz1, b.vz2);
  CHECK(nu.x > 0);
  CHECK(nu.y < 0);

  // analytic gradient against finite differences of the root-based g-tilde
  const double h = 1e-6;
  double gp = hodo::shock_g(ctx, 1.0, b.s1, b.vz1 + h, b.vz2);
  double gm = hodo::shock_g(ctx, 1.0, b.s1, b.vz1 - h, b.vz2);
  CHECK(nu.x == doctest::Approx((gp - gm) / (2 * h)).epsilon(1e-5));
  double gq = hodo::shock_g(ctx, 1.0, b.s1, b.vz1, b.vz2 + h);
  double gr = hodo::shock_g(ctx, 1.0, b.s1, b.vz1, b.vz2 - h);
  CHECK(nu.y == doctest::Approx((gq - gr) / (2 * h)).epsilon(1e-5));

  // continuity probe: g-tilde = O(delta) with a sign change through zero;
  // frozen regression for the directional slope at the default background
  double d = 1e-4;
  double gplus = hodo::shock_g(ctx, 1.0, b.s1, b.vz1 + d, b.vz2);
  double gminus = hodo::shock_g(ctx, 1.0, b.s1, b.vz1 - d, b.vz2);
  CHECK(gplus * gminus < 0);
  CHECK(std::abs(gplus) < 10 * std::abs(nu.x) * d);
  CHECK(nu.x == doctest::Approx(0.0089083).epsilon(2e-3));
  CHECK(nu.y == doctest::Approx(-0.0097322).epsilon(2e-3));

  // monotone response of the entropy update (sign frozen as regression:
  // dA/d(varphi_z1) > 0 at the weak-root background)
  double Ap = hodo::entropy_update_H(ctx, 1.0, b.s1, b.vz1 + d, b.vz2);
  double Am = hodo::entropy_update_H(ctx, 1.0, b.s1, b.vz1 - d, b.vz2);
  CHECK(Ap - Am > 0);

  // strong root at the same angle sits on the TH side: both nu components positive
  Background bs = make_background(polar::Root::Strong);
  hodo::Context ctxs{bs.g, &uf, bs.A0p, 0.5, 2.0};
  auto nus = hodo::shock_g_gradient(ctxs, 1.0, bs.s1, bs.vz1, bs.vz2);
  CHECK(nus.x > 0);
  CHECK(nus.y > 0);
}

TEST_CASE("entropy update matches the polar root for the 15-degree strong case") {
  Background b = make_background(polar::Root::Strong, 15.0);
  up::UpstreamField uf(b.uspec, b.g, b.s1);
  hodo::Context ctx{b.g, &uf, b.A0p, 0.5, 2.0};
  double A = hodo::entropy_update_H(ctx, 2.0, b.s1 * 2.0, b.vz1, b.vz2);
  CHECK(A == doctest::Approx(gas::entropy_A(b.down.downstream, b.g)).epsilon(1e-12));
}

TEST_CASE("far field: background reduces to the uniform-state identity") {
  Background b = make_background();
  up::UpstreamField uf(b.uspec, b.g, b.s1);
  hodo::Context ctx{b.g, &uf, b.A0p, 0.5, 2.0};
  std::vector<double> z2s, As;
  for (int j = 0; j <= 32; ++j) {
    z2s.push_back(j * 0.5);
    As.push_back(b.A0p);
  }
  hodo::FarField ff(ctx, num::Pchip(z2s, As), b.theta0, 0.0, b.down.downstream.p);

  double lp0 = 1.0 / (b.down.downstream.rho *
                      std::hypot(b.down.downstream.u1, b.down.downstream.u2) *
                      std::cos(b.theta0));
  CHECK(ff.lprime(3.0) == doctest::Approx(lp0).epsilon(1e-12));
  CHECK(ff.lprime(3.0) ==
        doctest::Approx(1.0 / (b.down.downstream.rho * b.down.downstream.u1)).epsilon(1e-12));
  CHECK(ff.l(4.0) == doctest::Approx(4.0 * lp0).epsilon(1e-12));

  // varphi is linear and the shock trace is y1 = s1 z2
  CHECK(ff.varphi(0.0, 2.0) == doctest::Approx(b.s1 * 2.0).epsilon(1e-11));
  double tan0 = std::tan(b.theta0);
  CHECK(ff.varphi(1.3, 2.0) == doctest::Approx(b.s1 * 2.0 + 1.3 / tan0).epsilon(1e-11));
  auto gv = ff.grad_varphi(1.3, 2.0);
  CHECK(gv.x == doctest::Approx(b.vz1).epsilon(1e-11));
  CHECK(gv.y == doctest::Approx(b.vz2).epsilon(1e-11));

  // U_inf equals the background downstream state
  auto st = ff.state_at(5.0);
  CHECK(st.u1 == doctest::Approx(b.down.downstream.u1).epsilon(1e-12));
  CHECK(st.u2 == doctest::Approx(b.down.downstream.u2).epsilon(1e-12));
  CHECK(st.rho == doctest::Approx(b.down.downstream.rho).epsilon(1e-12));

  // l-inverse round trip
  CHECK(ff.l_inverse(ff.l(3.7)) == doctest::Approx(3.7).epsilon(1e-10));
}

TEST_CASE("far field: perturbed profile keeps l' bounds and inverts varphi") {
  Background b = make_background();
  up::UpstreamField uf(b.uspec, b.g, b.s1);
  hodo::Context ctx{b.g, &uf, b.A0p, 0.5, 2.0};
  std::vector<double> z2s, As;
  num::Bump bump{num::Bump::Kind::Gaussian, 1e-3 * b.A0p, 3.0, 1.5};
  for (int j = 0; j <= 64; ++j) {
    double z2 = j * 0.25;
    z2s.push_back(z2);
    As.push_back(b.A0p + bump.value(z2) / (1.0 + z2 * z2));
  }
  hodo::FarField ff(ctx, num::Pchip(z2s, As), b.theta0, 0.01, b.down.downstream.p);
  double lp0 = 1.0 / (b.down.downstream.rho * b.down.downstream.u1);
  for (double z2 : {0.0, 1.0, 3.0, 7.7, 15.0}) {
    CHECK(ff.lprime(z2) > 0.5 * lp0);
    CHECK(ff.lprime(z2) < 2.0 * lp0);
  }
  CHECK(ff.l(0.0) == doctest::Approx(0.01).epsilon(1e-14));
  // inversion consistency: z1 = (phi_inf - phi-)(varphi, z2)
  for (double z1 : {0.2, 2.0}) {
    for (double z2 : {0.5, 4.0}) {
      double y = ff.varphi(z1, z2);
      double lhs = std::tan(b.theta0) * y + ff.l(z2) - uf.phi_minus(y, z2);
      CHECK(lhs == doctest::Approx(z1).epsilon(1e-12));
    }
  }
  CHECK(ff.l_inverse(ff.l(5.5)) == doctest::Approx(5.5).epsilon(1e-10));
}

}  // TEST_SUITE
