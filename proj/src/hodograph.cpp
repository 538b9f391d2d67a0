#include "wedge/hodograph.hpp"

#include <algorithm>
#include <cmath>

namespace wedge::hodo {

namespace {

struct UpstreamVals {
  double N1, N2, T1, T2;  // u2, p, u1 + p/(rho u1), p u2/u1
};

UpstreamVals upstream_vals(const gas::FlowState& s) {
  double ir = 1.0 / (s.rho * s.u1);
  return {s.u2, s.p, s.u1 + s.p * ir, s.p * s.u2 / s.u1};
}

// Entropy bracket for the A-root solves, capped below the sonic ceiling.
struct ABracket {
  double lo, hi;
};
ABracket a_bracket(const Context& ctx, const Shifted& sh, double B) {
  double ceil = lagr::entropy_ceiling(sh.down, B, ctx.g);
  double lo = ctx.A_lo * ctx.A0p;
  double hi = std::min(ctx.A_hi * ctx.A0p, ceil * (1.0 - 1e-12));
  if (!(lo < hi)) fail(Err::RootBracketFail, "entropy bracket collapsed at the sonic ceiling");
  return {lo, hi};
}

// Shared root machinery for the two monotone A-solves (G_A < 0, H_A > 0 near
// the background).
template <bool kIsH>
double solve_A_root(const Context& ctx, const up::UpstreamEval& ue, const Shifted& sh) {
  auto uv = upstream_vals(ue.state);
  auto fdf = [&](double A, double* d) {
    auto t = lagr::thermo_point(sh.down, {A, ue.B}, ctx.g);
    if (kIsH) {
      if (d) *d = sh.J1 * t.N1_A + sh.J2 * t.N2_A;
      return sh.J1 * (t.N1 - uv.N1) + sh.J2 * (t.N2 - uv.N2);
    }
    if (d) *d = sh.J1 * t.T1_A - sh.J2 * t.T2_A;
    return sh.J1 * (t.T1 - uv.T1) - sh.J2 * (t.T2 - uv.T2);
  };
  ABracket br = a_bracket(ctx, sh, ue.B);
  double x0 = std::clamp(ctx.A0p, br.lo, br.hi);
  try {
    return num::newton_bracketed(fdf, br.lo, br.hi, x0, 1e-15);
  } catch (const Error& e) {
    if (e.code() == Err::RootBracketFail)
      fail(Err::RootBracketFail,
           kIsH ? "H-tilde has no entropy root in the configured bracket"
                : "G has no entropy root in the configured bracket");
    throw;
  }
}

}  // namespace

Shifted compose_downstream(const up::UpstreamEval& ue, double vz1, double vz2) {
  if (!(vz1 > 0))
    fail(Err::TransformDegenerate, "hodograph requires varphi_z1 > 0 ([phi_y1] sign fixed)");
  Shifted s;
  s.J1 = 1.0 / vz1;
  s.J2 = -vz2 / vz1;
  s.down = lagr::Gradient{ue.phi_y1 + s.J1, ue.phi_y2 + s.J2};
  return s;
}

std::pair<double, double> mbar_flux(const Context& ctx, double z2, double A, double varphi,
                                    double vz1, double vz2) {
  auto ue = ctx.upstream->eval(varphi, z2);
  Shifted sh = compose_downstream(ue, vz1, vz2);
  auto [N1, N2] = lagr::flux_N(sh.down, {A, ue.B}, ctx.g);
  double M1 = N1 + N2 * sh.J2 / sh.J1;
  double M2 = N2 / sh.J1;
  return {-M1, -M2};
}

MbarJac mbar_jacobian(const Context& ctx, double z2, double A, double varphi, double vz1,
                      double vz2) {
  auto ue = ctx.upstream->eval(varphi, z2);
  Shifted sh = compose_downstream(ue, vz1, vz2);
  auto t = lagr::thermo_point(sh.down, {A, ue.B}, ctx.g);
  MbarJac j;
  j.a11 = sh.J1 * sh.J1 * t.N1_p1 + 2.0 * t.N1_p2 * sh.J1 * sh.J2 + t.N2_p2 * sh.J2 * sh.J2;
  j.a12 = t.N1_p2 * sh.J1 + t.N2_p2 * sh.J2 + t.N2;
  j.a21 = t.N1_p2 * sh.J1 + t.N2_p2 * sh.J2 - t.N2;
  j.a22 = t.N2_p2;
  j.disc = j.a11 * j.a22 - j.a12 * j.a21;
  if (!(j.disc > 0)) fail(Err::SonicDegeneracy, "Mbar Jacobian lost its positive discriminant");
  return j;
}

num::Vec2 mbar_A_derivative(const Context& ctx, double z2, double A, double varphi,
                            double vz1, double vz2) {
  auto ue = ctx.upstream->eval(varphi, z2);
  Shifted sh = compose_downstream(ue, vz1, vz2);
  auto t = lagr::thermo_point(sh.down, {A, ue.B}, ctx.g);
  return {-(t.N1_A + t.N2_A * sh.J2 / sh.J1), -t.N2_A / sh.J1};
}

num::Vec2 mbar_phi_derivative(const Context& ctx, double z2, double A, double varphi,
                              double vz1, double vz2) {
  if (ctx.upstream->uniform()) return {0.0, 0.0};
  double h = 1e-6 * (1.0 + std::abs(varphi));
  auto [a1, a2] = mbar_flux(ctx, z2, A, varphi + h, vz1, vz2);
  auto [b1, b2] = mbar_flux(ctx, z2, A, varphi - h, vz1, vz2);
  return {(a1 - b1) / (2 * h), (a2 - b2) / (2 * h)};
}

double G_residual(const Context& ctx, double z2, double A, double varphi, double vz1,
                  double vz2) {
  auto ue = ctx.upstream->eval(varphi, z2);
  Shifted sh = compose_downstream(ue, vz1, vz2);
  auto uv = upstream_vals(ue.state);
  auto t = lagr::thermo_point(sh.down, {A, ue.B}, ctx.g);
  return sh.J1 * (t.T1 - uv.T1) - sh.J2 * (t.T2 - uv.T2);
}

double H_residual(const Context& ctx, double z2, double A, double varphi, double vz1,
                  double vz2) {
  auto ue = ctx.upstream->eval(varphi, z2);
  Shifted sh = compose_downstream(ue, vz1, vz2);
  auto uv = upstream_vals(ue.state);
  auto t = lagr::thermo_point(sh.down, {A, ue.B}, ctx.g);
  return sh.J1 * (t.N1 - uv.N1) + sh.J2 * (t.N2 - uv.N2);
}

double entropy_update_H(const Context& ctx, double z2, double varphi, double vz1, double vz2) {
  auto ue = ctx.upstream->eval(varphi, z2);
  Shifted sh = compose_downstream(ue, vz1, vz2);
  return solve_A_root<true>(ctx, ue, sh);
}

double shock_g(const Context& ctx, double z2, double varphi, double vz1, double vz2) {
  auto ue = ctx.upstream->eval(varphi, z2);
  Shifted sh = compose_downstream(ue, vz1, vz2);
  return solve_A_root<true>(ctx, ue, sh) - solve_A_root<false>(ctx, ue, sh);
}

num::Vec2 shock_g_gradient(const Context& ctx, double z2, double varphi, double vz1,
                           double vz2) {
  auto ue = ctx.upstream->eval(varphi, z2);
  Shifted sh = compose_downstream(ue, vz1, vz2);
  auto uv = upstream_vals(ue.state);
  double A_H = solve_A_root<true>(ctx, ue, sh);
  double A_G = solve_A_root<false>(ctx, ue, sh);
  auto tH = lagr::thermo_point(sh.down, {A_H, ue.B}, ctx.g);
  auto tG = lagr::thermo_point(sh.down, {A_G, ue.B}, ctx.g);

  double H_A = sh.J1 * tH.N1_A + sh.J2 * tH.N2_A;
  double G_A = sh.J1 * tG.T1_A - sh.J2 * tG.T2_A;
  // The jumps and the downstream gradient both move with (vz1, vz2):
  // dJ1/dvz1 = -J1^2, dJ2/dvz1 = -J2 J1, dJ1/dvz2 = 0, dJ2/dvz2 = -J1, and
  // p1 = phi-_y1 + J1, p2 = phi-_y2 + J2 at fixed varphi.
  double dJ1_d1 = -sh.J1 * sh.J1, dJ2_d1 = -sh.J2 * sh.J1;
  double dJ1_d2 = 0.0, dJ2_d2 = -sh.J1;

  auto dH = [&](double dJ1, double dJ2) {
    return dJ1 * (tH.N1 - uv.N1) + dJ2 * (tH.N2 - uv.N2) +
           sh.J1 * (tH.N1_p1 * dJ1 + tH.N1_p2 * dJ2) +
           sh.J2 * (tH.N2_p1 * dJ1 + tH.N2_p2 * dJ2);
  };
  auto dG = [&](double dJ1, double dJ2) {
    return dJ1 * (tG.T1 - uv.T1) - dJ2 * (tG.T2 - uv.T2) +
           sh.J1 * (tG.T1_p1 * dJ1 + tG.T1_p2 * dJ2) -
           sh.J2 * (tG.T2_p1 * dJ1 + tG.T2_p2 * dJ2);
  };
  double nu1 = -dH(dJ1_d1, dJ2_d1) / H_A + dG(dJ1_d1, dJ2_d1) / G_A;
  double nu2 = -dH(dJ1_d2, dJ2_d2) / H_A + dG(dJ1_d2, dJ2_d2) / G_A;
  return {nu1, nu2};
}

double shock_g_phi_derivative(const Context& ctx, double z2, double varphi, double vz1,
                              double vz2) {
  if (ctx.upstream->uniform()) return 0.0;
  double h = 1e-6 * (1.0 + std::abs(varphi));
  return (shock_g(ctx, z2, varphi + h, vz1, vz2) - shock_g(ctx, z2, varphi - h, vz1, vz2)) /
         (2 * h);
}

// ---------------------------------------------------------------------------
// Far field

FarField::FarField(const Context& ctx, num::Pchip A_of_z2, double theta0, double w0,
                   double p_inf)
    : upstream_(ctx.upstream), g_(ctx.g), A_(std::move(A_of_z2)), theta0_(theta0), w0_(w0),
      p_inf_(p_inf), tan0_(std::tan(theta0)) {
  const auto& xs = A_.xs();
  z2max_ = xs.back();
  std::vector<double> lv(xs.size());
  lv[0] = w0_;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    lv[i] = lv[i - 1] +
            num::simpson([&](double s) { return lprime(s); }, xs[i - 1], xs[i], 8);
  }
  l_ = num::Pchip(xs, lv);
  l_end_ = lv.back();
  lp_end_ = lprime(z2max_);
}

double FarField::lprime(double z2) const {
  double A = A_(z2);
  double B = upstream_->B_at(z2);
  double rho = std::pow(p_inf_ / A, 1.0 / g_.gamma);
  double e = B - g_.gamma * p_inf_ / ((g_.gamma - 1.0) * rho);
  if (!(e > 0)) fail(Err::NoSubsonicRoot, "far-field Bernoulli admits no flow");
  double q = std::sqrt(2.0 * e);
  double c2 = g_.gamma * p_inf_ / rho;
  if (!(q * q < c2)) fail(Err::NoSubsonicRoot, "far-field state is not subsonic");
  return 1.0 / (rho * q * std::cos(theta0_));
}

double FarField::l(double z2) const {
  if (z2 >= z2max_) return l_end_ + lp_end_ * (z2 - z2max_);
  return l_(z2);
}

double FarField::varphi(double z1, double z2) const {
  double lz = l(z2);
  double y = (z1 - lz + upstream_->phi_minus(0.0, z2)) / tan0_;
  for (int it = 0; it < 100; ++it) {
    auto ue = upstream_->eval(y, z2);
    double F = tan0_ * y + lz - ue.phi - z1;
    double dF = tan0_ - ue.phi_y1;
    if (dF == 0) fail(Err::TransformDegenerate, "far-field inversion has vanishing slope");
    double step = F / dF;
    y -= step;
    if (std::abs(step) <= 1e-14 * (1.0 + std::abs(y))) return y;
  }
  fail(Err::SolverDiverged, "far-field inversion did not converge");
}

num::Vec2 FarField::grad_varphi(double z1, double z2) const {
  double y = varphi(z1, z2);
  auto ue = upstream_->eval(y, z2);
  double denom = tan0_ - ue.phi_y1;
  return {1.0 / denom, -(lprime(z2) - ue.phi_y2) / denom};
}

gas::FlowState FarField::state_at(double y2) const {
  double A = A_(y2);
  double B = upstream_->B_at(y2);
  double rho = std::pow(p_inf_ / A, 1.0 / g_.gamma);
  double q = std::sqrt(2.0 * (B - g_.gamma * p_inf_ / ((g_.gamma - 1.0) * rho)));
  return gas::FlowState{q * std::cos(theta0_), q * std::sin(theta0_), p_inf_, rho};
}

double FarField::l_inverse(double s) const {
  if (s >= l_end_) return z2max_ + (s - l_end_) / lp_end_;
  if (s <= w0_) return 0.0;
  return num::brent([&](double z2) { return l(z2) - s; }, 0.0, z2max_, 1e-14);
}

}  // namespace wedge::hodo
