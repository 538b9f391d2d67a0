#include "wedge/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/SparseLU>

namespace wedge::ell {

namespace {

// Central-difference weights for f'(x0) on the nonuniform triple
// (x0 - hs, x0, x0 + hn).
struct D3 {
  double wm, w0, wp;
};
D3 central(double hs, double hn) {
  return {-hn / (hs * (hn + hs)), (hn - hs) / (hn * hs), hs / (hn * (hn + hs))};
}
// Second-order one-sided weights for f'(x0) using x0, x0 + a, x0 + a + b.
D3 one_sided(double a, double b) {
  return {-(2 * a + b) / (a * (a + b)), (a + b) / (a * b), -a / (b * (a + b))};
}

// Accumulate the linear E-face flux (i,j)-(i+1,j) as (node, weight) pairs.
template <class Sink>
void flux1_terms(const TruncatedGrid& g, int i, int j, const FaceCoeff& c, double scale,
                 Sink&& add) {
  double h1 = g.z1(i + 1) - g.z1(i);
  add(i, j, scale * (-c.a_g1 / h1 + 0.5 * c.b));
  add(i + 1, j, scale * (c.a_g1 / h1 + 0.5 * c.b));
  if (c.a_g2 != 0) {
    D3 d = central(g.z2(j) - g.z2(j - 1), g.z2(j + 1) - g.z2(j));
    for (int ii : {i, i + 1}) {
      add(ii, j - 1, scale * 0.5 * c.a_g2 * d.wm);
      add(ii, j, scale * 0.5 * c.a_g2 * d.w0);
      add(ii, j + 1, scale * 0.5 * c.a_g2 * d.wp);
    }
  }
}

// Accumulate the linear N-face flux (i,j)-(i,j+1).
template <class Sink>
void flux2_terms(const TruncatedGrid& g, int i, int j, const FaceCoeff& c, double scale,
                 Sink&& add) {
  double h2 = g.z2(j + 1) - g.z2(j);
  add(i, j, scale * (-c.a_g2 / h2 + 0.5 * c.b));
  add(i, j + 1, scale * (c.a_g2 / h2 + 0.5 * c.b));
  if (c.a_g1 != 0) {
    D3 d = central(g.z1(i) - g.z1(i - 1), g.z1(i + 1) - g.z1(i));
    for (int jj : {j, j + 1}) {
      add(i - 1, jj, scale * 0.5 * c.a_g1 * d.wm);
      add(i, jj, scale * 0.5 * c.a_g1 * d.w0);
      add(i + 1, jj, scale * 0.5 * c.a_g1 * d.wp);
    }
  }
}

// Divergence-row terms of the interior node (i,j).
template <class Sink>
void divergence_terms(const TruncatedGrid& g, const CoeffFn& flux1, const CoeffFn& flux2,
                      int i, int j, Sink&& add) {
  double H1 = 0.5 * (g.z1(i + 1) - g.z1(i - 1));
  double H2 = 0.5 * (g.z2(j + 1) - g.z2(j - 1));
  double zE1 = 0.5 * (g.z1(i) + g.z1(i + 1)), zW1 = 0.5 * (g.z1(i - 1) + g.z1(i));
  double zN2 = 0.5 * (g.z2(j) + g.z2(j + 1)), zS2 = 0.5 * (g.z2(j - 1) + g.z2(j));
  flux1_terms(g, i, j, flux1(i, j, zE1, g.z2(j)), 1.0 / H1, add);
  flux1_terms(g, i - 1, j, flux1(i - 1, j, zW1, g.z2(j)), -1.0 / H1, add);
  flux2_terms(g, i, j, flux2(i, j, g.z1(i), zN2), 1.0 / H2, add);
  flux2_terms(g, i, j - 1, flux2(i, j - 1, g.z1(i), zS2), -1.0 / H2, add);
}

void check_face_ellipticity(const FaceCoeff& f1, const FaceCoeff& f2) {
  double sym = 0.5 * (f1.a_g2 + f2.a_g1);
  if (!(f1.a_g1 > 0) || !(f2.a_g2 > 0) || !(f1.a_g1 * f2.a_g2 - sym * sym > 0))
    fail(Err::EllipticityLost, "face coefficients are not uniformly elliptic");
}

double dirichlet_value(const TruncatedGrid& g, const BoundaryData& bc, int i, int j) {
  switch (g.tag(i, j)) {
    case Tag::Wedge: return bc.wedge(g.z1(i), 0.0);
    case Tag::Cutoff:
    case Tag::Outside: return bc.cutoff(g.z1(i), g.z2(j));
    case Tag::Shock: return bc.shock(0.0, g.z2(j));
    default: fail(Err::PreconditionViolated, "no Dirichlet data at an equation node");
  }
}

}  // namespace

LinearSystem assemble_linearized(const TruncatedGrid& g, const CoeffFn& flux1,
                                 const CoeffFn& flux2, const BoundaryData& bc,
                                 const DataFn& source, const AssemblyChecks& checks) {
  const int n = g.n_unknowns();
  LinearSystem sys;
  sys.A.resize(n, n);
  sys.rhs = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(std::size_t(n) * 16);

  for (int u = 0; u < n; ++u) {
    auto [i, j] = g.unknown_node(u);
    auto add = [&](int ii, int jj, double w) {
      if (w == 0) return;
      int col = g.unknown_index(ii, jj);
      if (col >= 0)
        trip.emplace_back(u, col, w);
      else
        sys.rhs[u] -= w * dirichlet_value(g, bc, ii, jj);
    };

    if (g.tag(i, j) == Tag::Shock && !bc.shock_oblique) {
      trip.emplace_back(u, u, 1.0);
      sys.rhs[u] = bc.shock(0.0, g.z2(j));
      continue;
    }
    if (g.tag(i, j) == Tag::Shock && bc.shock_oblique) {
      ObliqueRow row = bc.oblique(j, g.z2(j));
      if (!(row.nu1 > 0)) fail(Err::ObliquenessLost, "oblique row requires nu1 > 0");
      if (checks.nu2_sign != 0 && row.nu2 * checks.nu2_sign <= 0)
        fail(Err::ObliquenessLost, "oblique coefficient nu2 changed sign");
      D3 os = one_sided(g.z1(1) - g.z1(0), g.z1(2) - g.z1(1));
      add(0, j, row.nu1 * os.wm + row.c);
      add(1, j, row.nu1 * os.w0);
      add(2, j, row.nu1 * os.wp);
      D3 ct = central(g.z2(j) - g.z2(j - 1), g.z2(j + 1) - g.z2(j));
      add(0, j - 1, row.nu2 * ct.wm);
      add(0, j, row.nu2 * ct.w0);
      add(0, j + 1, row.nu2 * ct.wp);
      sys.rhs[u] += row.g0;
      continue;
    }

    if (checks.verify_ellipticity) {
      double zE1 = 0.5 * (g.z1(i) + g.z1(i + 1));
      double zN2 = 0.5 * (g.z2(j) + g.z2(j + 1));
      check_face_ellipticity(flux1(i, j, zE1, g.z2(j)), flux2(i, j, g.z1(i), zN2));
    }
    divergence_terms(g, flux1, flux2, i, j, add);
    if (source) sys.rhs[u] += source(g.z1(i), g.z2(j));
  }
  sys.A.setFromTriplets(trip.begin(), trip.end());
  return sys;
}

Field solve_linear(const TruncatedGrid& g, const LinearSystem& sys, const BoundaryData& bc) {
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(sys.A);
  lu.factorize(sys.A);
  if (lu.info() != Eigen::Success) fail(Err::SolverDiverged, "sparse LU factorization failed");
  Eigen::VectorXd x = lu.solve(sys.rhs);
  double res = (sys.A * x - sys.rhs).cwiseAbs().maxCoeff();
  double scale = sys.rhs.cwiseAbs().maxCoeff() + x.cwiseAbs().maxCoeff() + 1.0;
  if (!(res <= 1e-10 * scale)) fail(Err::SolverDiverged, "linear solve residual above 1e-10");

  Field v(g);
  for (int i = 0; i <= g.n1(); ++i)
    for (int j = 0; j <= g.n2(); ++j) {
      int u = g.unknown_index(i, j);
      if (u >= 0)
        v(i, j) = x[u];
      else if (g.tag(i, j) == Tag::Outside)
        v(i, j) = bc.cutoff(g.z1(i), g.z2(j));
      else
        v(i, j) = dirichlet_value(g, bc, i, j);
    }
  return v;
}

void gauss_seidel_sweeps(const LinearSystem& sys, Eigen::VectorXd& x, int sweeps) {
  Eigen::SparseMatrix<double, Eigen::RowMajor> Ar = sys.A;
  for (int s = 0; s < sweeps; ++s) {
    for (int r = 0; r < Ar.outerSize(); ++r) {
      double diag = 0, acc = sys.rhs[r];
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(Ar, r); it; ++it) {
        if (it.col() == r)
          diag = it.value();
        else
          acc -= it.value() * x[it.col()];
      }
      if (diag != 0) x[r] = acc / diag;
    }
  }
}

Field apply_operator(const TruncatedGrid& g, const CoeffFn& flux1, const CoeffFn& flux2,
                     const Field& v) {
  Field r(g);
  g.for_each_node([&](int i, int j) {
    if (g.tag(i, j) != Tag::Interior) return;
    double acc = 0;
    divergence_terms(g, flux1, flux2, i, j,
                     [&](int ii, int jj, double w) { acc += w * v(ii, jj); });
    r(i, j) = acc;
  });
  return r;
}

num::Vec2 node_gradient(const TruncatedGrid& g, const Field& v, int i, int j) {
  num::Vec2 gr;
  if (i == 0) {
    D3 os = one_sided(g.z1(1) - g.z1(0), g.z1(2) - g.z1(1));
    gr.x = os.wm * v(0, j) + os.w0 * v(1, j) + os.wp * v(2, j);
  } else if (!g.inside(i + 1, j)) {
    D3 os = one_sided(g.z1(i - 1) - g.z1(i), g.z1(i - 2) - g.z1(i - 1));
    gr.x = os.wm * v(i, j) + os.w0 * v(i - 1, j) + os.wp * v(i - 2, j);
  } else {
    D3 d = central(g.z1(i) - g.z1(i - 1), g.z1(i + 1) - g.z1(i));
    gr.x = d.wm * v(i - 1, j) + d.w0 * v(i, j) + d.wp * v(i + 1, j);
  }
  if (j == 0) {
    D3 os = one_sided(g.z2(1) - g.z2(0), g.z2(2) - g.z2(1));
    gr.y = os.wm * v(i, 0) + os.w0 * v(i, 1) + os.wp * v(i, 2);
  } else if (!g.inside(i, j + 1)) {
    D3 os = one_sided(g.z2(j - 1) - g.z2(j), g.z2(j - 2) - g.z2(j - 1));
    gr.y = os.wm * v(i, j) + os.w0 * v(i, j - 1) + os.wp * v(i, j - 2);
  } else {
    D3 d = central(g.z2(j) - g.z2(j - 1), g.z2(j + 1) - g.z2(j));
    gr.y = d.wm * v(i, j - 1) + d.w0 * v(i, j) + d.wp * v(i, j + 1);
  }
  return gr;
}

// ---------------------------------------------------------------------------
// Nonlinear Picard solve

namespace {

// varphi_inf and its gradient cached at nodes and face midpoints.
struct FarCache {
  Field pN, g1N, g2N, pE, g1E, g2E, pF, g1F, g2F;
  void build(const TruncatedGrid& g, const hodo::FarField& ff) {
    pN = g1N = g2N = pE = g1E = g2E = pF = g1F = g2F = Field(g);
    for (int i = 0; i <= g.n1(); ++i)
      for (int j = 0; j <= g.n2(); ++j) {
        // triangle plus one ring: everything a stencil can touch
        if (std::int64_t(i - 1) * g.n2() + std::int64_t(j - 1) * g.n1() >
            std::int64_t(g.n1()) * g.n2())
          continue;
        double z1 = g.z1(i), z2 = g.z2(j);
        pN(i, j) = ff.varphi(z1, z2);
        auto gr = ff.grad_varphi(z1, z2);
        g1N(i, j) = gr.x;
        g2N(i, j) = gr.y;
        if (i < g.n1()) {
          double ze = 0.5 * (g.z1(i) + g.z1(i + 1));
          pE(i, j) = ff.varphi(ze, z2);
          auto ge = ff.grad_varphi(ze, z2);
          g1E(i, j) = ge.x;
          g2E(i, j) = ge.y;
        }
        if (j < g.n2()) {
          double zf = 0.5 * (g.z2(j) + g.z2(j + 1));
          pF(i, j) = ff.varphi(z1, zf);
          auto gf = ff.grad_varphi(z1, zf);
          g1F(i, j) = gf.x;
          g2F(i, j) = gf.y;
        }
      }
  }
};

// Discrete value/gradient of the iterate at the two face families, matching
// the assembly stencils exactly.
struct FaceState {
  double w, wz1, wz2;
};

FaceState face_state_E(const TruncatedGrid& g, const Field& v, int i, int j) {
  double h1 = g.z1(i + 1) - g.z1(i);
  D3 d = central(g.z2(j) - g.z2(j - 1), g.z2(j + 1) - g.z2(j));
  double dz2a = d.wm * v(i, j - 1) + d.w0 * v(i, j) + d.wp * v(i, j + 1);
  double dz2b = d.wm * v(i + 1, j - 1) + d.w0 * v(i + 1, j) + d.wp * v(i + 1, j + 1);
  return {0.5 * (v(i, j) + v(i + 1, j)), (v(i + 1, j) - v(i, j)) / h1, 0.5 * (dz2a + dz2b)};
}

FaceState face_state_N(const TruncatedGrid& g, const Field& v, int i, int j) {
  double h2 = g.z2(j + 1) - g.z2(j);
  D3 d = central(g.z1(i) - g.z1(i - 1), g.z1(i + 1) - g.z1(i));
  double dz1a = d.wm * v(i - 1, j) + d.w0 * v(i, j) + d.wp * v(i + 1, j);
  double dz1b = d.wm * v(i - 1, j + 1) + d.w0 * v(i, j + 1) + d.wp * v(i + 1, j + 1);
  return {0.5 * (v(i, j) + v(i, j + 1)), 0.5 * (dz1a + dz1b), (v(i, j + 1) - v(i, j)) / h2};
}

// One-sided/central gradient of the iterate at a shock node.
FaceState shock_state(const TruncatedGrid& g, const Field& v, int j) {
  D3 os = one_sided(g.z1(1) - g.z1(0), g.z1(2) - g.z1(1));
  D3 ct = central(g.z2(j) - g.z2(j - 1), g.z2(j + 1) - g.z2(j));
  return {v(0, j), os.wm * v(0, j) + os.w0 * v(1, j) + os.wp * v(2, j),
          ct.wm * v(0, j - 1) + ct.w0 * v(0, j) + ct.wp * v(0, j + 1)};
}

}  // namespace

NonlinearResult solve_nonlinear(const NonlinearProblem& prob, const Field* warm_start) {
  const TruncatedGrid& g = *prob.grid;
  const hodo::Context& ctx = *prob.ctx;
  const hodo::FarField& ff = *prob.far;
  const auto& quad = num::gauss01(prob.quad_pts);
  const bool uniform_up = ctx.upstream->uniform();

  FarCache fc;
  fc.build(g, ff);

  BoundaryData bc;
  bc.wedge = [&](double z1, double) { return prob.wedge_zeta(z1); };
  bc.cutoff = [](double, double) { return 0.0; };
  bc.shock_oblique = true;

  Field v = warm_start ? *warm_start : Field(g);
  NonlinearResult out;

  for (int it = 0; it < prob.max_picard; ++it) {
    CoeffFn flux1 = [&](int i, int j, double, double z2) -> FaceCoeff {
      FaceState s = face_state_E(g, v, i, j);
      double A = prob.A_of(z2);
      FaceCoeff c;
      for (int q = 0; q < prob.quad_pts; ++q) {
        double t = quad.nodes[q], wq = quad.weights[q];
        double ph = fc.pE(i, j) + t * s.w;
        double v1 = fc.g1E(i, j) + t * s.wz1, v2 = fc.g2E(i, j) + t * s.wz2;
        auto J = hodo::mbar_jacobian(ctx, z2, A, ph, v1, v2);
        c.a_g1 += wq * J.a11;
        c.a_g2 += wq * J.a12;
        if (!uniform_up) c.b += wq * hodo::mbar_phi_derivative(ctx, z2, A, ph, v1, v2).x;
      }
      return c;
    };
    CoeffFn flux2 = [&](int i, int j, double, double z2) -> FaceCoeff {
      FaceState s = face_state_N(g, v, i, j);
      double A = prob.A_of(z2);
      FaceCoeff c;
      for (int q = 0; q < prob.quad_pts; ++q) {
        double t = quad.nodes[q], wq = quad.weights[q];
        double ph = fc.pF(i, j) + t * s.w;
        double v1 = fc.g1F(i, j) + t * s.wz1, v2 = fc.g2F(i, j) + t * s.wz2;
        auto J = hodo::mbar_jacobian(ctx, z2, A, ph, v1, v2);
        c.a_g1 += wq * J.a21;
        c.a_g2 += wq * J.a22;
        if (!uniform_up) c.b += wq * hodo::mbar_phi_derivative(ctx, z2, A, ph, v1, v2).y;
      }
      return c;
    };
    bc.oblique = [&](int j, double z2) -> ObliqueRow {
      FaceState s = shock_state(g, v, j);
      ObliqueRow row;
      row.nu1 = row.nu2 = row.c = 0;
      for (int q = 0; q < prob.quad_pts; ++q) {
        double t = quad.nodes[q], wq = quad.weights[q];
        double ph = fc.pN(0, j) + t * s.w;
        double v1 = fc.g1N(0, j) + t * s.wz1, v2 = fc.g2N(0, j) + t * s.wz2;
        auto nu = hodo::shock_g_gradient(ctx, z2, ph, v1, v2);
        row.nu1 += wq * nu.x;
        row.nu2 += wq * nu.y;
        if (!uniform_up) row.c += wq * hodo::shock_g_phi_derivative(ctx, z2, ph, v1, v2);
      }
      row.g0 = -hodo::shock_g(ctx, z2, fc.pN(0, j), fc.g1N(0, j), fc.g2N(0, j));
      return row;
    };

    AssemblyChecks checks;
    checks.nu2_sign = prob.nu2_sign;
    LinearSystem sys = assemble_linearized(g, flux1, flux2, bc, nullptr, checks);
    Field vn = solve_linear(g, sys, bc);

    double change = 0;
    g.for_each_node([&](int i, int j) {
      double r = std::hypot(g.z1(i), g.z2(j));
      double w = std::pow(1.0 + r, prob.beta);
      change = std::max(change, w * std::abs(vn(i, j) - v(i, j)));
    });
    v = vn;
    out.iterations = it + 1;
    out.last_change = change;
    out.delta_norm = delta_ball_norm(g, v, prob.beta);
    if (prob.log)
      (*prob.log) << "{\"iteration\":" << out.iterations << ",\"residual\":" << change
                  << ",\"delta_norm\":" << out.delta_norm << "}\n";
    if (out.delta_norm > prob.delta_ball)
      fail(Err::LeftDeltaBall, "iterate left the delta ball");
    if (change <= prob.picard_tol) {
      out.converged = true;
      break;
    }
  }
  if (!out.converged) fail(Err::MaxIterations, "Picard iteration did not converge");
  out.v = v;
  return out;
}

Field nonlinear_residual(const NonlinearProblem& prob, const Field& v, double* sup_out,
                         double* l2_out) {
  const TruncatedGrid& g = *prob.grid;
  const hodo::Context& ctx = *prob.ctx;
  FarCache fc;
  fc.build(g, *prob.far);

  auto fluxE = [&](int i, int j) {
    FaceState s = face_state_E(g, v, i, j);
    double z2 = g.z2(j);
    return hodo::mbar_flux(ctx, z2, prob.A_of(z2), fc.pE(i, j) + s.w, fc.g1E(i, j) + s.wz1,
                           fc.g2E(i, j) + s.wz2)
        .first;
  };
  auto fluxN = [&](int i, int j) {
    FaceState s = face_state_N(g, v, i, j);
    double z2 = 0.5 * (g.z2(j) + g.z2(j + 1));
    return hodo::mbar_flux(ctx, z2, prob.A_of(z2), fc.pF(i, j) + s.w, fc.g1F(i, j) + s.wz1,
                           fc.g2F(i, j) + s.wz2)
        .second;
  };

  Field r(g);
  double sup = 0, l2 = 0;
  int count = 0;
  g.for_each_node([&](int i, int j) {
    if (g.tag(i, j) != Tag::Interior) return;
    double H1 = 0.5 * (g.z1(i + 1) - g.z1(i - 1));
    double H2 = 0.5 * (g.z2(j + 1) - g.z2(j - 1));
    double res = (fluxE(i, j) - fluxE(i - 1, j)) / H1 + (fluxN(i, j) - fluxN(i, j - 1)) / H2;
    r(i, j) = res;
    sup = std::max(sup, std::abs(res));
    l2 += res * res;
    ++count;
  });
  if (sup_out) *sup_out = sup;
  if (l2_out) *l2_out = std::sqrt(l2 / std::max(count, 1));
  return r;
}

double delta_ball_norm(const TruncatedGrid& g, const Field& v, double beta) {
  double norm = 0;
  g.for_each_node([&](int i, int j) {
    double r = std::hypot(g.z1(i), g.z2(j));
    norm = std::max(norm, std::pow(1.0 + r, beta) * std::abs(v(i, j)));
    if (g.inside(i + 1, j)) {
      double q = (v(i + 1, j) - v(i, j)) / (g.z1(i + 1) - g.z1(i));
      norm = std::max(norm, std::pow(1.0 + r, 1.0 + beta) * std::abs(q));
    }
    if (g.inside(i, j + 1)) {
      double q = (v(i, j + 1) - v(i, j)) / (g.z2(j + 1) - g.z2(j));
      norm = std::max(norm, std::pow(1.0 + r, 1.0 + beta) * std::abs(q));
    }
  });
  return norm;
}

// ---------------------------------------------------------------------------
// Decay measurement

std::pair<double, std::vector<std::array<double, 2>>> fit_decay(
    std::vector<std::pair<double, double>> samples, double rmin, int min_annuli) {
  std::vector<double> sup;
  for (auto& [r, val] : samples) {
    if (r < rmin) continue;
    int m = int(std::floor(std::log2(r / rmin)));
    if (m < 0) continue;
    if (int(sup.size()) <= m) sup.resize(m + 1, 0.0);
    sup[m] = std::max(sup[m], std::abs(val));
  }
  std::vector<double> lx, ly;
  std::vector<std::array<double, 2>> annuli;
  for (std::size_t m = 0; m < sup.size(); ++m) {
    if (sup[m] <= 0) continue;
    double rmid = rmin * std::pow(2.0, double(m) + 0.5);
    annuli.push_back({rmid, sup[m]});
    lx.push_back(std::log(rmid));
    ly.push_back(std::log(sup[m]));
  }
  if (int(annuli.size()) < min_annuli)
    fail(Err::InsufficientAnnuli, "fewer than the required dyadic annuli carry data");
  auto [slope, icpt] = num::linfit(lx, ly);
  (void)icpt;
  return {-slope, annuli};
}

DecayReport measure_decay(const TruncatedGrid& g, const Field& v, double beta_config,
                          double rmin) {
  DecayReport rep;
  std::vector<std::pair<double, double>> vals, grads;
  double vmax = 0;
  g.for_each_node([&](int i, int j) {
    double r = std::hypot(g.z1(i), g.z2(j));
    vals.push_back({r, v(i, j)});
    vmax = std::max(vmax, std::abs(v(i, j)));
    rep.sup_weighted = std::max(rep.sup_weighted,
                                std::pow(1.0 + r, beta_config) * std::abs(v(i, j)));
    if (g.inside(i + 1, j)) {
      double q = (v(i + 1, j) - v(i, j)) / (g.z1(i + 1) - g.z1(i));
      grads.push_back({r, r * q});
    }
    if (g.inside(i, j + 1)) {
      double q = (v(i, j + 1) - v(i, j)) / (g.z2(j + 1) - g.z2(j));
      grads.push_back({r, r * q});
    }
  });
  if (vmax == 0) {
    rep.all_zero = true;
    return rep;
  }
  auto [ev, av] = fit_decay(std::move(vals), rmin);
  rep.fitted_exponent = ev;
  for (auto& a : av) {
    rep.annulus_r.push_back(a[0]);
    rep.annulus_sup.push_back(a[1]);
  }
  auto [eg, ag] = fit_decay(std::move(grads), rmin);
  rep.grad_fitted_exponent = eg;
  for (auto& a : ag) rep.annulus_grad_sup.push_back(a[1]);
  return rep;
}

// ---------------------------------------------------------------------------
// Comparison principles

CompareResult comparison_check(const TruncatedGrid& g, const CoeffFn& flux1,
                               const CoeffFn& flux2, const Field& v, const Field& w,
                               CompareVariant variant, double slack) {
  g.for_each_node([&](int i, int j) {
    if (!(w(i, j) > 0)) fail(Err::PreconditionViolated, "w must be positive on the closure");
  });
  Field Lv = apply_operator(g, flux1, flux2, v);
  Field Lw = apply_operator(g, flux1, flux2, w);
  double scale = 0;
  g.for_each_node([&](int i, int j) {
    if (g.tag(i, j) == Tag::Interior)
      scale = std::max({scale, std::abs(Lv(i, j)), std::abs(Lw(i, j))});
  });
  double tol = 1e-11 * (1.0 + scale);
  g.for_each_node([&](int i, int j) {
    if (g.tag(i, j) != Tag::Interior) return;
    if (variant == CompareVariant::Boundary) {
      if (Lv(i, j) < -tol || Lw(i, j) > tol)
        fail(Err::PreconditionViolated, "Lv >= 0 >= Lw fails discretely");
    } else {
      if (Lv(i, j) < Lw(i, j) - tol || Lw(i, j) > tol)
        fail(Err::PreconditionViolated, "Lv >= Lw, Lw < 0 fails discretely");
    }
  });

  CompareResult res;
  g.for_each_node([&](int i, int j) {
    double ratio = v(i, j) / w(i, j);
    if (g.tag(i, j) == Tag::Interior)
      res.interior_sup = std::max(res.interior_sup, ratio);
    else
      res.boundary_sup = std::max(res.boundary_sup, std::max(ratio, 0.0));
  });
  double bound = (variant == CompareVariant::Boundary) ? res.boundary_sup
                                                       : std::max(res.boundary_sup, 1.0);
  res.holds = res.interior_sup <= bound + slack;
  return res;
}

std::function<double(double, double)> corner_barrier(const BarrierSpec& spec) {
  if (spec.kind == BarrierSpec::Kind::Decay) {
    if (!(0 < spec.beta && spec.beta < spec.alpha && spec.alpha < 1))
      fail(Err::BadExponents, "Decay barrier needs 0 < beta < alpha < 1");
  } else {
    if (!(0 < spec.alpha && spec.alpha < 1 && spec.tau >= 0 && spec.tau < 1))
      fail(Err::BadExponents, "Regularity barrier needs small alpha, tau");
  }
  const double det = spec.K[0][0] * spec.K[1][1] - spec.K[0][1] * spec.K[1][0];
  if (det == 0) fail(Err::PreconditionViolated, "K must be invertible");
  const double i00 = spec.K[1][1] / det, i01 = -spec.K[0][1] / det;
  const double i10 = -spec.K[1][0] / det, i11 = spec.K[0][0] / det;
  return [spec, i00, i01, i10, i11](double z1, double z2) {
    double b1 = i00 * z1 + i01 * z2, b2 = i10 * z1 + i11 * z2;
    double r = std::hypot(b1, b2), th = std::atan2(b2, b1);
    if (spec.kind == BarrierSpec::Kind::Decay) {
      double s = std::sin(th);
      double v2 = (s > 0) ? std::pow(s, spec.alpha) : 0.0;
      return std::pow(r, -spec.beta) * (std::sin(spec.alpha * th + spec.tau) + v2);
    }
    double t = 1.0 + spec.alpha + spec.tau;
    return std::pow(r, 1.0 + spec.alpha) * std::sin(t * th + spec.tau);
  };
}

}  // namespace wedge::ell
