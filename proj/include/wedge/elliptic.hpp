// Divergence-form finite-volume discretization on the truncated triangle:
// linearized assembly with Dirichlet wedge/cutoff data and an oblique shock
// row, sparse direct solve, the frozen-coefficient Picard iteration for the
// nonlinear transformed equation, weighted decay measurement, and the
// comparison-principle harness with the corner barriers.
#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "wedge/grid.hpp"
#include "wedge/hodograph.hpp"
#include "wedge/numerics.hpp"

namespace wedge::ell {

using grid::Field;
using grid::Tag;
using grid::TruncatedGrid;

// Linear flux coefficients at a face: flux = a_g1 vz1 + a_g2 vz2 + b v.
struct FaceCoeff {
  double a_g1 = 0, a_g2 = 0, b = 0;
};
// Evaluated at the E-face (i,j)-(i+1,j) for flux 1, N-face (i,j)-(i,j+1) for flux 2.
using CoeffFn = std::function<FaceCoeff(int i, int j, double z1, double z2)>;

struct ObliqueRow {
  double nu1 = 1, nu2 = 0, c = 0, g0 = 0;
};
using ObliqueFn = std::function<ObliqueRow(int j, double z2)>;
using DataFn = std::function<double(double z1, double z2)>;

struct BoundaryData {
  DataFn wedge;   // Dirichlet on z2 = 0
  DataFn cutoff;  // Dirichlet on the cutoff diagonal and the outside band
  bool shock_oblique = true;
  ObliqueFn oblique;  // when shock_oblique
  DataFn shock;       // Dirichlet on z1 = 0 when !shock_oblique
};

struct LinearSystem {
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd rhs;
};

// Checked during assembly; throws EllipticityLost / ObliquenessLost.
struct AssemblyChecks {
  bool verify_ellipticity = true;
  double nu2_sign = 0;  // 0: skip sign check; else required sign of nu2
};

LinearSystem assemble_linearized(const TruncatedGrid& g, const CoeffFn& flux1,
                                 const CoeffFn& flux2, const BoundaryData& bc,
                                 const DataFn& source = nullptr,
                                 const AssemblyChecks& checks = {});

// Sparse LU solve; fills every node of the index box (band included) using bc.
// Residual kept below 1e-10 relative in the max norm, else SolverDiverged.
Field solve_linear(const TruncatedGrid& g, const LinearSystem& sys, const BoundaryData& bc);

// Plain Gauss-Seidel sweeps on an assembled system (test/diagnostic utility).
void gauss_seidel_sweeps(const LinearSystem& sys, Eigen::VectorXd& x, int sweeps);

// Discrete divergence-form residual of linear coefficients applied to a field
// defined on the whole index box; evaluated at Interior nodes only.
Field apply_operator(const TruncatedGrid& g, const CoeffFn& flux1, const CoeffFn& flux2,
                     const Field& v);

// Gradient of a field at a node by central/one-sided second-order differences.
num::Vec2 node_gradient(const TruncatedGrid& g, const Field& v, int i, int j);

// ---------------------------------------------------------------------------
// Nonlinear solve (frozen-coefficient Picard on the transformed equation)

struct NonlinearProblem {
  const TruncatedGrid* grid = nullptr;
  const hodo::Context* ctx = nullptr;
  const hodo::FarField* far = nullptr;
  std::function<double(double)> wedge_zeta;  // v(z1, 0)
  std::function<double(double)> A_of;        // entropy profile A(z2)
  double beta = 0.25;
  double delta_ball = 0.1;
  double picard_tol = 1e-11;
  int max_picard = 60;
  int quad_pts = 5;
  double nu2_sign = -1.0;
  std::ostream* log = nullptr;  // JSON lines: iteration, change, delta norm
};

struct NonlinearResult {
  Field v;  // varphi - varphi_inf over the index box
  int iterations = 0;
  double last_change = 0;
  double delta_norm = 0;
  bool converged = false;
};

NonlinearResult solve_nonlinear(const NonlinearProblem& prob,
                                const Field* warm_start = nullptr);

// Discrete nonlinear divergence residual of the converged iterate at interior
// nodes (sup and L2 norms reported).
Field nonlinear_residual(const NonlinearProblem& prob, const Field& v, double* sup_out,
                         double* l2_out);

// Weighted delta-ball norm: sup (1+r)^beta |v| and (1+r)^(1+beta) |Dv| over faces.
double delta_ball_norm(const TruncatedGrid& g, const Field& v, double beta);

// ---------------------------------------------------------------------------
// Decay measurement

struct DecayReport {
  double sup_weighted = 0;
  double fitted_exponent = 0;       // of annulus sups of |v|
  double grad_fitted_exponent = 0;  // of annulus sups of r |Dv|
  std::vector<double> annulus_r, annulus_sup, annulus_grad_sup;
  bool all_zero = false;
  bool meets(double beta_config) const { return fitted_exponent >= beta_config - 0.1; }
};

DecayReport measure_decay(const TruncatedGrid& g, const Field& v, double beta_config,
                          double rmin = 1.0);

// Exponent fit over dyadic annuli for a point cloud of (radius, |value|).
std::pair<double, std::vector<std::array<double, 2>>> fit_decay(
    std::vector<std::pair<double, double>> samples, double rmin, int min_annuli = 3);

// ---------------------------------------------------------------------------
// Comparison principles and corner barriers

enum class CompareVariant { Boundary, Capped };  // thm-max1 / thm-max2 forms

struct CompareResult {
  bool holds = false;
  double interior_sup = 0, boundary_sup = 0;
};

// v, w on the whole index box; w > 0 required; the differential inequalities
// of the chosen variant are verified discretely before the conclusion.
CompareResult comparison_check(const TruncatedGrid& g, const CoeffFn& flux1,
                               const CoeffFn& flux2, const Field& v, const Field& w,
                               CompareVariant variant, double slack = 1e-8);

struct BarrierSpec {
  enum class Kind { Decay, Regularity } kind = Kind::Decay;
  double beta = 0.25, alpha = 0.6, tau = 0.1;
  std::array<std::array<double, 2>, 2> K{{{1, 0}, {0, 1}}};  // z = K zbar
};

// Evaluator of the barrier in transformed polar coordinates.
std::function<double(double, double)> corner_barrier(const BarrierSpec& spec);

}  // namespace wedge::ell
