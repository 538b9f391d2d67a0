// Small numerical utilities: bracketed root solves, quadrature nodes,
// monotone cubic interpolation, least-squares exponent fits, C^2 bumps.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "wedge/error.hpp"

namespace wedge::num {

struct Vec2 {
  double x = 0, y = 0;
};

// Safeguarded Newton on [lo, hi]; f must change sign on the bracket.
// fdf returns f(x) and writes df(x). Converges to |f| ~ machine level.
double newton_bracketed(const std::function<double(double, double*)>& fdf, double lo, double hi,
                        double x0, double xtol, int max_iter = 100);

// Derivative-free Brent root on a sign-changing bracket.
double brent(const std::function<double(double)>& f, double lo, double hi, double xtol,
             int max_iter = 200);

// Golden-section maximizer on [lo, hi] for a unimodal function.
double golden_max(const std::function<double(double)>& f, double lo, double hi, double xtol);

// Gauss-Legendre nodes/weights on [0, 1].
struct Quadrature {
  std::vector<double> nodes, weights;
};
const Quadrature& gauss01(int npts);  // npts in {2..6}

// Composite Simpson on [a, b] with n (even) intervals.
double simpson(const std::function<double(double)>& f, double a, double b, int n);

// Monotone (Fritsch-Carlson) cubic interpolant of samples on an increasing x grid.
// Evaluates with constant extension outside the sample range.
class Pchip {
 public:
  Pchip() = default;
  Pchip(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;
  double deriv(double x) const;
  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& ys() const { return y_; }
  bool empty() const { return x_.empty(); }

 private:
  std::vector<double> x_, y_, d_;  // d_ = node derivatives
  std::size_t find(double x) const;
};

// Least-squares slope of y against x; returns (slope, intercept).
std::pair<double, double> linfit(const std::vector<double>& x, const std::vector<double>& y);

// Quintic smoothstep bridge: 1 for t <= 0, 0 for t >= 1, C^2 monotone in between.
double bridge10(double t);
double bridge10_d(double t);
double bridge10_dd(double t);

// C^2 bump shapes used for wedge and upstream perturbations.
struct Bump {
  enum class Kind { None, CompactPoly, Gaussian };
  Kind kind = Kind::None;
  double amplitude = 0, center = 0, width = 1;

  double value(double x) const;
  double deriv(double x) const;
  double second(double x) const;
  bool zero() const { return kind == Kind::None || amplitude == 0.0; }
};

}  // namespace wedge::num
