#include "wedge/numerics.hpp"

#include <algorithm>
#include <array>
#include <cassert>

namespace wedge::num {

double newton_bracketed(const std::function<double(double, double*)>& fdf, double lo, double hi,
                        double x0, double xtol, int max_iter) {
  double df = 0;
  double flo = fdf(lo, &df);
  double fhi = fdf(hi, &df);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if (flo * fhi > 0) fail(Err::RootBracketFail, "no sign change on bracket");
  // keep lo the negative end
  if (flo > 0) std::swap(lo, hi);
  double x = std::clamp(x0, std::min(lo, hi), std::max(lo, hi));
  for (int it = 0; it < max_iter; ++it) {
    double f = fdf(x, &df);
    if (f == 0) return x;
    if (f < 0) lo = x; else hi = x;
    double step = (df != 0) ? -f / df : 0.0;
    double xn = x + step;
    bool inside = (xn > std::min(lo, hi)) && (xn < std::max(lo, hi));
    if (!inside || df == 0) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) <= xtol * (1.0 + std::abs(x))) {
      // one polishing evaluation keeps the bracket bookkeeping honest
      double fr = fdf(xn, &df);
      if (fr != 0 && df != 0) xn -= fr / df;
      return xn;
    }
    x = xn;
  }
  return x;
}

double brent(const std::function<double(double)>& f, double lo, double hi, double xtol,
             int max_iter) {
  double a = lo, b = hi, fa = f(a), fb = f(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if (fa * fb > 0) fail(Err::RootBracketFail, "brent: no sign change");
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * xtol;
    double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0) return b;
    if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
      d = m; e = m;
    } else {
      double s = fb / fa, p, q;
      if (a == c) {
        p = 2 * m * s;
        q = 1 - s;
      } else {
        double qq = fa / fc, r = fb / fc;
        p = s * (2 * m * qq * (qq - r) - (b - a) * (r - 1));
        q = (qq - 1) * (r - 1) * (s - 1);
      }
      if (p > 0) q = -q; else p = -p;
      if (2 * p < std::min(3 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d; d = p / q;
      } else {
        d = m; e = m;
      }
    }
    a = b; fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
    fb = f(b);
    if ((fb > 0) == (fc > 0)) {
      c = a; fc = fa; d = b - a; e = d;
    }
  }
  return b;
}

double golden_max(const std::function<double(double)>& f, double lo, double hi, double xtol) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
    if (f1 < f2) {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a); f2 = f(x2);
    } else {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a); f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

const Quadrature& gauss01(int npts) {
  static const auto make = [](std::vector<double> xm, std::vector<double> wm) {
    // map from [-1,1] to [0,1]
    Quadrature q;
    for (std::size_t i = 0; i < xm.size(); ++i) {
      q.nodes.push_back(0.5 * (xm[i] + 1.0));
      q.weights.push_back(0.5 * wm[i]);
    }
    return q;
  };
  static const Quadrature q2 = make({-0.5773502691896257, 0.5773502691896257}, {1.0, 1.0});
  static const Quadrature q3 =
      make({-0.7745966692414834, 0.0, 0.7745966692414834},
           {0.5555555555555556, 0.8888888888888888, 0.5555555555555556});
  static const Quadrature q4 = make({-0.8611363115940526, -0.3399810435848563,
                                     0.3399810435848563, 0.8611363115940526},
                                    {0.3478548451374538, 0.6521451548625461,
                                     0.6521451548625461, 0.3478548451374538});
  static const Quadrature q5 =
      make({-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
            0.9061798459386640},
           {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
            0.2369268850561891});
  static const Quadrature q6 =
      make({-0.9324695142031521, -0.6612093864662645, -0.2386191860831969, 0.2386191860831969,
            0.6612093864662645, 0.9324695142031521},
           {0.1713244923791704, 0.3607615730481386, 0.4679139345726910, 0.4679139345726910,
            0.3607615730481386, 0.1713244923791704});
  switch (npts) {
    case 2: return q2;
    case 3: return q3;
    case 4: return q4;
    case 5: return q5;
    default: return q6;
  }
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  if (n < 2) n = 2;
  double h = (b - a) / n, s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  assert(n == y_.size() && n >= 2);
  d_.assign(n, 0.0);
  std::vector<double> h(n - 1), del(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    del[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  // Fritsch-Carlson: weighted harmonic means where slopes agree in sign
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (del[i - 1] * del[i] <= 0) {
      d_[i] = 0;
    } else {
      double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
    }
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double d = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (d * d0 <= 0) d = 0;
    else if (d0 * d1 < 0 && std::abs(d) > 3 * std::abs(d0)) d = 3 * d0;
    return d;
  };
  if (n == 2) {
    d_[0] = d_[1] = del[0];
  } else {
    d_[0] = end_slope(h[0], h[1], del[0], del[1]);
    d_[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
  }
}

std::size_t Pchip::find(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = (it == x_.begin()) ? 0 : (it - x_.begin() - 1);
  return std::min(i, x_.size() - 2);
}

double Pchip::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  std::size_t i = find(x);
  double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
  double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double Pchip::deriv(double x) const {
  if (x <= x_.front() || x >= x_.back()) return 0.0;
  std::size_t i = find(x);
  double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
  double g00 = (6 * t * t - 6 * t) / h, g10 = 3 * t * t - 4 * t + 1;
  double g01 = (6 * t - 6 * t * t) / h, g11 = 3 * t * t - 2 * t;
  return g00 * y_[i] + g10 * d_[i] + g01 * y_[i + 1] + g11 * d_[i + 1];
}

std::pair<double, double> linfit(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  assert(n == y.size() && n >= 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  double slope = (n * sxy - sx * sy) / denom;
  return {slope, (sy - slope * sx) / n};
}

double bridge10(double t) {
  if (t <= 0) return 1.0;
  if (t >= 1) return 0.0;
  return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}
double bridge10_d(double t) {
  if (t <= 0 || t >= 1) return 0.0;
  return -30.0 * t * t * (1.0 - t) * (1.0 - t);
}
double bridge10_dd(double t) {
  if (t <= 0 || t >= 1) return 0.0;
  return -60.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
}

double Bump::value(double x) const {
  if (zero()) return 0.0;
  double t = (x - center) / width;
  if (kind == Kind::CompactPoly) {
    if (std::abs(t) >= 1) return 0.0;
    double s = 1 - t * t;
    return amplitude * s * s * s;
  }
  return amplitude * std::exp(-0.5 * t * t);
}

double Bump::deriv(double x) const {
  if (zero()) return 0.0;
  double t = (x - center) / width;
  if (kind == Kind::CompactPoly) {
    if (std::abs(t) >= 1) return 0.0;
    double s = 1 - t * t;
    return amplitude * (-6.0 * t * s * s) / width;
  }
  return -amplitude * t * std::exp(-0.5 * t * t) / width;
}

double Bump::second(double x) const {
  if (zero()) return 0.0;
  double t = (x - center) / width;
  if (kind == Kind::CompactPoly) {
    if (std::abs(t) >= 1) return 0.0;
    double s = 1 - t * t;
    return amplitude * (24.0 * t * t * s - 6.0 * s * s) / (width * width);
  }
  return amplitude * (t * t - 1.0) * std::exp(-0.5 * t * t) / (width * width);
}

}  // namespace wedge::num
