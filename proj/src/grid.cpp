#include "wedge/grid.hpp"

#include <cmath>

namespace wedge::grid {

namespace {

// Node coordinates on [0, L]: uniform, or geometric steps h_{m+1} = r h_m
// clustering toward 0.
std::vector<double> coords(double L, int n, Grading grading, double ratio) {
  std::vector<double> x(n + 1);
  if (grading == Grading::Uniform || ratio == 1.0) {
    for (int i = 0; i <= n; ++i) x[i] = L * double(i) / n;
    return x;
  }
  double h0 = L * (ratio - 1.0) / (std::pow(ratio, n) - 1.0);
  x[0] = 0.0;
  double h = h0;
  for (int i = 1; i <= n; ++i) {
    x[i] = x[i - 1] + h;
    h *= ratio;
  }
  x[n] = L;  // pin the endpoint against accumulation error
  return x;
}

}  // namespace

TruncatedGrid::TruncatedGrid(const GridSpec& spec) : spec_(spec) {
  if (!(spec.R > 0) || !(spec.cutoff_slope_k > 0) || spec.n1 < 4 || spec.n2 < 4)
    fail(Err::PreconditionViolated, "grid requires R > 0, k > 0, n1, n2 >= 4");
  if (spec.grading == Grading::Graded && (spec.ratio < 1.0 || spec.ratio > 1.2))
    fail(Err::PreconditionViolated, "grading ratio must lie in [1, 1.2]");
  z1_ = coords(spec.R, spec.n1, spec.grading, spec.ratio);
  z2_ = coords(spec.cutoff_slope_k * spec.R, spec.n2, spec.grading, spec.ratio);

  stride_ = spec.n2 + 1;
  unknown_index_.assign(std::size_t(spec.n1 + 1) * stride_, -1);
  for (int i = 0; i <= spec_.n1; ++i) {
    for (int j = 0; j <= spec_.n2 && inside(i, j); ++j) {
      Tag t = tag(i, j);
      if (t == Tag::Interior || t == Tag::Shock) {
        unknown_index_[std::size_t(i) * stride_ + j] = n_unknowns_++;
        unknown_nodes_.emplace_back(i, j);
      }
    }
  }
}

Tag TruncatedGrid::tag(int i, int j) const {
  if (!inside(i, j)) return Tag::Outside;
  if (j == 0) return Tag::Wedge;
  if (!inside(i + 1, j) || !inside(i, j + 1)) return Tag::Cutoff;
  if (i == 0) return Tag::Shock;
  return Tag::Interior;
}

int TruncatedGrid::unknown_index(int i, int j) const {
  if (i < 0 || j < 0 || i > spec_.n1 || j > spec_.n2) return -1;
  return unknown_index_[std::size_t(i) * stride_ + j];
}

}  // namespace wedge::grid
