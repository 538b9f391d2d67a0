// Truncated triangular grid on Q^R = {z1 > 0, 0 < z2 < k (R - z1)} with
// optional geometric grading toward the corner. Node (i, j) belongs to the
// grid iff i*n2 + j*n1 <= n1*n2 (exact integer test); the diagonal index line
// carries the cutoff boundary.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wedge/error.hpp"

namespace wedge::grid {

enum class Tag : std::uint8_t { Interior, Wedge, Shock, Cutoff, Outside };

enum class Grading { Uniform, Graded };

struct GridSpec {
  double R = 64.0;
  double cutoff_slope_k = 1.0;
  int n1 = 128, n2 = 128;
  Grading grading = Grading::Uniform;
  double ratio = 1.1;  // geometric step ratio for Graded, in [1, 1.2]
};

class TruncatedGrid {
 public:
  explicit TruncatedGrid(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  int n1() const { return spec_.n1; }
  int n2() const { return spec_.n2; }
  double z1(int i) const { return z1_[i]; }
  double z2(int j) const { return z2_[j]; }

  bool inside(int i, int j) const {
    if (i < 0 || j < 0 || i > spec_.n1 || j > spec_.n2) return false;
    return std::int64_t(i) * spec_.n2 + std::int64_t(j) * spec_.n1 <=
           std::int64_t(spec_.n1) * spec_.n2;
  }
  Tag tag(int i, int j) const;

  // unknown numbering over Interior + Shock nodes (the equation rows)
  int unknown_index(int i, int j) const;  // -1 if not an unknown
  int n_unknowns() const { return n_unknowns_; }
  std::pair<int, int> unknown_node(int u) const { return unknown_nodes_[u]; }

  // all nodes of the closed triangle, row-major over the index set
  template <class F>
  void for_each_node(F&& f) const {
    for (int i = 0; i <= spec_.n1; ++i)
      for (int j = 0; j <= spec_.n2 && inside(i, j); ++j) f(i, j);
  }

 private:
  GridSpec spec_;
  std::vector<double> z1_, z2_;
  std::vector<int> unknown_index_;
  std::vector<std::pair<int, int>> unknown_nodes_;
  int n_unknowns_ = 0;
  int stride_ = 0;
};

// Grid function storage over the full (n1+1) x (n2+1) index box; entries
// outside the triangle hold boundary-extension data.
class Field {
 public:
  Field() = default;
  explicit Field(const TruncatedGrid& g)
      : n1_(g.n1()), n2_(g.n2()), v_((g.n1() + 1) * (g.n2() + 1), 0.0) {}
  double& operator()(int i, int j) { return v_[std::size_t(i) * (n2_ + 1) + j]; }
  double operator()(int i, int j) const { return v_[std::size_t(i) * (n2_ + 1) + j]; }
  int n1() const { return n1_; }
  int n2() const { return n2_; }
  std::vector<double>& raw() { return v_; }
  const std::vector<double>& raw() const { return v_; }

 private:
  int n1_ = 0, n2_ = 0;
  std::vector<double> v_;
};

}  // namespace wedge::grid
