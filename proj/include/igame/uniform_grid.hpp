#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "igame/geometry.hpp"

namespace igame {

/// Uniform bucket grid over a box for closed-ball range queries. Points
/// outside the box are bucketed into the nearest edge cell, so queries stay
/// exact for them too.
template <std::size_t N>
class UniformGrid {
 public:
  struct Entry {
    Point<N> p;
    SampleId id;
  };

  UniformGrid() = default;

  UniformGrid(const Box<N>& bounds, double cell_side, std::size_t max_cells = std::size_t{1} << 22)
      : bounds_(bounds) {
    // Enlarge the cell until the total cell count fits the budget.
    double side = cell_side > 0.0 ? cell_side : bounds.diameter();
    while (true) {
      std::size_t total = 1;
      for (std::size_t i = 0; i < N; ++i) {
        dims_[i] = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(bounds.extent(i) / side)));
        total *= dims_[i];
        if (total > max_cells) break;
      }
      if (total <= max_cells) break;
      side *= 1.5;
    }
    side_ = side;
    std::size_t stride = 1;
    for (std::size_t i = 0; i < N; ++i) {
      stride_[i] = stride;
      stride *= dims_[i];
    }
    cells_.assign(stride, {});
  }

  double cell_side() const { return side_; }
  bool initialized() const { return !cells_.empty(); }

  void insert(SampleId id, const Point<N>& p) { cells_[cell_of(p)].push_back({p, id}); }

  /// Calls f(entry) for every stored point with |p - c| <= r.
  template <class F>
  void for_each_in_ball(const Point<N>& c, double r, F&& f) const {
    std::array<std::size_t, N> lo, hi;
    for (std::size_t i = 0; i < N; ++i) {
      lo[i] = axis_index(i, c[i] - r);
      hi[i] = axis_index(i, c[i] + r);
    }
    const double r2 = r * r;
    std::array<std::size_t, N> k = lo;
    while (true) {
      std::size_t cell = 0;
      for (std::size_t i = 0; i < N; ++i) cell += k[i] * stride_[i];
      for (const Entry& e : cells_[cell])
        if (squared_distance(e.p, c) <= r2) f(e);
      std::size_t i = 0;
      while (i < N) {
        if (k[i] < hi[i]) {
          ++k[i];
          break;
        }
        k[i] = lo[i];
        ++i;
      }
      if (i == N) break;
    }
  }

 private:
  std::size_t axis_index(std::size_t i, double x) const {
    const double t = std::floor((x - bounds_.lo[i]) / side_);
    if (!(t > 0.0)) return 0;
    const auto k = static_cast<std::size_t>(std::min(t, static_cast<double>(dims_[i] - 1)));
    return k;
  }

  std::size_t cell_of(const Point<N>& p) const {
    std::size_t cell = 0;
    for (std::size_t i = 0; i < N; ++i) cell += axis_index(i, p[i]) * stride_[i];
    return cell;
  }

  Box<N> bounds_{};
  double side_ = 1.0;
  std::array<std::size_t, N> dims_{};
  std::array<std::size_t, N> stride_{};
  std::vector<std::vector<Entry>> cells_;
};

}  // namespace igame
