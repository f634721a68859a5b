#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "igame/geometry.hpp"

namespace igame {

/// Regular node lattice over a box, endpoints included, axis 0 fastest.
template <std::size_t N>
class Lattice {
 public:
  using Shape = std::array<std::size_t, N>;

  Lattice() = default;

  Lattice(const Box<N>& box, const Shape& counts) : box_(box), counts_(counts) {
    if (box.degenerate()) throw std::domain_error("Lattice: degenerate box");
    double diag2 = 0.0;
    std::size_t stride = 1;
    for (std::size_t i = 0; i < N; ++i) {
      if (counts[i] < 2) throw std::domain_error("Lattice: need >= 2 nodes per axis");
      spacing_[i] = box.extent(i) / static_cast<double>(counts[i] - 1);
      diag2 += spacing_[i] * spacing_[i];
      stride_[i] = stride;
      stride *= counts[i];
    }
    size_ = stride;
    half_diag_ = 0.5 * std::sqrt(diag2);
  }

  std::size_t size() const { return size_; }
  const Shape& counts() const { return counts_; }
  const Box<N>& box() const { return box_; }
  const Point<N>& spacing() const { return spacing_; }

  /// Covering radius of the lattice: half a cell diagonal.
  double half_diagonal() const { return half_diag_; }

  Shape multi_index(SampleId id) const {
    Shape k;
    std::size_t rest = id;
    for (std::size_t i = 0; i < N; ++i) {
      k[i] = rest % counts_[i];
      rest /= counts_[i];
    }
    return k;
  }

  Point<N> point(SampleId id) const {
    const auto k = multi_index(id);
    Point<N> p;
    for (std::size_t i = 0; i < N; ++i) p[i] = box_.lo[i] + static_cast<double>(k[i]) * spacing_[i];
    return p;
  }

  template <class F>
  void for_each_in_ball(const Point<N>& c, double r, F&& f) const {
    Shape lo, hi;
    for (std::size_t i = 0; i < N; ++i) {
      // Widened by a hair; the exact distance test below decides membership.
      const double a = std::ceil((c[i] - r - box_.lo[i]) / spacing_[i] - 1e-9);
      const double b = std::floor((c[i] + r - box_.lo[i]) / spacing_[i] + 1e-9);
      const double top = static_cast<double>(counts_[i] - 1);
      if (b < 0.0 || a > top) return;
      lo[i] = a > 0.0 ? static_cast<std::size_t>(a) : 0;
      hi[i] = static_cast<std::size_t>(std::min(b, top));
      if (lo[i] > hi[i]) return;
    }
    const double r2 = r * r;
    Shape k = lo;
    while (true) {
      std::size_t id = 0;
      Point<N> p;
      for (std::size_t i = 0; i < N; ++i) {
        id += k[i] * stride_[i];
        p[i] = box_.lo[i] + static_cast<double>(k[i]) * spacing_[i];
      }
      if (squared_distance(p, c) <= r2) f(static_cast<SampleId>(id), p);
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
  Box<N> box_{};
  Shape counts_{};
  Point<N> spacing_{};
  Shape stride_{};
  std::size_t size_ = 0;
  double half_diag_ = 0.0;
};

}  // namespace igame
