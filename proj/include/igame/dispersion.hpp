#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "igame/geometry.hpp"

namespace igame {

/// Upper bound on the dispersion of a growing point set over the free part
/// of a box. Probes sit at the centers of a regular cell lattice; the bound
/// is the largest probe-to-nearest-sample distance plus half a cell diagonal,
/// which dominates the true covering radius of every point in a probe cell.
template <std::size_t N>
class ProbeDispersion {
 public:
  ProbeDispersion() = default;

  ProbeDispersion(const Box<N>& domain, std::size_t per_axis,
                  const std::function<bool(const Point<N>&)>& in_free)
      : domain_(domain), per_axis_(per_axis) {
    if (per_axis == 0) throw std::invalid_argument("ProbeDispersion: per_axis must be >= 1");
    double diag2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      cell_[i] = domain.extent(i) / static_cast<double>(per_axis);
      diag2 += cell_[i] * cell_[i];
    }
    half_diag_ = 0.5 * std::sqrt(diag2);
    bound_ = domain.diameter();

    std::size_t total = 1;
    for (std::size_t i = 0; i < N; ++i) total *= per_axis;
    probes_.resize(total);
    active_.assign(total, false);
    nearest_.assign(total, std::numeric_limits<double>::infinity());
    for (std::size_t lin = 0; lin < total; ++lin) {
      std::array<std::size_t, N> k;
      std::size_t rest = lin;
      for (std::size_t i = 0; i < N; ++i) {
        k[i] = rest % per_axis;
        rest /= per_axis;
      }
      Point<N> c;
      for (std::size_t i = 0; i < N; ++i)
        c[i] = domain.lo[i] + (static_cast<double>(k[i]) + 0.5) * cell_[i];
      probes_[lin] = c;
      bool free = !in_free || in_free(c);
      // A cell whose center is blocked still counts if any corner is free.
      for (std::size_t corner = 0; !free && corner < (std::size_t{1} << N); ++corner) {
        Point<N> q;
        for (std::size_t i = 0; i < N; ++i)
          q[i] = c[i] + ((corner >> i) & 1 ? 0.5 : -0.5) * cell_[i];
        free = in_free(q);
      }
      active_[lin] = free;
      if (free) ++active_count_;
    }
    if (active_count_ == 0) throw std::invalid_argument("ProbeDispersion: free set has no probes");
  }

  /// Current bound; the domain diameter before any sample arrives.
  double value() const { return bound_; }
  double half_cell_diagonal() const { return half_diag_; }
  std::size_t probe_count() const { return active_count_; }

  void add(const Point<N>& y) {
    const bool first = !std::isfinite(max_nearest_);
    bool touched_max = first;
    if (first) {
      for (std::size_t p = 0; p < probes_.size(); ++p)
        if (active_[p]) nearest_[p] = distance(probes_[p], y);
    } else {
      // Only probes closer to y than the current maximum can change.
      const double r = max_nearest_;
      std::array<std::size_t, N> lo, hi;
      for (std::size_t i = 0; i < N; ++i) {
        lo[i] = index_of(i, y[i] - r);
        hi[i] = index_of(i, y[i] + r);
      }
      std::array<std::size_t, N> k = lo;
      while (true) {
        std::size_t lin = 0, stride = 1;
        for (std::size_t i = 0; i < N; ++i) {
          lin += k[i] * stride;
          stride *= per_axis_;
        }
        if (active_[lin]) {
          const double dd = distance(probes_[lin], y);
          if (dd < nearest_[lin]) {
            if (nearest_[lin] == max_nearest_) touched_max = true;
            nearest_[lin] = dd;
          }
        }
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
    if (touched_max) {
      max_nearest_ = 0.0;
      for (std::size_t p = 0; p < probes_.size(); ++p)
        if (active_[p]) max_nearest_ = std::max(max_nearest_, nearest_[p]);
    }
    bound_ = std::min(bound_, max_nearest_ + half_diag_);
  }

 private:
  std::size_t index_of(std::size_t i, double x) const {
    const double t = std::floor((x - domain_.lo[i]) / cell_[i]);
    if (!(t > 0.0)) return 0;
    return static_cast<std::size_t>(std::min(t, static_cast<double>(per_axis_ - 1)));
  }

  Box<N> domain_{};
  std::size_t per_axis_ = 0;
  Point<N> cell_{};
  double half_diag_ = 0.0;
  double bound_ = 0.0;
  double max_nearest_ = std::numeric_limits<double>::infinity();
  std::vector<Point<N>> probes_;
  std::vector<bool> active_;
  std::vector<double> nearest_;
  std::size_t active_count_ = 0;
};

/// Lower and upper dispersion envelopes of a uniform sampling stream:
/// (d_s * n^{-1/N}, D_s * (log n / n)^{1/N}).
inline std::pair<double, double> dispersion_bounds(double n, std::size_t dim, double upper_const,
                                                   double lower_const) {
  if (!(n >= 2.0)) throw std::domain_error("dispersion_bounds: n must be >= 2");
  if (dim == 0) throw std::domain_error("dispersion_bounds: dim must be >= 1");
  const double inv = 1.0 / static_cast<double>(dim);
  return {lower_const * std::pow(1.0 / n, inv), upper_const * std::pow(std::log(n) / n, inv)};
}

/// Upper constant D_s giving gamma = C_N D_s^N / mu(free).
inline double upper_constant_for_gamma(double gamma, std::size_t dim, double free_measure) {
  return std::pow(gamma * free_measure / unit_ball_volume(dim), 1.0 / static_cast<double>(dim));
}

}  // namespace igame
