#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace igame {

template <std::size_t N>
using Point = std::array<double, N>;

using SampleId = std::uint32_t;
inline constexpr SampleId kNoSample = std::numeric_limits<SampleId>::max();

template <std::size_t N>
inline double squared_distance(const Point<N>& a, const Point<N>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

template <std::size_t N>
inline double distance(const Point<N>& a, const Point<N>& b) {
  return std::sqrt(squared_distance(a, b));
}

template <std::size_t N>
inline double norm(const Point<N>& a) {
  double s = 0.0;
  for (double c : a) s += c * c;
  return std::sqrt(s);
}

template <std::size_t N>
inline double norm_inf(const Point<N>& a) {
  double s = 0.0;
  for (double c : a) s = std::max(s, std::abs(c));
  return s;
}

/// x + t * v
template <std::size_t N>
inline Point<N> advance(const Point<N>& x, double t, const Point<N>& v) {
  Point<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = x[i] + t * v[i];
  return r;
}

/// Axis-aligned box [lo, hi].
template <std::size_t N>
struct Box {
  Point<N> lo{};
  Point<N> hi{};

  double extent(std::size_t axis) const { return hi[axis] - lo[axis]; }

  bool degenerate() const {
    for (std::size_t i = 0; i < N; ++i)
      if (!(hi[i] > lo[i])) return true;
    return false;
  }

  bool contains(const Point<N>& p) const {
    for (std::size_t i = 0; i < N; ++i)
      if (p[i] < lo[i] || p[i] > hi[i]) return false;
    return true;
  }

  double diameter() const { return distance(lo, hi); }

  double volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < N; ++i) v *= extent(i);
    return v;
  }

  /// Euclidean distance from p to the box (0 inside).
  double distance_to(const Point<N>& p) const {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double t = std::max({lo[i] - p[i], 0.0, p[i] - hi[i]});
      s += t * t;
    }
    return std::sqrt(s);
  }
};

/// Volume of the unit ball in R^n.
inline double unit_ball_volume(std::size_t n) {
  const double half = static_cast<double>(n) / 2.0;
  return std::pow(M_PI, half) / std::tgamma(half + 1.0);
}

}  // namespace igame
