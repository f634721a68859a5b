#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "igame/geometry.hpp"

namespace igame {

/// The single seeded stream a run draws from. Consumption order per
/// iteration is fixed: state sample, then angel control, then demon control.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  template <std::size_t N>
  Point<N> point(const Box<N>& box) {
    Point<N> p;
    for (std::size_t i = 0; i < N; ++i) p[i] = uniform(box.lo[i], box.hi[i]);
    return p;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// k i.i.d. uniform states in `region`.
template <std::size_t N>
std::vector<Point<N>> sample_uniform(const Box<N>& region, std::size_t k, Rng& rng) {
  if (region.degenerate()) throw std::domain_error("sample_uniform: zero-volume region");
  if (k == 0) throw std::domain_error("sample_uniform: k must be >= 1");
  std::vector<Point<N>> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(rng.point(region));
  return out;
}

}  // namespace igame
