#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "igame/random.hpp"

namespace igame {

/// A finite, ordered set of control vectors stored row-major.
class ControlPool {
 public:
  explicit ControlPool(std::size_t dim = 1) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
  bool empty() const { return data_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }

  void add(std::span<const double> u) {
    if (u.size() != dim_) throw std::invalid_argument("ControlPool::add: dimension mismatch");
    data_.insert(data_.end(), u.begin(), u.end());
  }
  void add(std::initializer_list<double> u) { add(std::span<const double>(u.begin(), u.size())); }

  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

/// Compact control set: an axis-aligned box (optionally periodic per axis)
/// or an explicit finite set.
struct ControlSpace {
  enum class Kind { kBox, kFinite };

  Kind kind = Kind::kBox;
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<bool> periodic;
  ControlPool points{1};

  static ControlSpace box(std::vector<double> lo, std::vector<double> hi,
                          std::vector<bool> periodic = {}) {
    if (lo.empty() || lo.size() != hi.size())
      throw std::invalid_argument("ControlSpace::box: bad bounds");
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (hi[i] < lo[i]) throw std::invalid_argument("ControlSpace::box: empty interval");
    if (periodic.empty()) periodic.assign(lo.size(), false);
    ControlSpace s;
    s.kind = Kind::kBox;
    s.lo = std::move(lo);
    s.hi = std::move(hi);
    s.periodic = std::move(periodic);
    s.points = ControlPool(s.lo.size());
    return s;
  }

  static ControlSpace finite(ControlPool pts) {
    if (pts.empty()) throw std::invalid_argument("ControlSpace::finite: empty set");
    ControlSpace s;
    s.kind = Kind::kFinite;
    s.points = std::move(pts);
    return s;
  }

  std::size_t dim() const { return kind == Kind::kBox ? lo.size() : points.dim(); }

  /// One uniform draw (uniform over the box, or uniform choice of a member).
  std::vector<double> sample(Rng& rng) const {
    if (kind == Kind::kFinite) {
      const auto u = points[rng.index(points.size())];
      return {u.begin(), u.end()};
    }
    std::vector<double> u(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i)
      u[i] = hi[i] > lo[i] ? rng.uniform(lo[i], hi[i]) : lo[i];
    return u;
  }

  /// Tensor grid with `counts[i]` values per axis. Closed axes include both
  /// endpoints; periodic axes drop the upper one. A finite set returns itself.
  ControlPool grid(const std::vector<std::size_t>& counts) const {
    if (kind == Kind::kFinite) return points;
    if (counts.size() != lo.size()) throw std::invalid_argument("ControlSpace::grid: bad counts");
    std::vector<std::vector<double>> axes(lo.size());
    for (std::size_t a = 0; a < lo.size(); ++a) {
      const std::size_t c = counts[a];
      if (c == 0) throw std::invalid_argument("ControlSpace::grid: zero count");
      for (std::size_t k = 0; k < c; ++k) {
        double t;
        if (periodic[a])
          t = static_cast<double>(k) / static_cast<double>(c);
        else
          t = c == 1 ? 0.5 : static_cast<double>(k) / static_cast<double>(c - 1);
        axes[a].push_back(lo[a] + t * (hi[a] - lo[a]));
      }
    }
    ControlPool pool(lo.size());
    std::vector<std::size_t> idx(lo.size(), 0);
    std::vector<double> u(lo.size());
    while (true) {
      for (std::size_t a = 0; a < lo.size(); ++a) u[a] = axes[a][idx[a]];
      pool.add(u);
      std::size_t a = 0;
      while (a < lo.size() && ++idx[a] == axes[a].size()) idx[a++] = 0;
      if (a == lo.size()) break;
    }
    return pool;
  }
};

}  // namespace igame
