#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "igame/dispersion.hpp"
#include "igame/uniform_grid.hpp"

namespace igame {

struct CloudOptions {
  std::size_t probes_per_axis = 64;
};

/// The growing sample set S_n: points in insertion order (index == id), a
/// bucket index for ball queries and a running dispersion bound d_n.
template <std::size_t N>
class SampleCloud {
 public:
  using FreePredicate = std::function<bool(const Point<N>&)>;

  SampleCloud(const Box<N>& domain, const FreePredicate& in_free, CloudOptions opts = {})
      : domain_(domain), dispersion_(domain, opts.probes_per_axis, in_free) {
    if (domain.degenerate()) throw std::domain_error("SampleCloud: degenerate domain");
    grid_ = UniformGrid<N>(domain_, domain_.diameter() / 4.0);
  }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point<N>& point(SampleId id) const { return points_[id]; }
  const std::vector<Point<N>>& points() const { return points_; }
  const Box<N>& domain() const { return domain_; }

  /// Current dispersion upper bound (domain diameter when empty).
  double dispersion() const { return dispersion_.value(); }

  /// Appends y and returns its id; std::nullopt if y duplicates an existing
  /// sample exactly (the caller resamples).
  [[nodiscard]] std::optional<SampleId> insert(const Point<N>& y) {
    if (!domain_.contains(y)) throw std::domain_error("SampleCloud::insert: point outside domain");
    bool duplicate = false;
    grid_.for_each_in_ball(y, 0.0, [&](const auto&) { duplicate = true; });
    if (duplicate) return std::nullopt;
    const auto id = static_cast<SampleId>(points_.size());
    points_.push_back(y);
    grid_.insert(id, y);
    dispersion_.add(y);
    return id;
  }

  /// Rebuilds the bucket index when the query radius drifted by more than a
  /// factor of two from the cell side.
  void tune_index(double radius) {
    const double side = grid_.cell_side();
    if (radius > 0.0 && (radius < 0.5 * side || radius > 2.0 * side)) {
      grid_ = UniformGrid<N>(domain_, radius);
      for (SampleId id = 0; id < points_.size(); ++id) grid_.insert(id, points_[id]);
    }
  }

  /// f(id, point) for every sample with |p - c| <= r.
  template <class F>
  void for_each_in_ball(const Point<N>& c, double r, F&& f) const {
    grid_.for_each_in_ball(c, r, [&](const auto& e) { f(e.id, e.p); });
  }

  /// Ids within the closed ball, ascending.
  std::vector<SampleId> ball_query(const Point<N>& c, double r) const {
    if (!(r > 0.0)) throw std::domain_error("ball_query: radius must be > 0");
    std::vector<SampleId> ids;
    for_each_in_ball(c, r, [&](SampleId id, const Point<N>&) { ids.push_back(id); });
    std::sort(ids.begin(), ids.end());
    return ids;
  }

 private:
  Box<N> domain_;
  std::vector<Point<N>> points_;
  UniformGrid<N> grid_;
  ProbeDispersion<N> dispersion_;
};

}  // namespace igame
