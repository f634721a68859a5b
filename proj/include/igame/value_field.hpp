#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "igame/multigrid.hpp"
#include "igame/schedule.hpp"
#include "igame/solver.hpp"
#include "igame/uniform_grid.hpp"

namespace igame {

/// Read-only value function over a point set, queried by ball-min.
template <std::size_t N>
class ValueField {
 public:
  virtual ~ValueField() = default;

  /// Smallest value among stored points in B(c, r); nullopt if none.
  virtual std::optional<double> ball_min(const Point<N>& c, double r) const = 0;
  /// Value at the stored point closest to c.
  virtual double nearest(const Point<N>& c) const = 0;
  virtual const Schedule& schedule() const = 0;

  /// Ball-min over the field's own dispersion radius, nearest point if the
  /// ball is empty.
  double evaluate(const Point<N>& x) const {
    const auto v = ball_min(x, schedule().d);
    return v ? *v : nearest(x);
  }
};

template <std::size_t N>
class GridField final : public ValueField<N> {
 public:
  explicit GridField(GridSolution<N> sol) : sol_(std::move(sol)) {}

  std::optional<double> ball_min(const Point<N>& c, double r) const override {
    const BallMin m = ball_argmin<N>(sol_.lattice, c, r, std::span<const double>(sol_.values),
                                     sol_.values.size());
    if (!m.found()) return std::nullopt;
    return m.value;
  }
  double nearest(const Point<N>& c) const override {
    const auto& lat = sol_.lattice;
    std::size_t id = 0, stride = 1;
    for (std::size_t i = 0; i < N; ++i) {
      const double t = std::round((c[i] - lat.box().lo[i]) / lat.spacing()[i]);
      id += static_cast<std::size_t>(std::clamp(t, 0.0, static_cast<double>(lat.counts()[i] - 1))) * stride;
      stride *= lat.counts()[i];
    }
    return sol_.values[id];
  }
  const Schedule& schedule() const override { return sol_.schedule; }
  const GridSolution<N>& solution() const { return sol_; }

 private:
  GridSolution<N> sol_;
};

/// Scattered samples with values, e.g. one solver checkpoint.
template <std::size_t N>
class CloudField final : public ValueField<N> {
 public:
  CloudField(const Box<N>& domain, std::vector<Point<N>> pts, std::vector<double> vals, Schedule sched)
      : pts_(std::move(pts)), vals_(std::move(vals)), sched_(sched) {
    if (pts_.size() != vals_.size()) throw std::invalid_argument("CloudField: size mismatch");
    if (pts_.empty()) throw std::invalid_argument("CloudField: no samples");
    const double side = std::max(sched_.d, domain.diameter() / 4096.0);
    index_ = UniformGrid<N>(domain, side);
    for (SampleId i = 0; i < pts_.size(); ++i) index_.insert(i, pts_[i]);
  }

  std::optional<double> ball_min(const Point<N>& c, double r) const override {
    double best = std::numeric_limits<double>::infinity();
    SampleId best_id = kNoSample;
    index_.for_each_in_ball(c, r, [&](const auto& e) {
      const double v = vals_[e.id];
      if (v < best || (v == best && e.id < best_id)) {
        best = v;
        best_id = e.id;
      }
    });
    if (best_id == kNoSample) return std::nullopt;
    return best;
  }

  double nearest(const Point<N>& c) const override {
    for (double r = std::max(sched_.d, 1e-9);; r *= 2.0) {
      double best = std::numeric_limits<double>::infinity();
      SampleId best_id = kNoSample;
      index_.for_each_in_ball(c, r, [&](const auto& e) {
        const double d2 = squared_distance(e.p, c);
        if (d2 < best || (d2 == best && e.id < best_id)) {
          best = d2;
          best_id = e.id;
        }
      });
      if (best_id != kNoSample) return vals_[best_id];
    }
  }

  const Schedule& schedule() const override { return sched_; }
  const std::vector<Point<N>>& points() const { return pts_; }
  const std::vector<double>& values() const { return vals_; }

 private:
  std::vector<Point<N>> pts_;
  std::vector<double> vals_;
  Schedule sched_;
  UniformGrid<N> index_;
};

/// Field of one checkpoint: the first cp.n samples of the trace.
template <std::size_t N>
std::shared_ptr<const CloudField<N>> checkpoint_field(const Box<N>& domain, const SolutionTrace<N>& trace,
                                                      const Checkpoint& cp) {
  if (cp.n > trace.samples.size()) throw std::out_of_range("checkpoint_field: trace too short");
  std::vector<Point<N>> pts(trace.samples.begin(), trace.samples.begin() + static_cast<std::ptrdiff_t>(cp.n));
  return std::make_shared<const CloudField<N>>(domain, std::move(pts), cp.values, cp.schedule);
}

}  // namespace igame
