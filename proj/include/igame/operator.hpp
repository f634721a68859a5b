#pragma once

#include <concepts>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>

#include "igame/game.hpp"
#include "igame/schedule.hpp"

namespace igame {

/// Anything that enumerates its points inside a closed ball: SampleCloud,
/// Lattice, or a test double.
template <class S, std::size_t N>
concept NeighborSource = requires(const S& s, const Point<N>& c) {
  { s.size() } -> std::convertible_to<std::size_t>;
  s.for_each_in_ball(c, 1.0, [](SampleId, const Point<N>&) {});
};

struct BallMin {
  SampleId id = kNoSample;
  double value = std::numeric_limits<double>::infinity();
  bool found() const { return id != kNoSample; }
};

/// Smallest value (lowest id on ties) among ids < limit inside B(c, r).
template <std::size_t N, NeighborSource<N> S>
BallMin ball_argmin(const S& source, const Point<N>& c, double r, std::span<const double> values,
                    std::size_t limit) {
  BallMin best;
  source.for_each_in_ball(c, r, [&](SampleId id, const Point<N>&) {
    if (id >= limit) return;
    const double v = values[id];
    if (v < best.value || (v == best.value && id < best.id)) {
      best.value = v;
      best.id = id;
    }
  });
  return best;
}

struct UpdateResult {
  double value = 1.0;
  std::uint32_t control = 0;  // index into the angel pool
  std::uint32_t demon = 0;    // index into the demon pool
  SampleId child = kNoSample; // minimizing neighbor for the saddle pair
};

/// One application of the discrete game operator at x:
///   1 - e^{-kappa} + e^{-kappa} max_w min_u min_{y in B(x + h f(x,u,w), dilation)} v(y).
/// An empty ball counts as value 1 for that (u, w). Ties: first w wins the
/// max; the min prefers the lowest neighbor id, then the lowest u index.
/// Demons whose running min already falls to the current max are pruned,
/// which does not change the result.
template <std::size_t N, NeighborSource<N> S>
UpdateResult value_update(const GameDef<N>& game, const Point<N>& x,
                          std::span<const double> snapshot, const Schedule& sched,
                          const ControlPool& angel, const ControlPool& demon, const S& source,
                          std::size_t limit) {
  if (angel.empty() || demon.empty()) throw std::domain_error("value_update: empty control pool");
  UpdateResult out;
  double best_outer = -std::numeric_limits<double>::infinity();
  for (std::uint32_t j = 0; j < demon.size(); ++j) {
    const auto w = demon[j];
    double inner = std::numeric_limits<double>::infinity();
    SampleId inner_id = kNoSample;
    std::uint32_t inner_u = 0;
    bool pruned = false;
    for (std::uint32_t i = 0; i < angel.size(); ++i) {
      const auto target = advance(x, sched.h, game.dynamics(x, angel[i], w));
      const BallMin hit = ball_argmin<N>(source, target, sched.dilation, snapshot, limit);
      const double v = hit.found() ? hit.value : 1.0;
      if (v < inner || (v == inner && hit.id < inner_id)) {
        inner = v;
        inner_id = hit.id;
        inner_u = i;
      }
      if (inner <= best_outer) {
        pruned = true;
        break;
      }
    }
    if (!pruned && inner > best_outer) {
      best_outer = inner;
      out.control = inner_u;
      out.demon = j;
      out.child = inner_id;
    }
  }
  const double m = std::min(1.0, std::max(0.0, best_outer));
  out.value = 1.0 - sched.discount() * (1.0 - m);
  return out;
}

template <std::size_t N, NeighborSource<N> S>
UpdateResult value_update(const GameDef<N>& game, const Point<N>& x,
                          std::span<const double> snapshot, const Schedule& sched,
                          const ControlPool& angel, const ControlPool& demon, const S& source) {
  return value_update(game, x, snapshot, sched, angel, demon, source, snapshot.size());
}

}  // namespace igame
