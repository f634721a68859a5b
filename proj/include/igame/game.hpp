#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "igame/controls.hpp"
#include "igame/geometry.hpp"

namespace igame {

/// A time-optimal approach-evasion game. The angel steers toward the goal
/// while staying in the free set; the demon opposes it.
template <std::size_t N>
struct GameDef {
  using State = Point<N>;
  using Dynamics =
      std::function<State(const State&, std::span<const double>, std::span<const double>)>;
  using Predicate = std::function<bool(const State&)>;

  std::string id;
  Box<N> domain;
  Dynamics dynamics;
  ControlSpace angel_controls;
  ControlSpace demon_controls;
  /// Default per-axis grid sizes when a pool is discretized on a fixed grid.
  std::vector<std::size_t> angel_grid;
  std::vector<std::size_t> demon_grid;
  Predicate in_free;
  Predicate in_goal;
  /// Euclidean distance to the closure of the goal set (0 inside). Used for
  /// membership in the goal neighborhood B(goal, r).
  std::function<double(const State&)> goal_distance;
  double speed_bound = 0.0;
  double lipschitz = 0.0;

  static constexpr std::size_t dim = N;

  void validate() const {
    if (domain.degenerate()) throw std::invalid_argument("GameDef: degenerate domain");
    if (!dynamics || !in_free || !in_goal || !goal_distance)
      throw std::invalid_argument("GameDef: missing callable");
    if (angel_controls.kind == ControlSpace::Kind::kFinite && angel_controls.points.empty())
      throw std::invalid_argument("GameDef: empty angel control set");
    if (demon_controls.kind == ControlSpace::Kind::kFinite && demon_controls.points.empty())
      throw std::invalid_argument("GameDef: empty demon control set");
    if (speed_bound < 0.0 || lipschitz < 0.0)
      throw std::invalid_argument("GameDef: negative constant");
  }

  ControlPool default_angel_pool() const { return angel_controls.grid(angel_grid); }
  ControlPool default_demon_pool() const { return demon_controls.grid(demon_grid); }

  /// Goal beats free-set violation when both hold.
  bool terminal(const State& x) const { return in_goal(x) || !in_free(x); }
};

}  // namespace igame
