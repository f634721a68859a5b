#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "igame/game.hpp"
#include "igame/kruzkov.hpp"
#include "igame/schedule.hpp"

namespace igame {

/// What a non-terminal state inside the goal neighborhood B(goal, M h + d)
/// holds. kTarget treats the neighborhood as reached (value 0).
/// kDistanceBound uses kruzkov(dist(x, goal) / M), the fastest conceivable
/// arrival; both vanish as the neighborhood shrinks.
enum class HaloRule { kTarget, kDistanceBound };

inline std::string to_string(HaloRule r) {
  return r == HaloRule::kTarget ? "target" : "distance_bound";
}
inline HaloRule halo_rule_from_string(const std::string& s) {
  if (s == "target") return HaloRule::kTarget;
  if (s == "distance_bound") return HaloRule::kDistanceBound;
  throw std::invalid_argument("unknown halo rule: " + s);
}

enum class NodeKind : std::uint8_t { kGoal, kBlocked, kHalo, kActive };

/// Parameters turning a dispersion into a Schedule. The speed and Lipschitz
/// constants default to the game's; overriding them changes only the
/// discretization, never the dynamics.
struct Discretization {
  double alpha_exp = 1.0;
  std::optional<double> speed_bound;
  std::optional<double> lipschitz;
  HaloRule halo_rule = HaloRule::kDistanceBound;

  template <std::size_t N>
  double speed(const GameDef<N>& g) const {
    return speed_bound.value_or(g.speed_bound);
  }
  template <std::size_t N>
  double lip(const GameDef<N>& g) const {
    return lipschitz.value_or(g.lipschitz);
  }

  template <std::size_t N>
  Schedule schedule(const GameDef<N>& g, double d) const {
    return make_schedule(d, alpha_exp, speed(g), lip(g));
  }

  template <std::size_t N>
  NodeKind classify(const GameDef<N>& g, const Point<N>& x, const Schedule& s) const {
    if (g.in_goal(x)) return NodeKind::kGoal;
    if (!g.in_free(x)) return NodeKind::kBlocked;
    if (g.goal_distance(x) <= s.goal_halo) return NodeKind::kHalo;
    return NodeKind::kActive;
  }

  /// Value held by a state of the given (non-active) kind.
  template <std::size_t N>
  double fixed_value(const GameDef<N>& g, const Point<N>& x, NodeKind kind) const {
    switch (kind) {
      case NodeKind::kGoal:
        return 0.0;
      case NodeKind::kBlocked:
        return 1.0;
      case NodeKind::kHalo: {
        if (halo_rule == HaloRule::kTarget) return 0.0;
        const double m = speed(g);
        return m > 0.0 ? kruzkov(g.goal_distance(x) / m) : 0.0;
      }
      case NodeKind::kActive:
        break;
    }
    throw std::logic_error("fixed_value: active state has no fixed value");
  }
};

}  // namespace igame
