#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "igame/kruzkov.hpp"
#include "igame/lattice.hpp"
#include "igame/parallel.hpp"
#include "igame/value_field.hpp"

namespace igame {

enum class Role { kAngel, kDemon };

/// Feedback policy: a one-step min-max lookahead on a value field.
template <std::size_t N>
struct Policy {
  std::shared_ptr<const ValueField<N>> field;
  ControlPool angel_pool{1};
  ControlPool demon_pool{1};
  Role role = Role::kAngel;

  void validate() const {
    if (!field) throw std::invalid_argument("Policy: no value field");
    if (angel_pool.empty() || demon_pool.empty()) throw std::invalid_argument("Policy: empty control pool");
  }
};

/// Index into the acting player's pool. The angel takes
/// argmin_u max_w v(x + h f(x,u,w)), the demon argmax_w min_u; values are
/// ball-min reads over the schedule's dilation, 1 if the ball is empty.
/// Ties go to the lowest index.
template <std::size_t N>
std::uint32_t policy_action(const GameDef<N>& game, const Policy<N>& pol, const Point<N>& x,
                            const Schedule& sched) {
  pol.validate();
  const auto look = [&](std::uint32_t i, std::uint32_t j) {
    const auto y = advance(x, sched.h, game.dynamics(x, pol.angel_pool[i], pol.demon_pool[j]));
    const auto v = pol.field->ball_min(y, sched.dilation);
    return v ? *v : 1.0;
  };
  const auto nu = static_cast<std::uint32_t>(pol.angel_pool.size());
  const auto nw = static_cast<std::uint32_t>(pol.demon_pool.size());
  std::uint32_t best = 0;
  if (pol.role == Role::kAngel) {
    double best_v = std::numeric_limits<double>::infinity();
    for (std::uint32_t i = 0; i < nu; ++i) {
      double worst = -std::numeric_limits<double>::infinity();
      for (std::uint32_t j = 0; j < nw && worst < best_v; ++j) worst = std::max(worst, look(i, j));
      if (worst < best_v) {
        best_v = worst;
        best = i;
      }
    }
  } else {
    double best_v = -std::numeric_limits<double>::infinity();
    for (std::uint32_t j = 0; j < nw; ++j) {
      double least = std::numeric_limits<double>::infinity();
      for (std::uint32_t i = 0; i < nu && least > best_v; ++i) least = std::min(least, look(i, j));
      if (least > best_v) {
        best_v = least;
        best = j;
      }
    }
  }
  return best;
}

template <std::size_t N>
std::uint32_t policy_action(const GameDef<N>& game, const Policy<N>& pol, const Point<N>& x) {
  return policy_action(game, pol, x, pol.field->schedule());
}

enum class OutcomeKind : std::uint8_t { kCapture, kEscape, kTimeout };

inline std::string to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::kCapture:
      return "capture";
    case OutcomeKind::kEscape:
      return "escape";
    case OutcomeKind::kTimeout:
      return "timeout";
  }
  return "?";
}

template <std::size_t N>
struct SimOutcome {
  OutcomeKind kind = OutcomeKind::kTimeout;
  double time = 0.0;
  std::vector<Point<N>> trajectory;  // filled only on request
};

/// Forward-Euler closed-loop rollout with controls held over each dt.
/// The goal is tested before the free set at every state, start included.
template <std::size_t N>
SimOutcome<N> simulate(const GameDef<N>& game, const Policy<N>& angel, const Policy<N>& demon,
                       Point<N> x, double dt, double t_max, bool record = false) {
  if (!(dt > 0.0) || !(t_max > 0.0)) throw std::domain_error("simulate: dt and t_max must be > 0");
  SimOutcome<N> out;
  const auto terminal = [&](double t) {
    if (record) out.trajectory.push_back(x);
    if (game.in_goal(x)) {
      out.kind = OutcomeKind::kCapture;
    } else if (!game.in_free(x)) {
      out.kind = OutcomeKind::kEscape;
    } else {
      return false;
    }
    out.time = t;
    return true;
  };
  if (terminal(0.0)) return out;
  const auto steps = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
  for (std::size_t k = 1; k <= steps; ++k) {
    const auto u = angel.angel_pool[policy_action(game, angel, x)];
    const auto w = demon.demon_pool[policy_action(game, demon, x)];
    const double step = std::min(dt, t_max - static_cast<double>(k - 1) * dt);
    x = advance(x, step, game.dynamics(x, u, w));
    if (terminal(k == steps ? t_max : static_cast<double>(k) * dt)) return out;
  }
  out.kind = OutcomeKind::kTimeout;
  out.time = t_max;
  return out;
}

/// Per-start time limit: factor times the estimated capture time read from
/// a reference field, or the cap when that estimate is infinite.
template <std::size_t N>
struct TimeLimit {
  std::shared_ptr<const ValueField<N>> reference;  // none: always the cap
  double factor = 10.0;
  double cap = 20.0;

  double operator()(const Point<N>& x0) const {
    if (!reference) return cap;
    const double v = reference->evaluate(x0);
    const double t = v < 1.0 ? kruzkov_inverse(v) : std::numeric_limits<double>::infinity();
    if (!std::isfinite(t)) return cap;
    return std::clamp(factor * t, 1e-9, cap);
  }
};

template <std::size_t N>
struct OutcomeMap {
  Lattice<N> starts;
  std::vector<OutcomeKind> kinds;
  std::vector<double> times;
  std::size_t captures = 0;
  std::size_t escapes = 0;
  std::size_t timeouts = 0;
};

template <std::size_t N>
OutcomeMap<N> outcome_map(const GameDef<N>& game, const Policy<N>& angel, const Policy<N>& demon,
                          const Lattice<N>& starts, double dt, const TimeLimit<N>& limit,
                          unsigned threads = 1) {
  if (starts.size() == 0) throw std::domain_error("outcome_map: empty lattice");
  OutcomeMap<N> out;
  out.starts = starts;
  out.kinds.resize(starts.size());
  out.times.resize(starts.size());
  parallel_for(starts.size(), threads, [&](std::size_t i) {
    const auto x0 = starts.point(static_cast<SampleId>(i));
    const auto r = simulate(game, angel, demon, x0, dt, limit(x0));
    out.kinds[i] = r.kind;
    out.times[i] = r.time;
  });
  for (auto k : out.kinds) {
    out.captures += k == OutcomeKind::kCapture;
    out.escapes += k == OutcomeKind::kEscape;
    out.timeouts += k == OutcomeKind::kTimeout;
  }
  return out;
}

}  // namespace igame
