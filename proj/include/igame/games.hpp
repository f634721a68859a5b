#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string_view>

#include "igame/game.hpp"

namespace igame {

namespace detail {

// a . z <= b
struct HalfPlane {
  double a0, a1, b;
  bool holds(const Point<2>& z) const { return a0 * z[0] + a1 * z[1] <= b; }
  Point<2> project(const Point<2>& z) const {
    const double s = (a0 * z[0] + a1 * z[1] - b) / (a0 * a0 + a1 * a1);
    return {z[0] - s * a0, z[1] - s * a1};
  }
};

// Distance from z to the convex set {h1 holds} ∩ {h2 holds}; the two lines
// must not be parallel.
inline double distance_to_wedge(const Point<2>& z, const HalfPlane& h1, const HalfPlane& h2) {
  if (h1.holds(z) && h2.holds(z)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [on, other] : {std::pair{h1, h2}, std::pair{h2, h1}}) {
    const auto p = on.project(z);
    if (other.a0 * p[0] + other.a1 * p[1] <= other.b + 1e-12) best = std::min(best, distance(z, p));
  }
  const double det = h1.a0 * h2.a1 - h1.a1 * h2.a0;
  const Point<2> vertex{(h1.b * h2.a1 - h1.a1 * h2.b) / det, (h1.a0 * h2.b - h1.b * h2.a0) / det};
  return std::min(best, distance(z, vertex));
}

}  // namespace detail

/// Fence escape. State (x_p, x_e): pursuer and evader positions on opposite
/// sides of a fence spanning [0, 10]. The evader (angel) commands u_e, the
/// pursuer (demon) commands u_p, both bounded by 1 in magnitude.
inline GameDef<2> make_fence_escape() {
  constexpr double kFenceEnd = 10.0;
  constexpr double kBlock = 1.0;
  GameDef<2> g;
  g.id = "fence";
  g.domain = {{-2.0, -2.0}, {12.0, 12.0}};
  g.dynamics = [](const Point<2>&, std::span<const double> u, std::span<const double> w) {
    return Point<2>{w[0], u[0]};
  };
  g.angel_controls = ControlSpace::box({-1.0}, {1.0});
  g.demon_controls = ControlSpace::box({-1.0}, {1.0});
  g.angel_grid = {3};
  g.demon_grid = {3};
  g.in_free = [](const Point<2>&) { return true; };
  g.in_goal = [=](const Point<2>& s) {
    const double xp = s[0], xe = s[1];
    return (xe < 0.0 || xe > kFenceEnd) && std::abs(xe - xp) > kBlock;
  };
  g.goal_distance = [=](const Point<2>& s) {
    using detail::HalfPlane;
    // z = (x_p, x_e); four convex pieces of the closed goal set.
    const HalfPlane left{0.0, 1.0, 0.0};                // x_e <= 0
    const HalfPlane right{0.0, -1.0, -kFenceEnd};       // x_e >= 10
    const HalfPlane ahead{1.0, -1.0, -kBlock};          // x_e - x_p >= 1
    const HalfPlane behind{-1.0, 1.0, -kBlock};         // x_p - x_e >= 1
    return std::min({detail::distance_to_wedge(s, left, ahead),
                     detail::distance_to_wedge(s, left, behind),
                     detail::distance_to_wedge(s, right, ahead),
                     detail::distance_to_wedge(s, right, behind)});
  };
  g.speed_bound = std::sqrt(2.0);
  g.lipschitz = 0.0;
  return g;
}

struct ChauffeurParams {
  double omega = 5.0;      // pursuer turn-rate bound
  double v_e = 0.5;        // evader speed
  double v_p = 1.0;        // pursuer speed
  double r = 1.0;          // escape distance
  double r_p = 0.05;       // capture half-width (square pursuer)
  double half_width = 1.2; // domain box half-width
};

/// Homicidal chauffeur in pursuer-fixed coordinates q = (x, y). The pursuer
/// (angel) commands its turn rate, the evader (demon) its heading angle.
inline GameDef<2> make_homicidal_chauffeur(const ChauffeurParams& p = {}) {
  GameDef<2> g;
  g.id = "chauffeur";
  g.domain = {{-p.half_width, -p.half_width}, {p.half_width, p.half_width}};
  g.dynamics = [p](const Point<2>& q, std::span<const double> u, std::span<const double> w) {
    const double up = u[0], ue = w[0];
    return Point<2>{up * q[1] + p.v_e * std::cos(ue) - p.v_p, -up * q[0] - p.v_e * std::sin(ue)};
  };
  g.angel_controls = ControlSpace::box({-p.omega}, {p.omega});
  g.demon_controls = ControlSpace::box({0.0}, {2.0 * M_PI}, {true});
  g.angel_grid = {9};
  g.demon_grid = {16};
  g.in_goal = [p](const Point<2>& q) { return norm_inf(q) < p.r_p; };
  g.in_free = [p](const Point<2>& q) { return norm(q) <= p.r; };
  const Box<2> capture{{-p.r_p, -p.r_p}, {p.r_p, p.r_p}};
  g.goal_distance = [capture](const Point<2>& q) { return capture.distance_to(q); };
  // |u_p (y, -x)| + |v_e (cos, -sin)| + |v_p| over the domain box.
  g.speed_bound = p.omega * std::sqrt(2.0) * p.half_width + p.v_e + p.v_p;
  g.lipschitz = p.omega;
  return g;
}

/// Full 5-D chauffeur, state (x_p, y_p, theta, x_e, y_e). Constructible for
/// experimentation; the reduced 2-D form is what the benchmarks use.
inline GameDef<5> make_homicidal_chauffeur_5d(const ChauffeurParams& p = {},
                                              double arena_half_width = 2.0) {
  GameDef<5> g;
  g.id = "chauffeur5d";
  const double a = arena_half_width;
  g.domain = {{-a, -a, -M_PI, -a, -a}, {a, a, M_PI, a, a}};
  g.dynamics = [p](const Point<5>& s, std::span<const double> u, std::span<const double> w) {
    return Point<5>{p.v_p * std::cos(s[2]), p.v_p * std::sin(s[2]), u[0],
                    p.v_e * std::cos(w[0]), p.v_e * std::sin(w[0])};
  };
  g.angel_controls = ControlSpace::box({-p.omega}, {p.omega});
  g.demon_controls = ControlSpace::box({0.0}, {2.0 * M_PI}, {true});
  g.angel_grid = {9};
  g.demon_grid = {16};
  auto relative = [](const Point<5>& s) {
    const double dx = s[3] - s[0], dy = s[4] - s[1];
    const double c = std::cos(s[2]), sn = std::sin(s[2]);
    return Point<2>{c * dx + sn * dy, -sn * dx + c * dy};
  };
  g.in_goal = [p, relative](const Point<5>& s) { return norm_inf(relative(s)) < p.r_p; };
  g.in_free = [p, relative](const Point<5>& s) { return norm(relative(s)) <= p.r; };
  const Box<2> capture{{-p.r_p, -p.r_p}, {p.r_p, p.r_p}};
  // First-order lower bound: |dq| <= sqrt(2 + |q|^2) |ds|.
  g.goal_distance = [capture, relative](const Point<5>& s) {
    const auto q = relative(s);
    return capture.distance_to(q) / std::sqrt(2.0 + norm(q) * norm(q));
  };
  g.speed_bound = std::sqrt(p.v_p * p.v_p + p.omega * p.omega + p.v_e * p.v_e);
  g.lipschitz = p.v_p;
  return g;
}

/// One-dimensional toy: X = [0, 1], goal [0, goal_edge), f = u, trivial demon.
inline GameDef<1> make_line_game(ControlPool angel, double goal_edge = 0.1) {
  GameDef<1> g;
  g.id = "line";
  g.domain = {{0.0}, {1.0}};
  g.dynamics = [](const Point<1>&, std::span<const double> u, std::span<const double>) {
    return Point<1>{u[0]};
  };
  double speed = 0.0;
  for (std::size_t i = 0; i < angel.size(); ++i) speed = std::max(speed, std::abs(angel[i][0]));
  g.angel_controls = ControlSpace::finite(std::move(angel));
  ControlPool still(1);
  still.add({0.0});
  g.demon_controls = ControlSpace::finite(std::move(still));
  g.in_free = [](const Point<1>&) { return true; };
  g.in_goal = [goal_edge](const Point<1>& x) { return x[0] >= 0.0 && x[0] < goal_edge; };
  g.goal_distance = [goal_edge](const Point<1>& x) { return std::max(0.0, x[0] - goal_edge); };
  g.speed_bound = speed;
  g.lipschitz = 0.0;
  return g;
}

/// Built-in 2-D games by id ("fence", "chauffeur").
inline GameDef<2> make_game(std::string_view id) {
  if (id == "fence") return make_fence_escape();
  if (id == "chauffeur") return make_homicidal_chauffeur();
  throw std::invalid_argument("unknown game id: " + std::string(id));
}

}  // namespace igame
