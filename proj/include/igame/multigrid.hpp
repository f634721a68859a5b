#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "igame/discretization.hpp"
#include "igame/lattice.hpp"
#include "igame/operator.hpp"
#include "igame/parallel.hpp"

namespace igame {

/// Converged value function on a regular lattice.
template <std::size_t N>
struct GridSolution {
  Lattice<N> lattice;
  std::vector<double> values;
  Schedule schedule;  // d is the lattice half cell diagonal
  Discretization disc;
  ControlPool angel_pool{1};
  ControlPool demon_pool{1};
  double tol = 0.0;
  std::size_t sweeps = 0;
  double wall_ms = 0.0;
  std::vector<double> residuals;  // sup-norm change per sweep
};

struct GridOptions {
  Discretization disc;
  double initial_value = 1.0;
  std::size_t max_sweeps = 1000000;
  unsigned threads = 1;
};

/// Sup-distance to the fixed point certified by a final sweep change of
/// `residual` under contraction factor e^{-kappa}.
inline double fixed_point_bound(double residual, double kappa) {
  const double q = std::exp(-kappa);
  return residual * q / (1.0 - q);
}

namespace detail {

template <std::size_t N>
void fill_fixed_nodes(const GameDef<N>& game, const Lattice<N>& lat, const Discretization& disc,
                      const Schedule& sched, std::vector<NodeKind>& kinds, std::vector<double>& v) {
  kinds.resize(lat.size());
  for (SampleId id = 0; id < lat.size(); ++id) {
    const auto p = lat.point(id);
    kinds[id] = disc.classify(game, p, sched);
    if (kinds[id] != NodeKind::kActive) v[id] = disc.fixed_value(game, p, kinds[id]);
  }
}

template <std::size_t N>
void iterate_to_tolerance(const GameDef<N>& game, GridSolution<N>& sol, const std::vector<NodeKind>& kinds,
                          const GridOptions& opts) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const auto& lat = sol.lattice;
  std::vector<double> next = sol.values;
  while (sol.sweeps < opts.max_sweeps) {
    std::vector<double> change(lat.size(), 0.0);
    parallel_for(lat.size(), opts.threads, [&](std::size_t i) {
      if (kinds[i] != NodeKind::kActive) return;
      const auto r = value_update(game, lat.point(static_cast<SampleId>(i)),
                                  std::span<const double>(sol.values), sol.schedule, sol.angel_pool,
                                  sol.demon_pool, lat);
      next[i] = r.value;
      change[i] = std::abs(r.value - sol.values[i]);
    });
    double residual = 0.0;
    for (double c : change) residual = std::max(residual, c);
    sol.values.swap(next);
    next = sol.values;
    sol.residuals.push_back(residual);
    ++sol.sweeps;
    if (residual <= sol.tol) break;
  }
  sol.wall_ms += std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace detail

/// Fixed-point solve of the game operator on a regular lattice, with the
/// lattice as the sample set and d = half cell diagonal. Jacobi sweeps until
/// the sup-norm change drops to `tol`. `initial` overrides the constant
/// starting value on active nodes.
template <std::size_t N>
GridSolution<N> solve_fixed_grid(const GameDef<N>& game, const typename Lattice<N>::Shape& shape,
                                 double tol, const ControlPool& angel, const ControlPool& demon,
                                 const GridOptions& opts = {},
                                 const std::vector<double>* initial = nullptr) {
  if (!(tol > 0.0)) throw std::domain_error("solve_fixed_grid: tol must be > 0");
  GridSolution<N> sol;
  sol.lattice = Lattice<N>(game.domain, shape);
  sol.disc = opts.disc;
  sol.schedule = opts.disc.schedule(game, sol.lattice.half_diagonal());
  sol.angel_pool = angel;
  sol.demon_pool = demon;
  sol.tol = tol;
  if (initial) {
    if (initial->size() != sol.lattice.size())
      throw std::invalid_argument("solve_fixed_grid: initial vector size mismatch");
    sol.values = *initial;
  } else {
    sol.values.assign(sol.lattice.size(), opts.initial_value);
  }
  std::vector<NodeKind> kinds;
  detail::fill_fixed_nodes(game, sol.lattice, opts.disc, sol.schedule, kinds, sol.values);
  detail::iterate_to_tolerance(game, sol, kinds, opts);
  return sol;
}

/// Ball-min read of a lattice solution at x over its own covering radius;
/// nearest node if the ball is empty (x outside the lattice box).
template <std::size_t N>
double evaluate(const GridSolution<N>& sol, const Point<N>& x) {
  const BallMin m = ball_argmin<N>(sol.lattice, x, sol.schedule.d,
                                   std::span<const double>(sol.values), sol.values.size());
  if (m.found()) return m.value;
  const auto& lat = sol.lattice;
  std::size_t id = 0, stride = 1;
  for (std::size_t i = 0; i < N; ++i) {
    const double t = std::round((x[i] - lat.box().lo[i]) / lat.spacing()[i]);
    const double top = static_cast<double>(lat.counts()[i] - 1);
    id += static_cast<std::size_t>(std::clamp(t, 0.0, top)) * stride;
    stride *= lat.counts()[i];
  }
  return sol.values[id];
}

template <std::size_t N>
struct MultigridLevel {
  typename Lattice<N>::Shape shape{};
  std::size_t sweeps = 0;
  double wall_ms = 0.0;  // cumulative, including prolongation
  GridSolution<N> solution;
};

template <std::size_t N>
struct MultigridResult {
  GridSolution<N> solution;  // finest level
  std::vector<MultigridLevel<N>> levels;
};

/// Coarse-to-fine successive approximation: each level is solved to `tol`,
/// then its values are carried to the next lattice by ball-min
/// interpolation over the coarse dilation radius.
template <std::size_t N>
MultigridResult<N> solve_multigrid(const GameDef<N>& game,
                                   const std::vector<typename Lattice<N>::Shape>& levels, double tol,
                                   const ControlPool& angel, const ControlPool& demon,
                                   const GridOptions& opts = {}) {
  if (levels.empty()) throw std::domain_error("solve_multigrid: no levels");
  using Clock = std::chrono::steady_clock;
  MultigridResult<N> out;
  double wall_ms = 0.0;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    if (l > 0)
      for (std::size_t i = 0; i < N; ++i)
        if (levels[l][i] < levels[l - 1][i])
          throw std::domain_error("solve_multigrid: levels must refine");
    const auto t0 = Clock::now();
    std::optional<std::vector<double>> init;
    if (l > 0) {
      const auto& coarse = out.levels.back().solution;
      const Lattice<N> fine(game.domain, levels[l]);
      std::vector<double> v(fine.size());
      for (SampleId id = 0; id < fine.size(); ++id) {
        const auto p = fine.point(id);
        const BallMin m = ball_argmin<N>(coarse.lattice, p, coarse.schedule.dilation,
                                         std::span<const double>(coarse.values), coarse.values.size());
        v[id] = m.found() ? m.value : evaluate(coarse, p);
      }
      init = std::move(v);
    }
    const double prolong_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    GridSolution<N> sol =
        solve_fixed_grid(game, levels[l], tol, angel, demon, opts, init ? &*init : nullptr);
    wall_ms += prolong_ms + sol.wall_ms;
    out.levels.push_back({levels[l], sol.sweeps, wall_ms, std::move(sol)});
  }
  out.solution = out.levels.back().solution;
  return out;
}

}  // namespace igame
