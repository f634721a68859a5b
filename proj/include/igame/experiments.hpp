#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "igame/config.hpp"
#include "igame/games.hpp"
#include "igame/io.hpp"
#include "igame/multigrid.hpp"
#include "igame/policy.hpp"
#include "igame/solver.hpp"
#include "igame/value_field.hpp"

namespace igame {

struct ErrorStats {
  double mean = 0.0;
  double sup = 0.0;
  std::size_t count = 0;  // probes in the free set minus the goal
};

/// Mean and max absolute difference of two fields on a probe lattice over
/// the domain, skipping probes in the goal or outside the free set. Each
/// field is read by its own ball-min evaluation.
template <std::size_t N>
ErrorStats error_against_benchmark(const GameDef<N>& game, const ValueField<N>& field,
                                   const ValueField<N>& benchmark, const typename Lattice<N>::Shape& probes) {
  const Lattice<N> lat(game.domain, probes);
  ErrorStats e;
  double sum = 0.0;
  for (SampleId id = 0; id < lat.size(); ++id) {
    const auto p = lat.point(id);
    if (game.in_goal(p) || !game.in_free(p)) continue;
    const double diff = std::abs(field.evaluate(p) - benchmark.evaluate(p));
    sum += diff;
    e.sup = std::max(e.sup, diff);
    ++e.count;
  }
  e.mean = e.count ? sum / static_cast<double>(e.count) : 0.0;
  return e;
}

// Cached grid solves ---------------------------------------------------------

/// Cache root: $IGAME_CACHE_DIR, else ./.igame_cache.
inline fs::path cache_dir() {
  const char* env = std::getenv("IGAME_CACHE_DIR");
  return env && *env ? fs::path(env) : fs::path(".igame_cache");
}

inline std::string grid_key(const std::string& game_id, const Shape2& res, double tol, const ControlPool& angel,
                            const ControlPool& demon, const Discretization& disc) {
  nlohmann::json j{{"game", game_id},
                   {"resolution", res},
                   {"tol", tol},
                   {"angel", to_json(angel)},
                   {"demon", to_json(demon)},
                   {"alpha_exp", disc.alpha_exp},
                   {"speed_bound", disc.speed_bound ? nlohmann::json(*disc.speed_bound) : nlohmann::json()},
                   {"lipschitz", disc.lipschitz ? nlohmann::json(*disc.lipschitz) : nlohmann::json()},
                   {"halo_rule", to_string(disc.halo_rule)}};
  return content_hash(j.dump());
}

/// Cache location (without extension) of one fixed-grid solve.
inline fs::path grid_cache_stem(const GameDef<2>& game, const Shape2& res, double tol, const ControlPool& angel,
                                const ControlPool& demon, const Discretization& disc) {
  return cache_dir() / (game.id + "-" + std::to_string(res[0]) + "x" + std::to_string(res[1]) + "-" +
                        grid_key(game.id, res, tol, angel, demon, disc));
}

/// Fixed-grid solve, reused from the cache when an identical one exists.
inline GridSolution<2> cached_grid(const GameDef<2>& game, const Shape2& res, double tol, const ControlPool& angel,
                                   const ControlPool& demon, const Discretization& disc, bool* hit = nullptr) {
  const fs::path stem = grid_cache_stem(game, res, tol, angel, demon, disc);
  const fs::path csv(stem.string() + ".csv"), meta(stem.string() + ".json");
  if (fs::exists(csv) && fs::exists(meta)) {
    GridSolution<2> s;
    s.lattice = Lattice<2>(game.domain, res);
    s.disc = disc;
    s.schedule = disc.schedule(game, s.lattice.half_diagonal());
    s.angel_pool = angel;
    s.demon_pool = demon;
    s.tol = tol;
    const auto j = read_json(meta);
    s.sweeps = j.at("sweeps").get<std::size_t>();
    s.wall_ms = j.at("wall_ms").get<double>();
    read_grid_values(csv, s);
    if (hit) *hit = true;
    return s;
  }
  GridOptions opts;
  opts.disc = disc;
  GridSolution<2> s = solve_fixed_grid<2>(game, res, tol, angel, demon, opts);
  write_grid(stem, game.id, s);
  if (hit) *hit = false;
  return s;
}

inline ControlPool config_angel_pool(const GameDef<2>& g, const ExperimentConfig& c) {
  PoolConfig p = c.solver.pools;
  p.incremental = false;
  return p.initial_angel(g);
}
inline ControlPool config_demon_pool(const GameDef<2>& g, const ExperimentConfig& c) {
  PoolConfig p = c.solver.pools;
  p.incremental = false;
  return p.initial_demon(g);
}

/// The error reference for a game: a fine fixed-grid solve.
inline GridSolution<2> benchmark_solution(const ExperimentConfig& c, bool* hit = nullptr) {
  const auto g = make_game(c.game());
  return cached_grid(g, c.benchmark_resolution, c.benchmark_tol, config_angel_pool(g, c), config_demon_pool(g, c),
                     c.solver.disc, hit);
}

/// Fence-escape reference: a finer, tighter fixed-grid solve than any
/// snapshot is compared at.
inline GridSolution<2> fence_oracle(const ExperimentConfig& c, bool* hit = nullptr) {
  const auto g = make_fence_escape();
  return cached_grid(g, c.fence.oracle_resolution, c.fence.oracle_tol, config_angel_pool(g, c),
                     config_demon_pool(g, c), c.solver.disc, hit);
}

// Fence snapshots ------------------------------------------------------------

struct FenceSnapshot {
  std::size_t n = 0;
  double wall_ms = 0.0;
  Schedule schedule;
  ErrorStats error;
  std::vector<double> probe_values;  // ball-min reads on the probe lattice
};

struct FenceSnapshots {
  Lattice<2> probes;
  std::vector<FenceSnapshot> snapshots;
  SolutionTrace<2> trace;
};

/// Synchronous iGame on the fence game, evaluated at the configured sample
/// counts.
inline FenceSnapshots run_fence_snapshots(const ExperimentConfig& c, const GridSolution<2>& oracle) {
  const auto g = make_fence_escape();
  SolverConfig sc = c.solver;
  sc.game = g.id;
  sc.mode = Mode::kIGame;
  sc.checkpoints.kind = Cadence::Kind::kList;
  sc.checkpoints.at = c.fence.snapshots;
  sc.max_samples = 0;
  for (auto n : c.fence.snapshots) sc.max_samples = std::max(sc.max_samples, n);
  sc.max_seconds = 0.0;

  FenceSnapshots out;
  out.probes = Lattice<2>(g.domain, c.fence.probe_resolution);
  const GridField<2> ref(oracle);
  out.trace = run<2>(g, sc, [&](const Solver<2>& s, const Checkpoint& cp) {
    if (!sc.checkpoints.due(cp.n)) return;
    const CloudField<2> f(g.domain, s.cloud().points(), cp.values, cp.schedule);
    FenceSnapshot snap{cp.n, cp.wall_ms, cp.schedule, error_against_benchmark<2>(g, f, ref, c.error_probes), {}};
    snap.probe_values.resize(out.probes.size());
    for (SampleId id = 0; id < out.probes.size(); ++id) snap.probe_values[id] = f.evaluate(out.probes.point(id));
    out.snapshots.push_back(std::move(snap));
  });
  return out;
}

// Algorithm comparison -------------------------------------------------------

struct ErrorRow {
  std::string algo;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;  // samples, or lattice nodes for multigrid
  double wall_ms = 0.0;
  ErrorStats error;
};

struct CurvePoint {
  std::string algo;
  std::size_t index = 0;  // checkpoint position within a trial
  std::size_t trials = 0;
  double n_mean = 0.0;
  double wall_ms_mean = 0.0;
  double error_mean = 0.0;
  double error_std = 0.0;
};

struct ThresholdTime {
  std::string algo;
  double threshold = 0.0;
  std::size_t trials = 0;
  std::size_t crossed = 0;  // trials that reached the threshold
  double mean_ms = std::numeric_limits<double>::infinity();  // over crossing trials
  std::vector<std::optional<double>> per_trial_ms;

  /// Mean time if every trial crossed; censored otherwise.
  std::optional<double> uncensored_mean() const {
    if (trials == 0 || crossed != trials) return std::nullopt;
    return mean_ms;
  }
};

struct Comparison {
  std::vector<ErrorRow> rows;
  std::vector<CurvePoint> curves;
  std::vector<ThresholdTime> table;

  const ThresholdTime* find(const std::string& algo, double threshold) const {
    for (const auto& t : table)
      if (t.algo == algo && t.threshold == threshold) return &t;
    return nullptr;
  }
};

namespace detail {

inline void summarize(const std::string& algo, std::size_t trials, const std::vector<double>& thresholds,
                      Comparison& out) {
  std::vector<std::vector<const ErrorRow*>> by_trial(trials);
  for (const auto& r : out.rows)
    if (r.algo == algo && r.trial < trials) by_trial[r.trial].push_back(&r);

  for (std::size_t k = 0;; ++k) {
    CurvePoint cp;
    cp.algo = algo;
    cp.index = k;
    double s = 0.0, s2 = 0.0;
    for (const auto& rows : by_trial) {
      if (k >= rows.size()) continue;
      ++cp.trials;
      cp.n_mean += static_cast<double>(rows[k]->n);
      cp.wall_ms_mean += rows[k]->wall_ms;
      s += rows[k]->error.mean;
      s2 += rows[k]->error.mean * rows[k]->error.mean;
    }
    if (cp.trials == 0) break;
    const double m = static_cast<double>(cp.trials);
    cp.n_mean /= m;
    cp.wall_ms_mean /= m;
    cp.error_mean = s / m;
    cp.error_std = cp.trials > 1 ? std::sqrt(std::max(0.0, (s2 - s * s / m) / (m - 1.0))) : 0.0;
    out.curves.push_back(cp);
  }

  for (double th : thresholds) {
    ThresholdTime t;
    t.algo = algo;
    t.threshold = th;
    t.trials = trials;
    double sum = 0.0;
    for (const auto& rows : by_trial) {
      std::optional<double> hit;
      for (const auto* r : rows)
        if (r->error.mean <= th) {
          hit = r->wall_ms;
          break;
        }
      t.per_trial_ms.push_back(hit);
      if (hit) {
        ++t.crossed;
        sum += *hit;
      }
    }
    if (t.crossed) t.mean_ms = sum / static_cast<double>(t.crossed);
    out.table.push_back(std::move(t));
  }
}

}  // namespace detail

/// Multigrid, iGame and iGame* against one benchmark: per-checkpoint errors,
/// mean/std curves, and first-crossing times for each threshold. Trials of
/// the sampling solvers use seeds seed, seed + 1, ...
inline Comparison run_comparison(const ExperimentConfig& c, const GridSolution<2>& bench) {
  const auto g = make_game(c.game());
  const GridField<2> ref(bench);
  const auto& cc = c.compare;
  Comparison out;

  GridOptions gopts;
  gopts.disc = c.solver.disc;
  gopts.threads = c.solver.threads;
  for (std::size_t t = 0; t < cc.trials_multigrid(); ++t) {
    const auto mg = solve_multigrid<2>(g, cc.multigrid_levels, cc.multigrid_tol, config_angel_pool(g, c),
                                       config_demon_pool(g, c), gopts);
    for (const auto& lvl : mg.levels) {
      const GridField<2> f(lvl.solution);
      out.rows.push_back({"multigrid", t, 0, lvl.solution.lattice.size(), lvl.wall_ms,
                          error_against_benchmark<2>(g, f, ref, c.error_probes)});
    }
  }
  detail::summarize("multigrid", cc.trials_multigrid(), cc.thresholds, out);

  const auto sampled = [&](Mode mode, std::size_t trials, const Budget& budget) {
    const std::string algo = to_string(mode);
    for (std::size_t t = 0; t < trials; ++t) {
      SolverConfig sc = c.solver;
      sc.mode = mode;
      sc.seed = c.solver.seed + t;
      sc.max_samples = budget.max_samples;
      sc.max_seconds = budget.max_seconds;
      sc.checkpoints.kind = Cadence::Kind::kEvery;
      sc.checkpoints.every = cc.checkpoint_every;
      run<2>(g, sc, [&](const Solver<2>& s, const Checkpoint& cp) {
        const CloudField<2> f(g.domain, s.cloud().points(), cp.values, cp.schedule);
        out.rows.push_back({algo, t, sc.seed, cp.n, cp.wall_ms, error_against_benchmark<2>(g, f, ref, c.error_probes)});
      });
    }
    detail::summarize(algo, trials, cc.thresholds, out);
  };
  sampled(Mode::kIGame, cc.trials_igame(), cc.igame);
  sampled(Mode::kIGameStar, cc.trials_igamestar(), cc.igamestar);
  return out;
}

inline void write_comparison(const fs::path& dir, const Comparison& c) {
  {
    auto f = open_out(dir / "errors.csv");
    f << "algo,trial,seed,n,wall_ms,error_mean,error_sup\n";
    for (const auto& r : c.rows)
      f << r.algo << ',' << r.trial << ',' << r.seed << ',' << r.n << ',' << fmt(r.wall_ms) << ','
        << fmt(r.error.mean) << ',' << fmt(r.error.sup) << '\n';
  }
  {
    auto f = open_out(dir / "curves.csv");
    f << "algo,index,trials,n_mean,wall_ms_mean,error_mean,error_std\n";
    for (const auto& p : c.curves)
      f << p.algo << ',' << p.index << ',' << p.trials << ',' << fmt(p.n_mean) << ',' << fmt(p.wall_ms_mean) << ','
        << fmt(p.error_mean) << ',' << fmt(p.error_std) << '\n';
  }
  {
    // A row exists only for trials that crossed the threshold.
    auto f = open_out(dir / "time_to_error.csv");
    f << "algo,threshold,trial,wall_ms\n";
    for (const auto& t : c.table)
      for (std::size_t i = 0; i < t.per_trial_ms.size(); ++i)
        if (t.per_trial_ms[i]) f << t.algo << ',' << fmt(t.threshold) << ',' << i << ',' << fmt(*t.per_trial_ms[i]) << '\n';
  }
  nlohmann::json table = nlohmann::json::array();
  for (const auto& t : c.table) {
    table.push_back({{"algo", t.algo},
                     {"threshold", t.threshold},
                     {"trials", t.trials},
                     {"crossed", t.crossed},
                     {"censored", t.trials - t.crossed},
                     {"mean_ms", t.crossed ? nlohmann::json(t.mean_ms) : nlohmann::json()}});
  }
  write_json(dir / "time_to_error.json", table);
}

// Outcome maps ---------------------------------------------------------------

struct OutcomeTrend {
  std::vector<std::size_t> checkpoints;  // pursuer sample counts
  std::vector<OutcomeMap<2>> maps;
  double dt = 0.0;
};

/// Pursuer policies from successive iGame* checkpoints against one evader
/// policy from a fixed grid solve. Time limits come from the evader's field
/// so they stay the same across checkpoints.
inline OutcomeTrend run_outcome_trend(const ExperimentConfig& c) {
  const auto g = make_homicidal_chauffeur();
  const auto& sm = c.simulate;
  const auto angel = config_angel_pool(g, c), demon = config_demon_pool(g, c);
  auto evader_field = std::make_shared<const GridField<2>>(
      cached_grid(g, sm.evader_resolution, c.benchmark_tol, angel, demon, c.solver.disc));
  const Policy<2> evader{evader_field, angel, demon, Role::kDemon};
  const TimeLimit<2> limit{evader_field, sm.t_max_factor, sm.t_max_cap};
  const Lattice<2> starts(g.domain, sm.starts);

  SolverConfig sc = c.solver;
  sc.game = g.id;
  sc.mode = Mode::kIGameStar;
  sc.checkpoints.kind = Cadence::Kind::kList;
  sc.checkpoints.at = sm.pursuer_checkpoints;
  sc.max_samples = 0;
  for (auto n : sm.pursuer_checkpoints) sc.max_samples = std::max(sc.max_samples, n);
  sc.max_seconds = 0.0;

  OutcomeTrend out;
  run<2>(g, sc, [&](const Solver<2>& s, const Checkpoint& cp) {
    if (!sc.checkpoints.due(cp.n)) return;
    auto field = std::make_shared<const CloudField<2>>(g.domain, s.cloud().points(), cp.values, cp.schedule);
    const Policy<2> pursuer{field, angel, demon, Role::kAngel};
    const double dt = sm.dt > 0.0 ? sm.dt : std::min(cp.schedule.h, sm.dt_cap);
    out.dt = dt;
    out.checkpoints.push_back(cp.n);
    out.maps.push_back(outcome_map<2>(g, pursuer, evader, starts, dt, limit, c.solver.threads));
  });
  return out;
}

}  // namespace igame
