#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "igame/discretization.hpp"
#include "igame/operator.hpp"
#include "igame/parallel.hpp"
#include "igame/random.hpp"
#include "igame/sample_cloud.hpp"

namespace igame {

enum class Mode { kIGame, kIGameStar };

inline std::string to_string(Mode m) { return m == Mode::kIGame ? "igame" : "igamestar"; }
inline Mode mode_from_string(const std::string& s) {
  if (s == "igame") return Mode::kIGame;
  if (s == "igamestar") return Mode::kIGameStar;
  throw std::invalid_argument("unknown solver mode: " + s);
}

/// Control pools: fixed tensor grids (default) or one fresh uniform draw per
/// iteration for each player.
struct PoolConfig {
  bool incremental = false;
  std::vector<std::size_t> angel_grid;  // empty: the game's default
  std::vector<std::size_t> demon_grid;

  template <std::size_t N>
  ControlPool initial_angel(const GameDef<N>& g) const {
    if (incremental) return ControlPool(g.angel_controls.dim());
    return g.angel_controls.grid(angel_grid.empty() ? g.angel_grid : angel_grid);
  }
  template <std::size_t N>
  ControlPool initial_demon(const GameDef<N>& g) const {
    if (incremental) return ControlPool(g.demon_controls.dim());
    return g.demon_controls.grid(demon_grid.empty() ? g.demon_grid : demon_grid);
  }
};

/// When run() records a checkpoint: each time n doubles, every k
/// iterations, or at listed sample counts. The final iteration always counts.
struct Cadence {
  enum class Kind { kGeometric, kEvery, kList };
  Kind kind = Kind::kGeometric;
  std::size_t every = 1;
  std::vector<std::size_t> at;

  bool due(std::size_t n) const {
    switch (kind) {
      case Kind::kGeometric:
        return n > 0 && (n & (n - 1)) == 0;
      case Kind::kEvery:
        return every > 0 && n % every == 0;
      case Kind::kList:
        return std::find(at.begin(), at.end(), n) != at.end();
    }
    return false;
  }
};

/// What a sample outside the update set holds for one iteration: the
/// smallest previous value within the previous dilation radius (kBallMin),
/// or its own previous value (kHold).
enum class Propagation { kBallMin, kHold };

inline std::string to_string(Propagation p) { return p == Propagation::kBallMin ? "ball_min" : "hold"; }
inline Propagation propagation_from_string(const std::string& s) {
  if (s == "ball_min") return Propagation::kBallMin;
  if (s == "hold") return Propagation::kHold;
  throw std::invalid_argument("unknown propagation rule: " + s);
}

struct SolverConfig {
  std::string game = "fence";
  std::uint64_t seed = 1;
  Mode mode = Mode::kIGame;
  std::uint32_t D = 50;  // staleness bound for the cascade rule
  Propagation propagation = Propagation::kHold;
  Discretization disc;
  PoolConfig pools;
  std::size_t max_samples = 1000;
  double max_seconds = 0.0;  // 0: no wall-clock budget
  Cadence checkpoints;
  std::size_t probes_per_axis = 64;
  unsigned threads = 1;

  void validate() const {
    if (!(disc.alpha_exp > 0.0)) throw std::invalid_argument("SolverConfig: alpha_exp must be > 0");
    if (max_seconds < 0.0) throw std::invalid_argument("SolverConfig: negative time budget");
    if (probes_per_axis == 0) throw std::invalid_argument("SolverConfig: probes_per_axis must be > 0");
    if (checkpoints.kind == Cadence::Kind::kEvery && checkpoints.every == 0)
      throw std::invalid_argument("SolverConfig: checkpoint interval must be > 0");
  }
};

inline constexpr std::uint32_t kNoControl = std::numeric_limits<std::uint32_t>::max();

/// Per-sample solver bookkeeping, indexed by sample id.
struct SolverState {
  std::vector<double> values;
  std::vector<std::uint32_t> controls;  // angel pool index from the last VI
  std::vector<SampleId> child;          // minimizing neighbor, kNoSample if none
  std::vector<std::uint32_t> flag;      // iterations since the last VI
  std::vector<NodeKind> kind;
  std::size_t iteration = 0;
  ControlPool angel_pool{1};
  ControlPool demon_pool{1};
  Schedule schedule;

  std::size_t size() const { return values.size(); }
};

/// Samples receiving a value-iteration update this iteration, ascending.
using UpdateSet = std::vector<SampleId>;

/// Cascade rule: the new sample, every sample whose staleness reached D, and
/// every sample whose child was updated in the previous iteration (flag 0).
inline UpdateSet cascade_schedule(const SolverState& s, std::uint32_t D, SampleId y_new) {
  UpdateSet k;
  for (SampleId x = 0; x < s.size(); ++x) {
    if (x == y_new || s.flag[x] >= D) {
      k.push_back(x);
      continue;
    }
    const SampleId c = s.child[x];
    if (c != kNoSample && c < s.size() && c != y_new && s.flag[c] == 0) k.push_back(x);
  }
  return k;
}

/// Every sample; the synchronous rule.
inline UpdateSet synchronous_schedule(const SolverState& s, SampleId) {
  UpdateSet k(s.size());
  for (SampleId x = 0; x < s.size(); ++x) k[x] = x;
  return k;
}

/// Incremental-sampling solver. Each iteration draws one state, rebuilds the
/// schedule from the new dispersion, and applies one asynchronous update
/// sweep: the operator on K_n, ball-min propagation elsewhere, fixed values
/// at terminal and near-goal samples. Reads always come from the
/// pre-iteration snapshot.
template <std::size_t N>
class Solver {
 public:
  using Selector = std::function<UpdateSet(const SolverState&, SampleId)>;

  Solver(GameDef<N> game, SolverConfig cfg)
      : game_(std::move(game)),
        cfg_(std::move(cfg)),
        rng_(cfg_.seed),
        cloud_(game_.domain, game_.in_free, CloudOptions{cfg_.probes_per_axis}) {
    game_.validate();
    cfg_.validate();
    state_.angel_pool = cfg_.pools.initial_angel(game_);
    state_.demon_pool = cfg_.pools.initial_demon(game_);
    state_.schedule = cfg_.disc.schedule(game_, cloud_.dispersion());
  }

  const GameDef<N>& game() const { return game_; }
  const SolverConfig& config() const { return cfg_; }
  const SolverState& state() const { return state_; }
  const SampleCloud<N>& cloud() const { return cloud_; }

  /// Adds initial samples with given values (S_0, v_0) before any iteration.
  void seed(const std::vector<Point<N>>& pts, const std::vector<double>& vals) {
    if (pts.size() != vals.size()) throw std::invalid_argument("Solver::seed: size mismatch");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!(vals[i] >= 0.0 && vals[i] <= 1.0)) throw std::domain_error("Solver::seed: value outside [0,1]");
      const auto id = cloud_.insert(pts[i]);
      if (!id) throw std::invalid_argument("Solver::seed: duplicate point");
      state_.values.push_back(vals[i]);
      state_.controls.push_back(kNoControl);
      state_.child.push_back(kNoSample);
      state_.flag.push_back(0);
      state_.kind.push_back(NodeKind::kActive);
    }
    state_.schedule = cfg_.disc.schedule(game_, cloud_.dispersion());
    for (SampleId x = 0; x < state_.size(); ++x) {
      state_.kind[x] = cfg_.disc.classify(game_, cloud_.point(x), state_.schedule);
      if (state_.kind[x] != NodeKind::kActive)
        state_.values[x] = cfg_.disc.fixed_value(game_, cloud_.point(x), state_.kind[x]);
    }
  }

  /// One iteration of the configured mode.
  void step() {
    if (cfg_.mode == Mode::kIGame)
      igame_step(synchronous_schedule);
    else
      igamestar_step();
  }

  /// One iteration with an arbitrary update-set rule. `forced` replaces the
  /// random state draw (control draws still happen).
  void igame_step(const Selector& select, std::optional<Point<N>> forced = std::nullopt) {
    const SampleId y = begin_iteration(forced);
    sweep(y, select(state_, y));
  }

  /// One iteration under the cascade rule with staleness bound D.
  void igamestar_step(std::optional<Point<N>> forced = std::nullopt) {
    const SampleId y = begin_iteration(forced);
    sweep(y, cascade_schedule(state_, cfg_.D, y));
  }

  /// Number of operator evaluations in the last sweep.
  std::size_t last_update_count() const { return last_updates_; }

 private:
  SampleId begin_iteration(std::optional<Point<N>> forced) {
    prev_schedule_ = state_.schedule;
    prev_count_ = cloud_.size();
    SampleId y;
    if (forced) {
      const auto id = cloud_.insert(*forced);
      if (!id) throw std::invalid_argument("Solver: forced sample duplicates an existing one");
      y = *id;
    } else {
      std::optional<SampleId> id;
      while (!(id = cloud_.insert(rng_.point(game_.domain)))) {
      }
      y = *id;
    }
    if (cfg_.pools.incremental) {
      const auto u = game_.angel_controls.sample(rng_);
      state_.angel_pool.add(u);
      const auto w = game_.demon_controls.sample(rng_);
      state_.demon_pool.add(w);
    }
    const Schedule sched = cfg_.disc.schedule(game_, cloud_.dispersion());
    state_.schedule = sched;
    if (prev_count_ == 0) prev_schedule_ = sched;
    cloud_.tune_index(sched.dilation);

    // The goal neighborhood only shrinks, so only near-goal samples can
    // change kind.
    for (SampleId x = 0; x < prev_count_; ++x)
      if (state_.kind[x] == NodeKind::kHalo)
        state_.kind[x] = cfg_.disc.classify(game_, cloud_.point(x), sched);
    const NodeKind k = cfg_.disc.classify(game_, cloud_.point(y), sched);
    state_.kind.push_back(k);
    state_.values.push_back(k == NodeKind::kActive ? 1.0 : cfg_.disc.fixed_value(game_, cloud_.point(y), k));
    state_.controls.push_back(kNoControl);
    state_.child.push_back(kNoSample);
    state_.flag.push_back(0);
    return y;
  }

  void sweep(SampleId y, const UpdateSet& K) {
    const std::size_t n = state_.size();
    std::vector<std::uint8_t> in_k(n, 0);
    for (SampleId x : K)
      if (x < n) in_k[x] = 1;

    const std::vector<double> snapshot = state_.values;
    const std::vector<std::uint32_t> old_flag = state_.flag;
    const Schedule& sched = state_.schedule;
    const Schedule& prev = prev_schedule_;
    const std::uint32_t cap = cfg_.D;
    std::vector<std::uint8_t> updated(n, 0);

    parallel_for(n, cfg_.threads, [&](std::size_t i) {
      const auto x = static_cast<SampleId>(i);
      const auto& p = cloud_.point(x);
      const NodeKind kind = state_.kind[x];
      if (kind != NodeKind::kActive) {
        if (kind == NodeKind::kHalo) state_.values[x] = cfg_.disc.fixed_value(game_, p, kind);
        state_.child[x] = kNoSample;
        state_.flag[x] = std::min(old_flag[x] + 1, cap);
        return;
      }
      if (in_k[x]) {
        const UpdateResult r = value_update(game_, p, std::span<const double>(snapshot), sched,
                                            state_.angel_pool, state_.demon_pool, cloud_, n);
        state_.values[x] = r.value;
        state_.controls[x] = r.control;
        state_.child[x] = r.child;
        state_.flag[x] = 0;
        updated[x] = 1;
        return;
      }
      state_.flag[x] = std::min(old_flag[x] + 1, cap);
      if (cfg_.propagation == Propagation::kHold && x < prev_count_) return;
      const BallMin z =
          ball_argmin<N>(cloud_, p, prev.dilation, std::span<const double>(snapshot), prev_count_);
      if (z.found()) {
        state_.values[x] = snapshot[z.id];
        state_.child[x] = z.id;
      }
    });
    (void)y;
    last_updates_ = 0;
    for (auto u : updated) last_updates_ += u;
    ++state_.iteration;
  }

  GameDef<N> game_;
  SolverConfig cfg_;
  Rng rng_;
  SampleCloud<N> cloud_;
  SolverState state_;
  Schedule prev_schedule_;
  std::size_t prev_count_ = 0;
  std::size_t last_updates_ = 0;
};

/// Solver output at one checkpoint.
struct Checkpoint {
  std::size_t n = 0;       // samples (== iterations)
  double wall_ms = 0.0;    // cumulative solver time
  Schedule schedule;
  std::vector<double> values;
  std::vector<std::uint32_t> controls;
  std::vector<SampleId> child;
  std::vector<std::uint32_t> flag;
};

template <std::size_t N>
struct SolutionTrace {
  std::vector<Point<N>> samples;  // final sample set; checkpoint n uses the first n
  std::vector<Checkpoint> checkpoints;
};

template <std::size_t N>
using CheckpointObserver = std::function<void(const Solver<N>&, const Checkpoint&)>;

/// Runs the configured solver until the sample or wall-clock budget is spent.
/// Wall time covers solver iterations only; observers run off the clock.
template <std::size_t N>
SolutionTrace<N> run(const GameDef<N>& game, const SolverConfig& cfg,
                     const CheckpointObserver<N>& observer = {}) {
  SolutionTrace<N> trace;
  if (cfg.max_samples == 0) return trace;
  Solver<N> solver(game, cfg);
  using Clock = std::chrono::steady_clock;
  double wall_ms = 0.0;
  for (std::size_t n = 1; n <= cfg.max_samples; ++n) {
    const auto t0 = Clock::now();
    solver.step();
    wall_ms += std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    const bool out_of_time = cfg.max_seconds > 0.0 && wall_ms >= cfg.max_seconds * 1e3;
    const bool last = n == cfg.max_samples || out_of_time;
    if (cfg.checkpoints.due(n) || last) {
      const auto& s = solver.state();
      Checkpoint cp{n, wall_ms, s.schedule, s.values, s.controls, s.child, s.flag};
      if (observer) observer(solver, cp);
      trace.checkpoints.push_back(std::move(cp));
    }
    if (out_of_time) break;
  }
  trace.samples = solver.cloud().points();
  return trace;
}

}  // namespace igame
