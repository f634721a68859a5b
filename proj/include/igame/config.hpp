#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "igame/io.hpp"
#include "igame/solver.hpp"

namespace igame {

using Shape2 = std::array<std::size_t, 2>;

struct Budget {
  std::size_t max_samples = 0;
  double max_seconds = 0.0;
};

struct CompareConfig {
  std::size_t multigrid_trials = 3;
  std::size_t igame_trials = 3;
  std::size_t igamestar_trials = 3;
  bool full_trials = false;  // 5 / 10 / 100 trials
  std::vector<double> thresholds{0.1, 0.08, 0.06, 0.04};
  std::vector<Shape2> multigrid_levels{{25, 25}, {50, 50}, {100, 100}};
  double multigrid_tol = 1e-6;
  Budget igame{20000, 90.0};
  Budget igamestar{20000, 90.0};
  std::size_t checkpoint_every = 250;

  std::size_t trials_multigrid() const { return full_trials ? 5 : multigrid_trials; }
  std::size_t trials_igame() const { return full_trials ? 10 : igame_trials; }
  std::size_t trials_igamestar() const { return full_trials ? 100 : igamestar_trials; }
};

struct FenceConfig {
  std::vector<std::size_t> snapshots{100, 500, 1000, 2000, 6000};
  Shape2 oracle_resolution{400, 400};
  double oracle_tol = 1e-8;
  Shape2 probe_resolution{200, 200};
};

struct SimulateConfig {
  Shape2 starts{25, 25};
  Shape2 evader_resolution{50, 50};
  std::vector<std::size_t> pursuer_checkpoints{4000, 6000, 8000};
  double dt = 0.0;  // 0: min(h of the pursuer field, dt_cap)
  double dt_cap = 0.01;
  double t_max_factor = 10.0;
  double t_max_cap = 20.0;
};

/// One experiment description. Every field has a default; a JSON file
/// overrides any subset.
struct ExperimentConfig {
  SolverConfig solver;
  Shape2 benchmark_resolution{200, 200};
  double benchmark_tol = 1e-6;
  Shape2 error_probes{100, 100};
  CompareConfig compare;
  FenceConfig fence;
  SimulateConfig simulate;

  const std::string& game() const { return solver.game; }
};

/// Per-game discretization defaults used by the experiments.
inline ExperimentConfig default_config(const std::string& game) {
  ExperimentConfig c;
  c.solver.game = game;
  c.solver.probes_per_axis = 256;
  if (game == "fence") {
    c.solver.disc.alpha_exp = 3.0;
  } else if (game == "chauffeur") {
    // Speed and Lipschitz constants tuned for the discretization only; the
    // worst-case bounds make the goal neighborhood swallow the whole disk.
    c.solver.disc.alpha_exp = 0.5;
    c.solver.disc.speed_bound = 2.0;
    c.solver.disc.lipschitz = 0.0;
  } else {
    throw std::invalid_argument("unknown game id: " + game);
  }
  return c;
}

namespace detail {

template <class T>
void read_opt(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

inline void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw std::invalid_argument(std::string(where) + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw std::invalid_argument(std::string(where) + ": unknown key '" + k + "'");
  }
}

inline Budget read_budget(const nlohmann::json& j, Budget b) {
  check_keys(j, {"max_samples", "max_seconds"}, "budget");
  read_opt(j, "max_samples", b.max_samples);
  read_opt(j, "max_seconds", b.max_seconds);
  return b;
}

}  // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  using detail::read_opt;
  detail::check_keys(j, {"game", "seed", "solver", "benchmark", "error_probes", "compare", "fence", "simulate"},
                     "config");
  ExperimentConfig c = default_config(j.value("game", std::string("chauffeur")));
  read_opt(j, "seed", c.solver.seed);
  read_opt(j, "error_probes", c.error_probes);

  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    detail::check_keys(s,
                       {"mode", "D", "propagation", "alpha_exp", "speed_bound", "lipschitz", "halo_rule", "max_samples",
                        "max_seconds", "probes_per_axis", "threads", "pools", "checkpoints"},
                       "solver");
    auto& sc = c.solver;
    if (s.contains("mode")) sc.mode = mode_from_string(s.at("mode").get<std::string>());
    read_opt(s, "D", sc.D);
    if (s.contains("propagation")) sc.propagation = propagation_from_string(s.at("propagation").get<std::string>());
    read_opt(s, "alpha_exp", sc.disc.alpha_exp);
    if (s.contains("speed_bound")) {
      if (s.at("speed_bound").is_null()) sc.disc.speed_bound.reset();
      else sc.disc.speed_bound = s.at("speed_bound").get<double>();
    }
    if (s.contains("lipschitz")) {
      if (s.at("lipschitz").is_null()) sc.disc.lipschitz.reset();
      else sc.disc.lipschitz = s.at("lipschitz").get<double>();
    }
    if (s.contains("halo_rule")) sc.disc.halo_rule = halo_rule_from_string(s.at("halo_rule").get<std::string>());
    read_opt(s, "max_samples", sc.max_samples);
    read_opt(s, "max_seconds", sc.max_seconds);
    read_opt(s, "probes_per_axis", sc.probes_per_axis);
    read_opt(s, "threads", sc.threads);
    if (s.contains("pools")) {
      const auto& p = s.at("pools");
      detail::check_keys(p, {"incremental", "angel_grid", "demon_grid"}, "solver.pools");
      read_opt(p, "incremental", sc.pools.incremental);
      read_opt(p, "angel_grid", sc.pools.angel_grid);
      read_opt(p, "demon_grid", sc.pools.demon_grid);
    }
    if (s.contains("checkpoints")) {
      const auto& k = s.at("checkpoints");
      detail::check_keys(k, {"kind", "every", "at"}, "solver.checkpoints");
      const std::string kind = k.value("kind", std::string("geometric"));
      if (kind == "geometric") sc.checkpoints.kind = Cadence::Kind::kGeometric;
      else if (kind == "every") sc.checkpoints.kind = Cadence::Kind::kEvery;
      else if (kind == "list") sc.checkpoints.kind = Cadence::Kind::kList;
      else throw std::invalid_argument("solver.checkpoints: unknown kind '" + kind + "'");
      read_opt(k, "every", sc.checkpoints.every);
      read_opt(k, "at", sc.checkpoints.at);
    }
  }
  if (j.contains("benchmark")) {
    const auto& b = j.at("benchmark");
    detail::check_keys(b, {"resolution", "tol"}, "benchmark");
    read_opt(b, "resolution", c.benchmark_resolution);
    read_opt(b, "tol", c.benchmark_tol);
  }
  if (j.contains("compare")) {
    const auto& m = j.at("compare");
    detail::check_keys(m,
                       {"multigrid_trials", "igame_trials", "igamestar_trials", "full_trials", "thresholds",
                        "multigrid_levels", "multigrid_tol", "igame", "igamestar", "checkpoint_every"},
                       "compare");
    auto& cc = c.compare;
    read_opt(m, "multigrid_trials", cc.multigrid_trials);
    read_opt(m, "igame_trials", cc.igame_trials);
    read_opt(m, "igamestar_trials", cc.igamestar_trials);
    read_opt(m, "full_trials", cc.full_trials);
    read_opt(m, "thresholds", cc.thresholds);
    read_opt(m, "multigrid_levels", cc.multigrid_levels);
    read_opt(m, "multigrid_tol", cc.multigrid_tol);
    if (m.contains("igame")) cc.igame = detail::read_budget(m.at("igame"), cc.igame);
    if (m.contains("igamestar")) cc.igamestar = detail::read_budget(m.at("igamestar"), cc.igamestar);
    read_opt(m, "checkpoint_every", cc.checkpoint_every);
  }
  if (j.contains("fence")) {
    const auto& f = j.at("fence");
    detail::check_keys(f, {"snapshots", "oracle_resolution", "oracle_tol", "probe_resolution"}, "fence");
    read_opt(f, "snapshots", c.fence.snapshots);
    read_opt(f, "oracle_resolution", c.fence.oracle_resolution);
    read_opt(f, "oracle_tol", c.fence.oracle_tol);
    read_opt(f, "probe_resolution", c.fence.probe_resolution);
  }
  if (j.contains("simulate")) {
    const auto& s = j.at("simulate");
    detail::check_keys(s,
                       {"starts", "evader_resolution", "pursuer_checkpoints", "dt", "dt_cap", "t_max_factor",
                        "t_max_cap"},
                       "simulate");
    auto& sc = c.simulate;
    read_opt(s, "starts", sc.starts);
    read_opt(s, "evader_resolution", sc.evader_resolution);
    read_opt(s, "pursuer_checkpoints", sc.pursuer_checkpoints);
    read_opt(s, "dt", sc.dt);
    read_opt(s, "dt_cap", sc.dt_cap);
    read_opt(s, "t_max_factor", sc.t_max_factor);
    read_opt(s, "t_max_cap", sc.t_max_cap);
  }
  c.solver.validate();
  return c;
}

inline nlohmann::json to_json(const ExperimentConfig& c) {
  const auto& s = c.solver;
  nlohmann::json j;
  j["game"] = s.game;
  j["seed"] = s.seed;
  nlohmann::json cadence{{"every", s.checkpoints.every}, {"at", s.checkpoints.at}};
  cadence["kind"] = s.checkpoints.kind == Cadence::Kind::kGeometric ? "geometric"
                    : s.checkpoints.kind == Cadence::Kind::kEvery   ? "every"
                                                                     : "list";
  j["solver"] = {{"mode", to_string(s.mode)},
                 {"D", s.D},
                 {"propagation", to_string(s.propagation)},
                 {"alpha_exp", s.disc.alpha_exp},
                 {"speed_bound", s.disc.speed_bound ? nlohmann::json(*s.disc.speed_bound) : nlohmann::json()},
                 {"lipschitz", s.disc.lipschitz ? nlohmann::json(*s.disc.lipschitz) : nlohmann::json()},
                 {"halo_rule", to_string(s.disc.halo_rule)},
                 {"max_samples", s.max_samples},
                 {"max_seconds", s.max_seconds},
                 {"probes_per_axis", s.probes_per_axis},
                 {"threads", s.threads},
                 {"pools",
                  {{"incremental", s.pools.incremental},
                   {"angel_grid", s.pools.angel_grid},
                   {"demon_grid", s.pools.demon_grid}}},
                 {"checkpoints", cadence}};
  j["benchmark"] = {{"resolution", c.benchmark_resolution}, {"tol", c.benchmark_tol}};
  j["error_probes"] = c.error_probes;
  const auto& m = c.compare;
  j["compare"] = {{"multigrid_trials", m.multigrid_trials},
                  {"igame_trials", m.igame_trials},
                  {"igamestar_trials", m.igamestar_trials},
                  {"full_trials", m.full_trials},
                  {"thresholds", m.thresholds},
                  {"multigrid_levels", m.multigrid_levels},
                  {"multigrid_tol", m.multigrid_tol},
                  {"igame", {{"max_samples", m.igame.max_samples}, {"max_seconds", m.igame.max_seconds}}},
                  {"igamestar", {{"max_samples", m.igamestar.max_samples}, {"max_seconds", m.igamestar.max_seconds}}},
                  {"checkpoint_every", m.checkpoint_every}};
  j["fence"] = {{"snapshots", c.fence.snapshots},
                {"oracle_resolution", c.fence.oracle_resolution},
                {"oracle_tol", c.fence.oracle_tol},
                {"probe_resolution", c.fence.probe_resolution}};
  const auto& sm = c.simulate;
  j["simulate"] = {{"starts", sm.starts},
                   {"evader_resolution", sm.evader_resolution},
                   {"pursuer_checkpoints", sm.pursuer_checkpoints},
                   {"dt", sm.dt},
                   {"dt_cap", sm.dt_cap},
                   {"t_max_factor", sm.t_max_factor},
                   {"t_max_cap", sm.t_max_cap}};
  return j;
}

/// Hash of the fully resolved config; names run directories.
inline std::string config_hash(const ExperimentConfig& c) { return content_hash(to_json(c).dump()); }

}  // namespace igame
