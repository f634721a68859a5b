// Command-line driver for the solvers and the benchmark experiments.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "igame/igame.hpp"

using namespace igame;

namespace {

struct Common {
  std::string config_path;
  std::string game;
  std::optional<std::uint64_t> seed;
  std::string out_root = "runs";
};

ExperimentConfig load(const Common& o, const std::string& fallback_game) {
  nlohmann::json j = nlohmann::json::object();
  if (!o.config_path.empty()) j = read_json(o.config_path);
  if (!o.game.empty()) j["game"] = o.game;
  if (!j.contains("game")) j["game"] = fallback_game;
  ExperimentConfig c = config_from_json(j);
  if (o.seed) c.solver.seed = *o.seed;
  return c;
}

fs::path run_dir(const Common& o, const std::string& cmd, const ExperimentConfig& c) {
  const fs::path dir = fs::path(o.out_root) / (cmd + "-" + c.game() + "-" + config_hash(c));
  fs::create_directories(dir);
  write_json(dir / "config.json", to_json(c));
  return dir;
}

void add_common(CLI::App* app, Common& o) {
  app->add_option("-c,--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  app->add_option("-g,--game", o.game, "game id (fence, chauffeur)");
  app->add_option("--seed", o.seed, "override the config seed");
  app->add_option("-o,--out", o.out_root, "root directory for run outputs");
}

void write_probe_csv(const fs::path& p, const Lattice<2>& lat, const std::vector<double>& v) {
  auto f = open_out(p);
  f << "i0,i1,x0,x1,value\n";
  for (SampleId id = 0; id < lat.size(); ++id) {
    const auto k = lat.multi_index(id);
    f << k[0] << ',' << k[1] << point_cells(lat.point(id)) << ',' << fmt(v[id]) << '\n';
  }
}

int cmd_solve(const Common& o) {
  const auto c = load(o, "chauffeur");
  const auto dir = run_dir(o, "solve", c);
  const auto g = make_game(c.game());
  const auto trace = run<2>(g, c.solver, [](const Solver<2>&, const Checkpoint& cp) {
    std::printf("n=%zu d=%.4g h=%.4g wall_ms=%.1f\n", cp.n, cp.schedule.d, cp.schedule.h, cp.wall_ms);
  });
  write_trace<2>(dir, trace);
  std::cout << dir.string() << '\n';
  return 0;
}

int cmd_benchmark(const Common& o) {
  const auto c = load(o, "chauffeur");
  const auto dir = run_dir(o, "benchmark", c);
  bool hit = false;
  const auto s = benchmark_solution(c, &hit);
  write_grid(dir / "benchmark", c.game(), s);
  std::printf("%s benchmark %zux%zu sweeps=%zu wall_ms=%.1f\n", hit ? "cached" : "solved",
              c.benchmark_resolution[0], c.benchmark_resolution[1], s.sweeps, s.wall_ms);
  std::cout << dir.string() << '\n';
  return 0;
}

int cmd_compare(const Common& o) {
  const auto c = load(o, "chauffeur");
  const auto dir = run_dir(o, "compare", c);
  const auto bench = benchmark_solution(c);
  const auto cmp = run_comparison(c, bench);
  write_comparison(dir, cmp);
  for (const auto& t : cmp.table) {
    if (t.crossed)
      std::printf("%-10s err<=%.2f  %zu/%zu trials  mean %.1f ms\n", t.algo.c_str(), t.threshold, t.crossed,
                  t.trials, t.mean_ms);
    else
      std::printf("%-10s err<=%.2f  0/%zu trials  censored\n", t.algo.c_str(), t.threshold, t.trials);
  }
  std::cout << dir.string() << '\n';
  return 0;
}

int cmd_fence(const Common& o) {
  const auto c = load(o, "fence");
  const auto dir = run_dir(o, "fence", c);
  const auto oracle = fence_oracle(c);
  const GridField<2> of(oracle);
  const Lattice<2> probes(oracle.lattice.box(), c.fence.probe_resolution);
  std::vector<double> ov(probes.size());
  for (SampleId id = 0; id < probes.size(); ++id) ov[id] = of.evaluate(probes.point(id));
  write_probe_csv(dir / "oracle.csv", probes, ov);

  const auto snaps = run_fence_snapshots(c, oracle);
  auto f = open_out(dir / "snapshots.csv");
  f << "n,wall_ms,d,h,error_mean,error_sup\n";
  for (const auto& s : snaps.snapshots) {
    write_probe_csv(dir / ("snapshot_" + std::to_string(s.n) + ".csv"), snaps.probes, s.probe_values);
    f << s.n << ',' << fmt(s.wall_ms) << ',' << fmt(s.schedule.d) << ',' << fmt(s.schedule.h) << ','
      << fmt(s.error.mean) << ',' << fmt(s.error.sup) << '\n';
    std::printf("n=%zu error_mean=%.4f error_sup=%.4f wall_ms=%.1f\n", s.n, s.error.mean, s.error.sup, s.wall_ms);
  }
  std::cout << dir.string() << '\n';
  return 0;
}

int cmd_simulate(const Common& o) {
  const auto c = load(o, "chauffeur");
  const auto dir = run_dir(o, "simulate", c);
  const auto trend = run_outcome_trend(c);
  nlohmann::json summary = nlohmann::json::array();
  for (std::size_t i = 0; i < trend.maps.size(); ++i) {
    const auto& m = trend.maps[i];
    write_outcome_csv(dir / ("outcome_" + std::to_string(trend.checkpoints[i]) + ".csv"), m);
    auto s = outcome_summary(m);
    s["pursuer_samples"] = trend.checkpoints[i];
    s["dt"] = trend.dt;
    summary.push_back(s);
    std::printf("pursuer n=%zu capture=%zu escape=%zu timeout=%zu\n", trend.checkpoints[i], m.captures, m.escapes,
                m.timeouts);
  }
  write_json(dir / "summary.json", summary);
  std::cout << dir.string() << '\n';
  return 0;
}

int cmd_oracle(const Common& o) {
  // Drop the cached entries so both references are solved afresh.
  for (const std::string game : {"fence", "chauffeur"}) {
    Common oo = o;
    oo.game = game;
    const auto c = load(oo, game);
    const auto g = make_game(game);
    const auto res = game == "fence" ? c.fence.oracle_resolution : c.benchmark_resolution;
    const double tol = game == "fence" ? c.fence.oracle_tol : c.benchmark_tol;
    const auto stem = grid_cache_stem(g, res, tol, config_angel_pool(g, c), config_demon_pool(g, c), c.solver.disc);
    fs::remove(stem.string() + ".csv");
    fs::remove(stem.string() + ".json");
    const auto s = game == "fence" ? fence_oracle(c) : benchmark_solution(c);
    std::printf("%s %zux%zu sweeps=%zu wall_ms=%.1f -> %s\n", game.c_str(), res[0], res[1], s.sweeps, s.wall_ms,
                stem.string().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incremental-sampling solvers for approach-evasion games"};
  app.require_subcommand(1);
  Common o;
  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const Common&);
  };
  const Sub subs[] = {
      {"solve", "run one solver and write its trace", cmd_solve},
      {"benchmark", "solve or fetch the cached reference grid", cmd_benchmark},
      {"compare", "error-vs-time comparison of multigrid, iGame and iGame*", cmd_compare},
      {"fence", "fence-escape snapshots against the oracle", cmd_fence},
      {"simulate", "outcome maps for successive pursuer checkpoints", cmd_simulate},
      {"oracle", "recompute the cached fence oracle and chauffeur benchmark", cmd_oracle},
  };
  for (const auto& s : subs) add_common(app.add_subcommand(s.name, s.help), o);
  CLI11_PARSE(app, argc, argv);
  try {
    for (const auto& s : subs)
      if (app.got_subcommand(s.name)) return s.fn(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
