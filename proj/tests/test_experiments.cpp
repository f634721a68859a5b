#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "igame/experiments.hpp"

using namespace igame;

namespace {

GridSolution<2> constant_grid(const GameDef<2>& g, double v) {
  GridSolution<2> s;
  s.lattice = Lattice<2>(g.domain, {21, 21});
  s.values.assign(s.lattice.size(), v);
  s.schedule = make_schedule(s.lattice.half_diagonal(), 1.0, 1.0, 0.0);
  return s;
}

std::size_t count_lines(const fs::path& p) {
  std::ifstream f(p);
  std::size_t n = 0;
  std::string line;
  while (std::getline(f, line)) ++n;
  return n;
}

fs::path scratch_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("igame_test_" + name);
  fs::remove_all(d);
  return d;
}

ExperimentConfig tiny_chauffeur() {
  auto c = config_from_json({{"game", "chauffeur"},
                             {"solver", {{"probes_per_axis", 64}}},
                             {"benchmark", {{"resolution", {30, 30}}}},
                             {"compare",
                              {{"multigrid_trials", 2},
                               {"igame_trials", 2},
                               {"igamestar_trials", 3},
                               {"multigrid_levels", {{10, 10}, {20, 20}}},
                               {"thresholds", {0.5, 0.3, 0.0}},
                               {"igame", {{"max_samples", 150}, {"max_seconds", 0}}},
                               {"igamestar", {{"max_samples", 150}, {"max_seconds", 0}}},
                               {"checkpoint_every", 50}}}});
  return c;
}

}  // namespace

TEST(Error, IdentityAndExtremes) {
  const auto g = make_homicidal_chauffeur();
  const GridField<2> zero(constant_grid(g, 0.0)), one(constant_grid(g, 1.0));
  const auto same = error_against_benchmark<2>(g, zero, zero, {100, 100});
  EXPECT_EQ(same.mean, 0.0);
  EXPECT_EQ(same.sup, 0.0);
  const auto far = error_against_benchmark<2>(g, one, zero, {100, 100});
  EXPECT_EQ(far.mean, 1.0);
  EXPECT_EQ(far.sup, 1.0);
  // Only probes in the disk and outside the capture square count.
  std::size_t expect = 0;
  const Lattice<2> lat(g.domain, {100, 100});
  for (SampleId i = 0; i < lat.size(); ++i) expect += g.in_free(lat.point(i)) && !g.in_goal(lat.point(i));
  EXPECT_EQ(far.count, expect);
}

TEST(Config, DefaultsOverridesAndErrors) {
  const auto c = config_from_json({{"game", "fence"}, {"seed", 9}, {"solver", {{"mode", "igamestar"}, {"D", 12}}}});
  EXPECT_EQ(c.game(), "fence");
  EXPECT_EQ(c.solver.seed, 9u);
  EXPECT_EQ(c.solver.mode, Mode::kIGameStar);
  EXPECT_EQ(c.solver.D, 12u);
  EXPECT_EQ(c.solver.disc.alpha_exp, 3.0);
  EXPECT_THROW(config_from_json({{"gmae", "fence"}}), std::invalid_argument);
  EXPECT_THROW(config_from_json({{"solver", {{"alpha", 1}}}}), std::invalid_argument);
  EXPECT_THROW(config_from_json({{"game", "tag"}}), std::invalid_argument);
  const auto back = config_from_json(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
  EXPECT_EQ(config_hash(back), config_hash(c));
  EXPECT_NE(config_hash(c), config_hash(default_config("fence")));
  const auto full = config_from_json({{"compare", {{"full_trials", true}}}});
  EXPECT_EQ(full.compare.trials_igamestar(), 100u);
  EXPECT_EQ(full.compare.trials_multigrid(), 5u);
}

TEST(Io, HashIsStable) {
  EXPECT_EQ(content_hash(""), "cbf29ce484222325");
  EXPECT_EQ(content_hash("a"), "af63dc4c8601ec8c");
}

TEST(Io, TraceFilesHaveFixedSchema) {
  const auto g = make_homicidal_chauffeur();
  auto c = default_config("chauffeur").solver;
  c.max_samples = 20;
  c.probes_per_axis = 32;
  const auto t = run<2>(g, c);
  const auto dir = scratch_dir("trace");
  write_trace<2>(dir, t);
  std::ifstream f(dir / "values_20.csv");
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "id,value,control,child,flag");
  EXPECT_EQ(count_lines(dir / "values_20.csv"), 21u);
  EXPECT_EQ(count_lines(dir / "samples.csv"), 21u);
  EXPECT_EQ(count_lines(dir / "schedule.csv"), t.checkpoints.size() + 1);
}

TEST(Cache, GridRoundTrip) {
  const auto dir = scratch_dir("cache");
  setenv("IGAME_CACHE_DIR", dir.c_str(), 1);
  auto c = tiny_chauffeur();
  bool hit = true;
  const auto a = benchmark_solution(c, &hit);
  EXPECT_FALSE(hit);
  const auto b = benchmark_solution(c, &hit);
  EXPECT_TRUE(hit);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.sweeps, b.sweeps);
  c.benchmark_tol = 1e-7;
  (void)benchmark_solution(c, &hit);
  EXPECT_FALSE(hit);
}

TEST(Comparison, ShapesThresholdsAndCensoring) {
  setenv("IGAME_CACHE_DIR", scratch_dir("cmp_cache").c_str(), 1);
  const auto c = tiny_chauffeur();
  const auto bench = benchmark_solution(c);
  const auto cmp = run_comparison(c, bench);
  std::size_t mg = 0, ig = 0, is = 0;
  for (const auto& r : cmp.rows) {
    mg += r.algo == "multigrid";
    ig += r.algo == "igame";
    is += r.algo == "igamestar";
    EXPECT_GE(r.error.mean, 0.0);
    EXPECT_LE(r.error.mean, 1.0);
  }
  EXPECT_EQ(mg, 2u * 2u);
  EXPECT_EQ(ig, 2u * 3u);
  EXPECT_EQ(is, 3u * 3u);
  for (const auto& t : cmp.table) {
    ASSERT_EQ(t.per_trial_ms.size(), t.trials);
    if (t.threshold == 0.0) {
      if (t.algo != "multigrid") {
        EXPECT_EQ(t.crossed, 0u);
        EXPECT_FALSE(t.uncensored_mean().has_value());
      }
    }
  }
  // Nested thresholds: a deeper one is never reached earlier.
  for (const std::string algo : {"multigrid", "igame", "igamestar"}) {
    const auto* loose = cmp.find(algo, 0.5);
    const auto* tight = cmp.find(algo, 0.3);
    ASSERT_TRUE(loose && tight);
    for (std::size_t i = 0; i < loose->trials; ++i)
      if (tight->per_trial_ms[i]) {
        ASSERT_TRUE(loose->per_trial_ms[i].has_value());
        EXPECT_LE(*loose->per_trial_ms[i], *tight->per_trial_ms[i]);
      }
  }
  const auto dir = scratch_dir("cmp");
  write_comparison(dir, cmp);
  EXPECT_EQ(count_lines(dir / "errors.csv"), cmp.rows.size() + 1);
  std::size_t crossings = 0;
  for (const auto& t : cmp.table) crossings += t.crossed;
  EXPECT_EQ(count_lines(dir / "time_to_error.csv"), crossings + 1);
}

TEST(FenceOracle, GeometrySanity) {
  setenv("IGAME_CACHE_DIR", scratch_dir("fence_cache").c_str(), 1);
  auto c = default_config("fence");
  c.fence.oracle_resolution = {200, 200};
  c.fence.oracle_tol = 1e-7;
  const auto oracle = fence_oracle(c);
  const GridField<2> f(oracle);
  EXPECT_LT(kruzkov_inverse(f.evaluate({0.0, 10.0})), 0.3);
  EXPECT_GT(f.evaluate({5.0, 5.0}), f.evaluate({0.0, 10.0}));
  const Lattice<2> probes(oracle.lattice.box(), {200, 200});
  double jump = 0.0;
  for (std::size_t i = 0; i + 1 < 200; ++i)
    for (std::size_t j = 0; j < 200; ++j) {
      const auto a = probes.point(static_cast<SampleId>(j * 200 + i));
      const auto b = probes.point(static_cast<SampleId>(j * 200 + i + 1));
      jump = std::max(jump, std::abs(f.evaluate(a) - f.evaluate(b)));
    }
  EXPECT_GT(jump, 0.2);
}
