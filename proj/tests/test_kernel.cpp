#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "igame/discretization.hpp"
#include "igame/games.hpp"
#include "igame/kruzkov.hpp"
#include "igame/operator.hpp"
#include "igame/random.hpp"
#include "igame/sample_cloud.hpp"

using namespace igame;

namespace {

// Plain-loop operator over an explicit point list; the oracle for
// value_update. `combine` maps the inner saddle value to the result.
template <class Combine>
double brute_operator(const GameDef<2>& g, const std::vector<Point<2>>& pts, const std::vector<double>& v,
                      const Point<2>& x, const Schedule& s, const ControlPool& U, const ControlPool& W,
                      double empty, Combine combine) {
  double outer = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < W.size(); ++j) {
    double inner = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < U.size(); ++i) {
      const auto f = g.dynamics(x, U[i], W[j]);
      const Point<2> c{x[0] + s.h * f[0], x[1] + s.h * f[1]};
      double m = empty;
      bool any = false;
      for (std::size_t k = 0; k < pts.size(); ++k)
        if (squared_distance(pts[k], c) <= s.dilation * s.dilation) {
          m = any ? std::min(m, v[k]) : v[k];
          any = true;
        }
      inner = std::min(inner, m);
    }
    outer = std::max(outer, inner);
  }
  return combine(outer);
}

struct Frozen {
  GameDef<2> game;
  SampleCloud<2> cloud;
  std::vector<Point<2>> pts;
  Schedule sched;
  ControlPool U, W;
};

Frozen frozen_cloud(GameDef<2> g, std::size_t n, std::uint64_t seed, const Discretization& disc) {
  Frozen f{g, SampleCloud<2>(g.domain, g.in_free), {}, {}, g.default_angel_pool(), g.default_demon_pool()};
  Rng rng(seed);
  while (f.pts.size() < n) {
    const auto p = rng.point(g.domain);
    if (f.cloud.insert(p)) f.pts.push_back(p);
  }
  f.sched = disc.schedule(g, f.cloud.dispersion());
  f.cloud.tune_index(f.sched.dilation);
  return f;
}

std::vector<double> apply_operator(const Frozen& f, const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (SampleId x = 0; x < v.size(); ++x)
    out[x] = value_update(f.game, f.pts[x], std::span<const double>(v), f.sched, f.U, f.W, f.cloud).value;
  return out;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Discretization chauffeur_disc() {
  Discretization d;
  d.alpha_exp = 0.5;
  d.speed_bound = 2.0;
  d.lipschitz = 0.0;
  return d;
}

}  // namespace

TEST(Schedule, Formulas) {
  const auto s = make_schedule(0.04, 1.0, 2.0, 3.0);
  EXPECT_NEAR(s.h, 0.2, 1e-15);
  EXPECT_NEAR(s.kappa, 0.16, 1e-15);
  EXPECT_NEAR(s.dilation, 2 * 0.04 + 3 * 0.2 * 0.04 + 2 * 3 * 0.04, 1e-15);
  EXPECT_NEAR(s.goal_halo, 2 * 0.2 + 0.04, 1e-15);
  EXPECT_NEAR(s.discount(), std::exp(-0.16), 1e-15);
}

TEST(Schedule, ClampsLargeDispersion) {
  const auto s = make_schedule(2.0, 1.0, 1.0, 0.0);
  EXPECT_NEAR(s.h, 2.002, 1e-12);
  EXPECT_GT(s.kappa, 0.0);
  EXPECT_THROW(make_schedule(0.0, 1.0, 1.0, 0.0), std::domain_error);
  EXPECT_THROW(make_schedule(0.1, 0.0, 1.0, 0.0), std::domain_error);
}

TEST(Operator, MatchesBruteForce) {
  const auto f = frozen_cloud(make_homicidal_chauffeur(), 400, 21, chauffeur_disc());
  Rng rng(22);
  std::vector<double> v(f.pts.size());
  for (auto& x : v) x = rng.uniform(0.0, 1.0);
  const auto out = apply_operator(f, v);
  const double disc = f.sched.discount();
  for (SampleId x = 0; x < v.size(); ++x) {
    const double expect = brute_operator(f.game, f.pts, v, f.pts[x], f.sched, f.U, f.W, 1.0,
                                         [&](double m) { return 1.0 - disc * (1.0 - m); });
    EXPECT_DOUBLE_EQ(out[x], expect) << "sample " << x;
  }
}

TEST(Operator, EmptyBallCountsAsOne) {
  const auto g = make_line_game([] {
    ControlPool p(1);
    p.add({1.0});
    return p;
  }());
  SampleCloud<1> cloud(g.domain, g.in_free);
  ASSERT_TRUE(cloud.insert({0.9}).has_value());
  const auto s = make_schedule(0.01, 1.0, 1.0, 0.0);
  const std::vector<double> v{0.0};
  const auto r = value_update(g, {0.9}, std::span<const double>(v), s, g.default_angel_pool(),
                              g.default_demon_pool(), cloud);
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_EQ(r.child, kNoSample);
  EXPECT_THROW(value_update(g, {0.9}, std::span<const double>(v), s, ControlPool(1), g.default_demon_pool(), cloud),
               std::domain_error);
}

TEST(Operator, PicksDownhillControlAndLowestIdOnTies) {
  ControlPool U(1);
  U.add({-1.0});
  U.add({1.0});
  const auto g = make_line_game(U);
  SampleCloud<1> cloud(g.domain, g.in_free);
  for (double x : {0.3, 0.5, 0.7}) ASSERT_TRUE(cloud.insert({x}).has_value());
  const auto s = make_schedule(0.04, 1.0, 1.0, 0.0);  // h = 0.2, dilation = 0.08
  {
    const std::vector<double> v{0.2, 0.5, 0.8};
    const auto r = value_update(g, {0.5}, std::span<const double>(v), s, U, g.default_demon_pool(), cloud);
    EXPECT_EQ(r.control, 0u);
    EXPECT_EQ(r.child, 0u);
    EXPECT_NEAR(r.value, 1.0 - std::exp(-0.16) * 0.8, 1e-15);
  }
  {
    const std::vector<double> v{0.4, 0.5, 0.4};
    const auto r = value_update(g, {0.5}, std::span<const double>(v), s, U, g.default_demon_pool(), cloud);
    EXPECT_EQ(r.child, 0u);
    EXPECT_EQ(r.control, 0u);
  }
}

TEST(Operator, ValuesStayInUnitInterval) {
  const auto f = frozen_cloud(make_fence_escape(), 300, 23, Discretization{});
  Rng rng(24);
  std::vector<double> v(f.pts.size());
  for (int round = 0; round < 5; ++round) {
    for (auto& x : v) x = rng.uniform(0.0, 1.0);
    for (int k = 0; k < 3; ++k) v = apply_operator(f, v);
    for (double x : v) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
  }
}

TEST(Operator, Contraction) {
  const auto f = frozen_cloud(make_fence_escape(), 300, 25, Discretization{});
  Rng rng(26);
  const double factor = f.sched.discount();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(f.pts.size()), b(f.pts.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = rng.uniform(0.0, 1.0);
      b[i] = rng.uniform(0.0, 1.0);
    }
    EXPECT_LE(sup_diff(apply_operator(f, a), apply_operator(f, b)), factor * sup_diff(a, b) + 1e-12);
  }
}

TEST(Operator, ConjugateToTimeOperator) {
  const auto f = frozen_cloud(make_homicidal_chauffeur(), 300, 27, chauffeur_disc());
  Rng rng(28);
  const double inf = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> T(f.pts.size()), v(f.pts.size());
    for (std::size_t i = 0; i < T.size(); ++i) {
      T[i] = rng.uniform(0.0, 5.0);
      v[i] = kruzkov(T[i]);
    }
    const auto Fv = apply_operator(f, v);
    for (SampleId x = 0; x < T.size(); ++x) {
      const double GT = brute_operator(f.game, f.pts, T, f.pts[x], f.sched, f.U, f.W, inf,
                                       [&](double m) { return f.sched.kappa + m; });
      EXPECT_NEAR(Fv[x], kruzkov(GT), 1e-10);
    }
  }
}

TEST(Interpolation, NonExpansive) {
  Rng rng(29);
  const Box<2> box{{0.0, 0.0}, {1.0, 1.0}};
  SampleCloud<2> cloud(box, [](const Point<2>&) { return true; });
  while (cloud.size() < 500) (void)cloud.insert(rng.point(box));
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(cloud.size()), b(cloud.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = rng.uniform(0.0, 1.0);
      b[i] = std::clamp(a[i] + rng.uniform(-0.3, 0.3), 0.0, 1.0);
    }
    const Point<2> c = rng.point(box);
    const double r = rng.uniform(0.05, 0.3);
    const auto ma = ball_argmin<2>(cloud, c, r, std::span<const double>(a), a.size());
    const auto mb = ball_argmin<2>(cloud, c, r, std::span<const double>(b), b.size());
    ASSERT_EQ(ma.found(), mb.found());
    if (ma.found()) {
      EXPECT_LE(std::abs(ma.value - mb.value), sup_diff(a, b));
    }
  }
}

TEST(Interpolation, NewSampleAtOneChangesNothing) {
  Rng rng(30);
  const Box<2> box{{0.0, 0.0}, {1.0, 1.0}};
  for (int trial = 0; trial < 20; ++trial) {
    SampleCloud<2> cloud(box, [](const Point<2>&) { return true; });
    while (cloud.size() < 300) (void)cloud.insert(rng.point(box));
    const std::size_t prev = cloud.size();
    const double alpha = 2.01 * cloud.dispersion();
    std::vector<double> v(prev);
    for (auto& x : v) x = rng.uniform(0.0, 1.0);
    (void)cloud.insert(rng.point(box));
    v.push_back(1.0);
    for (int k = 0; k < 50; ++k) {
      const auto c = rng.point(box);
      const auto with = ball_argmin<2>(cloud, c, alpha, std::span<const double>(v), v.size());
      const auto without = ball_argmin<2>(cloud, c, alpha, std::span<const double>(v), prev);
      ASSERT_TRUE(without.found());
      EXPECT_EQ(with.value, without.value);
    }
  }
}

TEST(Discretization, ClassifiesAndFixesValues) {
  const auto g = make_homicidal_chauffeur();
  const auto d = chauffeur_disc();
  const auto s = d.schedule(g, 0.02);
  EXPECT_EQ(d.classify(g, {0.0, 0.0}, s), NodeKind::kGoal);
  EXPECT_EQ(d.classify(g, {1.1, 0.0}, s), NodeKind::kBlocked);
  EXPECT_EQ(d.classify(g, {0.06, 0.0}, s), NodeKind::kHalo);
  EXPECT_EQ(d.classify(g, {0.6, 0.0}, s), NodeKind::kActive);
  EXPECT_EQ(d.fixed_value(g, {0.0, 0.0}, NodeKind::kGoal), 0.0);
  EXPECT_EQ(d.fixed_value(g, {1.1, 0.0}, NodeKind::kBlocked), 1.0);
  EXPECT_NEAR(d.fixed_value(g, {0.07, 0.0}, NodeKind::kHalo), kruzkov(0.01), 1e-15);
  Discretization t = d;
  t.halo_rule = HaloRule::kTarget;
  EXPECT_EQ(t.fixed_value(g, {0.07, 0.0}, NodeKind::kHalo), 0.0);
  EXPECT_THROW(d.fixed_value(g, {0.6, 0.0}, NodeKind::kActive), std::logic_error);
  EXPECT_EQ(halo_rule_from_string(to_string(HaloRule::kTarget)), HaloRule::kTarget);
  EXPECT_THROW(halo_rule_from_string("none"), std::invalid_argument);
}
