#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "igame/dispersion.hpp"
#include "igame/lattice.hpp"
#include "igame/random.hpp"
#include "igame/sample_cloud.hpp"

using namespace igame;

namespace {

const Box<2> kUnit{{0.0, 0.0}, {1.0, 1.0}};

bool everywhere(const Point<2>&) { return true; }

std::vector<SampleId> brute_ball(const std::vector<Point<2>>& pts, const Point<2>& c, double r) {
  std::vector<SampleId> ids;
  for (SampleId i = 0; i < pts.size(); ++i)
    if (squared_distance(pts[i], c) <= r * r) ids.push_back(i);
  return ids;
}

// Largest nearest-sample distance over a fine probe lattice: a lower
// estimate of the true dispersion.
double fine_dispersion(const std::vector<Point<2>>& pts, const Box<2>& box, std::size_t per_axis) {
  double worst = 0.0;
  for (std::size_t i = 0; i < per_axis; ++i)
    for (std::size_t j = 0; j < per_axis; ++j) {
      const Point<2> p{box.lo[0] + (i + 0.5) * box.extent(0) / per_axis,
                       box.lo[1] + (j + 0.5) * box.extent(1) / per_axis};
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : pts) best = std::min(best, squared_distance(p, q));
      worst = std::max(worst, std::sqrt(best));
    }
  return worst;
}

}  // namespace

TEST(SampleCloud, BallQueryMatchesBruteForce) {
  Rng rng(11);
  SampleCloud<2> cloud(kUnit, everywhere);
  std::vector<Point<2>> pts;
  for (int i = 0; i < 2000; ++i) {
    const auto p = rng.point(kUnit);
    ASSERT_TRUE(cloud.insert(p).has_value());
    pts.push_back(p);
  }
  for (double r : {0.01, 0.05, 0.2, 0.9}) {
    cloud.tune_index(r);
    for (int k = 0; k < 100; ++k) {
      const Point<2> c{rng.uniform(-0.2, 1.2), rng.uniform(-0.2, 1.2)};
      EXPECT_EQ(cloud.ball_query(c, r), brute_ball(pts, c, r));
    }
  }
}

TEST(SampleCloud, BoundaryDistanceIsInside) {
  SampleCloud<2> cloud(kUnit, everywhere);
  ASSERT_TRUE(cloud.insert({0.5, 0.5}).has_value());
  ASSERT_TRUE(cloud.insert({0.75, 0.5}).has_value());
  EXPECT_EQ(cloud.ball_query({0.5, 0.5}, 0.25), (std::vector<SampleId>{0, 1}));
}

TEST(SampleCloud, InsertContracts) {
  SampleCloud<2> cloud(kUnit, everywhere);
  EXPECT_DOUBLE_EQ(cloud.dispersion(), kUnit.diameter());
  const auto id = cloud.insert({0.3, 0.4});
  ASSERT_TRUE(id.has_value());
  EXPECT_EQ(*id, 0u);
  EXPECT_FALSE(cloud.insert({0.3, 0.4}).has_value());
  EXPECT_EQ(cloud.size(), 1u);
  EXPECT_THROW((void)cloud.insert({1.5, 0.4}), std::domain_error);
  EXPECT_THROW(cloud.ball_query({0.0, 0.0}, 0.0), std::domain_error);
}

TEST(SampleCloud, DispersionBoundIsSoundAndTight) {
  Rng rng(12);
  SampleCloud<2> cloud(kUnit, everywhere);
  std::vector<Point<2>> pts;
  double prev = cloud.dispersion();
  for (int n = 1; n <= 600; ++n) {
    const auto p = rng.point(kUnit);
    ASSERT_TRUE(cloud.insert(p).has_value());
    pts.push_back(p);
    EXPECT_LE(cloud.dispersion(), prev);
    prev = cloud.dispersion();
    if (n % 50 == 0) {
      const double oracle = fine_dispersion(pts, kUnit, 256);
      EXPECT_GE(cloud.dispersion(), oracle);
      if (n >= 100) {
        EXPECT_LE(cloud.dispersion(), 1.5 * oracle) << "n=" << n;
      }
    }
  }
}

TEST(SampleCloud, DispersionIgnoresBlockedProbes) {
  // Free set: left half of the box. Samples there alone cover it.
  const auto left = [](const Point<2>& p) { return p[0] <= 0.5; };
  SampleCloud<2> cloud(kUnit, left, CloudOptions{32});
  Rng rng(13);
  std::vector<Point<2>> pts;
  while (pts.size() < 400) {
    const Point<2> p{rng.uniform(0.0, 0.5), rng.uniform(0.0, 1.0)};
    ASSERT_TRUE(cloud.insert(p).has_value());
    pts.push_back(p);
  }
  EXPECT_LT(cloud.dispersion(), 0.2);
}

TEST(Dispersion, BoundsFormula) {
  const auto [lo, hi] = dispersion_bounds(10000.0, 2, 2.0, 0.1);
  EXPECT_NEAR(lo, 0.001, 1e-15);
  EXPECT_NEAR(hi, 2.0 * std::sqrt(std::log(10000.0) / 10000.0), 1e-15);
  EXPECT_THROW(dispersion_bounds(1.0, 2, 1.0, 1.0), std::domain_error);
  const double Ds = upper_constant_for_gamma(2.5, 2, 1.0);
  EXPECT_NEAR(M_PI * Ds * Ds, 2.5, 1e-12);
}

TEST(Lattice, BallEnumerationMatchesBruteForce) {
  const Lattice<2> lat(Box<2>{{-1.0, 0.0}, {2.0, 1.0}}, {31, 11});
  std::vector<Point<2>> pts;
  for (SampleId i = 0; i < lat.size(); ++i) pts.push_back(lat.point(i));
  EXPECT_NEAR(lat.half_diagonal(), 0.5 * std::sqrt(0.01 + 0.01), 1e-12);
  Rng rng(14);
  for (int k = 0; k < 300; ++k) {
    const Point<2> c{rng.uniform(-1.5, 2.5), rng.uniform(-0.5, 1.5)};
    const double r = rng.uniform(0.0, 0.5);
    std::vector<SampleId> got;
    lat.for_each_in_ball(c, r, [&](SampleId id, const Point<2>&) { got.push_back(id); });
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, brute_ball(pts, c, r));
  }
  // A ball centered on a node at exactly one spacing reaches its neighbors.
  std::vector<SampleId> got;
  lat.for_each_in_ball(lat.point(40), 0.1, [&](SampleId id, const Point<2>&) { got.push_back(id); });
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, brute_ball(pts, lat.point(40), 0.1));
  EXPECT_EQ(got.size(), 5u);
}

TEST(Lattice, RejectsDegenerateShapes) {
  EXPECT_THROW(Lattice<2>(kUnit, {1, 5}), std::domain_error);
}
