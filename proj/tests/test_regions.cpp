#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "mfgf/core.hpp"
#include "mfgf/errors.hpp"
#include "mfgf/regions.hpp"
#include "test_support.hpp"

using namespace mfgf;

namespace {

const auto kIdentity = NonconformityMeasure::identity();
const auto kMeanDev = NonconformityMeasure::mean_abs_deviation();

FocalPartition two_point() { return focal_partition_numeric(Sample({4.0, 5.0}), kMeanDev, Bounds{0.0, 9.0}); }

// Sorted finite endpoints of all pieces of a set.
std::vector<double> endpoints(const IntervalSet& s) {
  std::vector<double> e;
  for (const auto& p : s.pieces()) {
    e.push_back(p.lo);
    if (p.hi != p.lo) e.push_back(p.hi);
  }
  return e;
}

}  // namespace

TEST_CASE("identity closed form") {
  SUBCASE("three points") {
    const auto p = focal_partition_identity(Sample({3.0, 1.0, 2.0}));
    REQUIRE(p.region_count() == 4);
    CHECK(p.region(1) == IntervalSet(Interval::point(1.0)));
    CHECK(p.region(2) == IntervalSet(Interval::open(1.0, 2.0)));
    CHECK(p.region(3) == IntervalSet(Interval::open(2.0, 3.0)));
    CHECK(p.region(4) == IntervalSet(Interval::point(3.0)));
    CHECK(p.kappa_min() == 1.0);
    CHECK(p.kappa_max() == 3.0);
    CHECK(p.mass_per_region() == doctest::Approx(0.25));
    CHECK_FALSE(p.has_empty_regions());
  }
  SUBCASE("two points") {
    const auto p = focal_partition_identity(Sample({4.0, 5.0}));
    CHECK(p.region(1) == IntervalSet(Interval::point(4.0)));
    CHECK(p.region(2) == IntervalSet(Interval::open(4.0, 5.0)));
    CHECK(p.region(3) == IntervalSet(Interval::point(5.0)));
  }
  SUBCASE("lengths") {
    const auto p = focal_partition_identity(Sample({0.0, 10.0}));
    CHECK(p.region(1).lebesgue() == 0.0);
    CHECK(p.region(2).lebesgue() == 10.0);
    CHECK(p.region(3).lebesgue() == 0.0);
  }
  CHECK_THROWS_AS(focal_partition_identity(Sample({1.0, 2.0, 1.0})), AssumptionViolated);
  CHECK_THROWS_AS(focal_partition_identity(Sample({1.0, 2.0})).region(0), InvalidInput);
  CHECK_THROWS_AS(focal_partition_identity(Sample({1.0, 2.0})).region(4), InvalidInput);
}

TEST_CASE("numeric partition reproduces the two-point mean-deviation geometry") {
  const auto p = two_point();
  const auto r1 = endpoints(p.region(1));
  const auto r2 = endpoints(p.region(2));
  const auto r3 = endpoints(p.region(3));
  REQUIRE(r1.size() == 2);
  REQUIRE(r2.size() == 4);
  REQUIRE(r3.size() == 4);
  CHECK(std::abs(r1[0] - 4.0) < 1e-8);
  CHECK(std::abs(r1[1] - 5.0) < 1e-8);
  const double want2[] = {3.0, 4.0, 5.0, 6.0};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(r2[i] - want2[i]) < 1e-8);
  const double want3[] = {0.0, 3.0, 6.0, 9.0};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(r3[i] - want3[i]) < 1e-8);
  // Interior boundaries are left open on both sides; only the bounds are closed.
  CHECK(p.region(1).pieces()[0].lo_open);
  CHECK(p.region(1).pieces()[0].hi_open);
  for (const auto& piece : p.region(2).pieces()) CHECK((piece.lo_open && piece.hi_open));
  CHECK_FALSE(p.region(3).pieces().front().lo_open);
  CHECK_FALSE(p.region(3).pieces().back().hi_open);
}

TEST_CASE("numeric partition on a window with a single rank") {
  const auto p = focal_partition_numeric(Sample({4.0, 5.0}), kMeanDev, Bounds{4.1, 4.9});
  CHECK(p.region(1).lebesgue() == doctest::Approx(0.8));
  CHECK(p.region(2).empty());
  CHECK(p.region(3).empty());
  CHECK(p.has_empty_regions());
  CHECK(p.empty_flags() == std::vector<bool>{false, true, true});
}

TEST_CASE("numeric partition input validation") {
  const Sample s({4.0, 5.0});
  CHECK_THROWS_AS(focal_partition_numeric(s, kMeanDev, Bounds{2.0, 1.0}), InvalidInput);
  CHECK_THROWS_AS(focal_partition_numeric(s, kMeanDev, Bounds{0.0, kInf}), InvalidInput);
  CHECK_THROWS_AS(focal_partition_numeric(s, kMeanDev, Bounds{0.0, 9.0}, GridOptions{3, 0.0}),
                  InvalidInput);
  CHECK_THROWS_AS(focal_partition_numeric(s, kMeanDev, Bounds{0.0, 9.0}, GridOptions{0, -1.0}),
                  InvalidInput);
}

TEST_CASE("default bounds") {
  const Sample s({1.0, 3.0, 2.0});
  const auto bi = default_bounds(s, kIdentity);
  CHECK(bi.kappa_min == 1.0);
  CHECK(bi.kappa_max == 3.0);
  const auto bm = default_bounds(s, kMeanDev);
  CHECK(bm.kappa_min == -1.0);
  CHECK(bm.kappa_max == 5.0);
  // Two points: one range each side would put the last rank change on the bound.
  const Sample two({4.0, 5.0});
  const auto b2 = default_bounds(two, kMeanDev);
  CHECK(b2.kappa_min == doctest::Approx(2.5));
  CHECK(b2.kappa_max == doctest::Approx(6.5));
  CHECK_FALSE(focal_partition(two, kMeanDev).has_empty_regions());
}

TEST_CASE("narrow mean-deviation regions are not skipped") {
  // 0.50000001 sits almost at the sample mean, so near the mean its score is
  // tiny and the rank-1 region is far narrower than the grid step.
  const Sample s({-1.0, 0.50000001, 2.0});
  const auto part = focal_partition(s, kMeanDev);
  CHECK_FALSE(part.has_empty_regions());
  CHECK(part.region(1).lebesgue() < 1e-6);
  CHECK(part.region(1).lebesgue() > 0.0);
}

TEST_CASE("cp sets on the two-point geometry") {
  const auto p = two_point();
  const auto o1 = cp_set(p, 1);
  REQUIRE(o1.pieces().size() == 1);
  CHECK(o1.lebesgue() == doctest::Approx(1.0));
  const auto o2 = cp_set(p, 2);
  CHECK(o2.lebesgue() == doctest::Approx(3.0));
  CHECK(std::abs(o2.pieces().front().lo - 3.0) < 1e-8);
  CHECK(std::abs(o2.pieces().back().hi - 6.0) < 1e-8);
  CHECK(cp_set(p, 3).lebesgue() == doctest::Approx(9.0));
  CHECK_THROWS_AS(cp_set(p, 0), InvalidInput);
  CHECK_THROWS_AS(cp_set(p, 4), InvalidInput);
}

TEST_CASE("prediction sets") {
  const Sample s({4.0, 5.0});
  const auto p = two_point();
  CHECK(prediction_set(s, kMeanDev, 0.5, p) == cp_set(p, 2));
  CHECK(prediction_set(s, kMeanDev, 0.9, p) == cp_set(p, 1));
  CHECK(prediction_set(s, kMeanDev, 0.2, p).lebesgue() == doctest::Approx(9.0));
  CHECK(prediction_rank(2, 0.5) == 2);
  CHECK(prediction_rank(2, 0.9) == 1);
  CHECK(prediction_rank(2, 0.2) == 3);
  CHECK(prediction_rank(10, 0.001) == 11);
  CHECK_THROWS_AS(prediction_set(s, kMeanDev, 0.0, p), InvalidInput);
  CHECK_THROWS_AS(prediction_set(s, kMeanDev, 1.0, p), InvalidInput);
  CHECK_THROWS_AS(prediction_set(Sample({1.0, 2.0, 3.0}), kMeanDev, 0.5, p), InvalidInput);
}

TEST_CASE("prediction set agrees with the transducer at region midpoints") {
  auto rng = testing::stream(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 0, 10);
    const Sample s(testing::random_distinct(rng, n));
    for (const auto& m : {kIdentity, kMeanDev}) {
      const auto part = focal_partition(s, m);
      for (double alpha : {0.05, 0.2, 0.5, 0.8}) {
        const auto ps = prediction_set(s, m, alpha, part);
        for (const auto& region : part.regions()) {
          for (const auto& piece : region.pieces()) {
            if (piece.is_point()) continue;
            const double mid = 0.5 * (piece.lo + piece.hi);
            CHECK(ps.contains(mid) == (transducer(s, m, mid) > alpha));
          }
        }
      }
    }
  }
}

TEST_CASE("partition invariants on random samples") {
  auto rng = testing::stream(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 0, 15);
    const Sample s(testing::random_distinct(rng, n));
    for (const auto& m : {kIdentity, kMeanDev}) {
      const auto part = focal_partition(s, m);
      REQUIRE(part.region_count() == n + 1);
      CHECK_FALSE(part.has_empty_regions());
      double total = 0.0;
      for (std::size_t v = 1; v <= n + 1; ++v) {
        total += part.region(v).lebesgue();
        for (std::size_t w = v + 1; w <= n + 1; ++w) {
          CHECK_FALSE(part.region(v).intersects(part.region(w)));
        }
      }
      CHECK(total == doctest::Approx(part.kappa_max() - part.kappa_min()).epsilon(1e-9));
      for (std::size_t k = 1; k <= n; ++k) CHECK(cp_set(part, k).subset_of(cp_set(part, k + 1)));
      CHECK(prediction_set(s, m, 0.4, part).subset_of(prediction_set(s, m, 0.1, part)));
      CHECK(prediction_set(s, m, 0.9, part).subset_of(prediction_set(s, m, 0.4, part)));
      // Region midpoints carry the rank of their region.
      for (std::size_t v = 1; v <= n + 1; ++v) {
        for (const auto& piece : part.region(v).pieces()) {
          if (piece.is_point()) continue;
          CHECK(candidate_rank(s, m, 0.5 * (piece.lo + piece.hi)) == v);
        }
      }
    }
  }
}

TEST_CASE("numeric identity partition matches the closed form") {
  // The strict rank of Y_(n) is n, so the scan places the upper endpoint in
  // region n and leaves region n+1 empty; the closed form instead puts the
  // point {Y_(n)} in region n+1. Interior boundaries must agree.
  auto rng = testing::stream(9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 0, 18);
    const Sample s(testing::random_distinct(rng, n));
    const auto exact = focal_partition_identity(s);
    const auto numeric = focal_partition_numeric(s, kIdentity, exact.bounds());
    const double tol = 1e-10 * (exact.kappa_max() - exact.kappa_min()) * 1.0001;
    CHECK(numeric.region(1) == exact.region(1));
    for (std::size_t v = 2; v <= n; ++v) {
      const auto& a = exact.region(v).pieces();
      const auto& b = numeric.region(v).pieces();
      REQUIRE(b.size() >= 1);
      CHECK(std::abs(a.front().lo - b.front().lo) <= tol);
      CHECK(std::abs(a.back().hi - b.back().hi) <= tol);
      CHECK(std::abs(exact.region(v).lebesgue() - numeric.region(v).lebesgue()) <= 2 * tol);
    }
    CHECK(numeric.region(n + 1).empty());
    CHECK(numeric.region(n).contains(exact.kappa_max()));
  }
}

TEST_CASE("numeric identity on three points") {
  const Sample s({1.0, 2.0, 3.0});
  const auto p = focal_partition_numeric(s, kIdentity, Bounds{1.0, 3.0});
  CHECK(p.region(1) == IntervalSet(Interval::point(1.0)));
  CHECK(std::abs(p.region(2).pieces().front().hi - 2.0) < 1e-9);
  CHECK(std::abs(p.region(3).pieces().front().lo - 2.0) < 1e-9);
}
