#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "mfgf/core.hpp"
#include "mfgf/errors.hpp"
#include "mfgf/imprecise.hpp"
#include "mfgf/precise.hpp"
#include "mfgf/regions.hpp"
#include "test_support.hpp"

using namespace mfgf;

namespace {

const auto kIdentity = NonconformityMeasure::identity();
const auto kMeanDev = NonconformityMeasure::mean_abs_deviation();

FocalPartition two_point() { return focal_partition_numeric(Sample({4.0, 5.0}), kMeanDev, Bounds{0.0, 9.0}); }

IntervalSet open_iv(double a, double b) { return IntervalSet(Interval::open(a, b)); }

}  // namespace

TEST_CASE("belief and plausibility worked examples") {
  const auto p = two_point();
  CHECK(belief(p, open_iv(3.9, 5.1)) == doctest::Approx(1.0 / 3.0));
  CHECK(plausibility(p, open_iv(3.9, 5.1)) == doctest::Approx(2.0 / 3.0));
  CHECK(belief(p, open_iv(4.2, 4.4)) == 0.0);
  CHECK(plausibility(p, open_iv(4.2, 4.4)) == doctest::Approx(1.0 / 3.0));
  CHECK(belief(p, p.support()) == doctest::Approx(1.0));
  CHECK(plausibility(p, IntervalSet()) == 0.0);
  const auto iv = evaluate_event(p, open_iv(3.9, 5.1));
  CHECK(iv.belief == doctest::Approx(1.0 / 3.0));
  CHECK(iv.plausibility == doctest::Approx(2.0 / 3.0));
  CHECK_FALSE(iv.empty_regions_ignored);
}

TEST_CASE("empty regions contribute nothing and are flagged") {
  const auto p = focal_partition_numeric(Sample({4.0, 5.0}), kMeanDev, Bounds{4.1, 4.9});
  const auto iv = evaluate_event(p, IntervalSet::real_line());
  CHECK(iv.belief == doctest::Approx(1.0 / 3.0));
  CHECK(iv.plausibility == doctest::Approx(1.0 / 3.0));
  CHECK(iv.empty_regions_ignored);
}

TEST_CASE("credal check") {
  const auto p = focal_partition_identity(Sample({1.0, 2.0, 3.0}));
  const auto med = med_from_partition(p);
  CHECK(credal_check(p, med));

  // All mass on the first region.
  const MEDistribution concentrated({{1.0, 1.0}}, {}, Bounds{1.0, 3.0});
  CHECK_FALSE(credal_check(p, concentrated));

  // Halve region 2's density and give the difference to region 3.
  const MEDistribution skewed({{1.0, 0.25}, {3.0, 0.25}},
                              {{Interval::open(1.0, 2.0), 0.125}, {Interval::open(2.0, 3.0), 0.375}},
                              Bounds{1.0, 3.0});
  CHECK_FALSE(credal_check(p, skewed));

  const MEDistribution elsewhere({{0.0, 1.0}}, {}, Bounds{0.0, 3.0});
  CHECK_THROWS_AS(credal_check(p, elsewhere), InvalidInput);
}

TEST_CASE("random-event properties") {
  auto rng = testing::stream(17);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 0, 12);
    const Sample s(testing::random_distinct(rng, n));
    const auto& m = trial % 2 ? kMeanDev : kIdentity;
    const auto part = focal_partition(s, m);
    const auto med = med_from_partition(part);
    const double lo = part.kappa_min() - 1.0;
    const double hi = part.kappa_max() + 1.0;
    const auto support = part.support();
    const double unit = part.mass_per_region();
    for (int e = 0; e < 100; ++e) {
      const auto b = testing::random_event(rng, lo, hi);
      const double bel = belief(part, b);
      const double pl = plausibility(part, b);
      CHECK(bel <= pl);
      // Values on the lattice {0, 1/(n+1), ..., 1}.
      CHECK(std::abs(bel / unit - std::round(bel / unit)) < 1e-9);
      CHECK(std::abs(pl / unit - std::round(pl / unit)) < 1e-9);
      // Conjugacy relative to the truncated support.
      CHECK(bel + plausibility(part, b.complement(support)) == doctest::Approx(1.0).epsilon(1e-12));
      // Sandwich.
      const double pi = med_probability(med, b);
      CHECK(bel <= pi + 1e-12);
      CHECK(pi <= pl + 1e-12);
      // Monotone under enlargement.
      const auto bigger = b.unite(testing::random_event(rng, lo, hi));
      CHECK(bel <= belief(part, bigger));
      CHECK(pl <= plausibility(part, bigger));
    }
  }
}
