#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "mfgf/core.hpp"
#include "mfgf/errors.hpp"
#include "test_support.hpp"

using namespace mfgf;

namespace {

const auto kIdentity = NonconformityMeasure::identity();
const auto kMeanDev = NonconformityMeasure::mean_abs_deviation();

}  // namespace

TEST_CASE("sample validation") {
  CHECK_THROWS_AS(Sample({1.0}), InvalidInput);
  CHECK_THROWS_AS(Sample({1.0, std::nan("")}), InvalidInput);
  CHECK_THROWS_AS(Sample({1.0, std::numeric_limits<double>::infinity()}), InvalidInput);
  const Sample s({3.0, 1.0, 2.0});
  CHECK(s.size() == 3);
  CHECK(s.sum() == 6.0);
  CHECK(s.min() == 1.0);
  CHECK(s.max() == 3.0);
  CHECK(s.strictly_distinct());
  CHECK(s.sorted() == std::vector<double>{1.0, 2.0, 3.0});
  CHECK_FALSE(Sample({1.0, 2.0, 1.0}).strictly_distinct());
}

TEST_CASE("measure names") {
  CHECK(measure_from_name("identity").kind() == MeasureKind::Identity);
  CHECK(measure_from_name("meandev").kind() == MeasureKind::MeanAbsDeviation);
  CHECK(measure_from_name("mean-abs-deviation").kind() == MeasureKind::MeanAbsDeviation);
  CHECK_THROWS_AS(measure_from_name("median"), InvalidInput);
}

TEST_CASE("compute_scores worked examples") {
  SUBCASE("mean deviation at 4.5") {
    const auto sv = compute_scores(Sample({4.0, 5.0}), 4.5, kMeanDev);
    REQUIRE(sv.scores.size() == 3);
    CHECK(sv.scores[0] == doctest::Approx(0.75));
    CHECK(sv.scores[1] == doctest::Approx(0.75));
    CHECK(sv.scores[2] == doctest::Approx(0.0));
    CHECK(rank_of_candidate(sv) == 1);
  }
  SUBCASE("identity") {
    const auto sv = compute_scores(Sample({1.0, 2.0, 3.0}), 7.0, kIdentity);
    CHECK(sv.scores == std::vector<double>{1.0, 2.0, 3.0, 7.0});
    CHECK(sv.candidate == 7.0);
    CHECK(rank_of_candidate(sv) == 4);
  }
  SUBCASE("mean deviation at 3.5") {
    const auto sv = compute_scores(Sample({4.0, 5.0}), 3.5, kMeanDev);
    CHECK(sv.scores[0] == doctest::Approx(0.25));
    CHECK(sv.scores[1] == doctest::Approx(1.25));
    CHECK(sv.scores[2] == doctest::Approx(1.0));
    CHECK(rank_of_candidate(sv) == 2);
  }
  CHECK_THROWS_AS(compute_scores(Sample({1.0, 2.0}), std::nan(""), kIdentity), InvalidInput);
  CHECK_THROWS_AS(compute_scores(Sample({1.0, 2.0}), INFINITY, kMeanDev), InvalidInput);
}

TEST_CASE("custom measure sees the bag of the other values") {
  // Distance to the bag median; order of the bag must not matter.
  const auto median_dist = NonconformityMeasure::custom(
      [](std::span<const double> bag, double v) {
        std::vector<double> b(bag.begin(), bag.end());
        std::sort(b.begin(), b.end());
        const std::size_t m = b.size();
        const double med = m % 2 ? b[m / 2] : 0.5 * (b[m / 2 - 1] + b[m / 2]);
        return std::abs(v - med);
      },
      "median-distance");
  const auto sv = compute_scores(Sample({1.0, 2.0, 10.0}), 3.0, median_dist);
  CHECK(sv.scores[0] == doctest::Approx(2.0));  // bag {2,10,3} -> 3
  CHECK(sv.scores[3] == doctest::Approx(1.0));  // bag {1,2,10} -> 2
  CHECK(candidate_rank(Sample({1.0, 2.0, 10.0}), median_dist, 3.0) == rank_of_candidate(sv));
}

TEST_CASE("transducer worked examples") {
  const Sample s({4.0, 5.0});
  CHECK(transducer(s, kMeanDev, 4.5) == doctest::Approx(1.0));
  CHECK(transducer(s, kMeanDev, 3.5) == doctest::Approx(2.0 / 3.0));
  CHECK(transducer(s, kMeanDev, 5.5) == doctest::Approx(2.0 / 3.0));
  CHECK(transducer(s, kMeanDev, 7.0) == doctest::Approx(1.0 / 3.0));
  CHECK(transducer(s, kMeanDev, 2.0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("pvalue pmf given bag") {
  const std::vector<std::size_t> uniform{1, 1, 1};
  auto pmf = pvalue_pmf_given_bag(uniform);
  REQUIRE(pmf.size() == 3);
  for (std::size_t k = 1; k <= 3; ++k) CHECK(pmf.at(k) == doctest::Approx(1.0 / 3.0));

  const std::vector<std::size_t> two_one{2, 1};
  pmf = pvalue_pmf_given_bag(two_one);
  REQUIRE(pmf.size() == 2);
  CHECK(pmf.at(3) == doctest::Approx(2.0 / 3.0));
  CHECK(pmf.at(1) == doctest::Approx(1.0 / 3.0));

  const std::vector<std::size_t> all_tied{3};
  pmf = pvalue_pmf_given_bag(all_tied);
  REQUIRE(pmf.size() == 1);
  CHECK(pmf.at(3) == doctest::Approx(1.0));

  CHECK_THROWS_AS(pvalue_pmf_given_bag(std::vector<std::size_t>{}), InvalidInput);
  CHECK_THROWS_AS(pvalue_pmf_given_bag(std::vector<std::size_t>{2, 0}), InvalidInput);
}

TEST_CASE("pmf matches brute-force enumeration of orderings") {
  // Bags of scores with ties, n+1 <= 5: place each score last in turn and
  // count #{i : t_i >= t_last}, weighting all (n+1)! orderings equally.
  auto rng = testing::stream(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t size = 2 + uniform_index(rng, 0, 3);
    std::vector<double> bag(size);
    for (double& t : bag) t = static_cast<double>(uniform_index(rng, 0, 3));
    std::sort(bag.begin(), bag.end());

    std::map<std::size_t, double> brute;
    std::vector<std::size_t> perm(size);
    std::iota(perm.begin(), perm.end(), 0);
    double total = 0.0;
    do {
      const double last = bag[perm.back()];
      std::size_t c = 0;
      for (std::size_t i : perm) c += bag[i] >= last ? 1 : 0;
      brute[c] += 1.0;
      total += 1.0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (auto& [k, p] : brute) p /= total;

    std::vector<std::size_t> mult;
    for (std::size_t i = 0; i < size;) {
      std::size_t j = i;
      while (j < size && bag[j] == bag[i]) ++j;
      mult.push_back(j - i);
      i = j;
    }
    const auto pmf = pvalue_pmf_given_bag(mult);
    REQUIRE(pmf.size() == brute.size());
    for (const auto& [k, p] : brute) CHECK(pmf.at(k) == doctest::Approx(p).epsilon(1e-12));
  }
}

TEST_CASE("identity rank steps by one at each data value") {
  auto rng = testing::stream(21);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 0, 20);
    const Sample s(testing::random_distinct(rng, n));
    const auto ys = s.sorted();
    CHECK(candidate_rank(s, kIdentity, ys.front() - 1.0) == 1);
    for (std::size_t i = 0; i < n; ++i) {
      // Just above y_(i+1) the rank is i+2; at y_(i+1) itself the tie does not count.
      CHECK(candidate_rank(s, kIdentity, ys[i]) == i + 1);
      const double above = i + 1 < n ? 0.5 * (ys[i] + ys[i + 1]) : ys[i] + 1.0;
      CHECK(candidate_rank(s, kIdentity, above) == i + 2);
    }
  }
}

TEST_CASE("transducer equals (n+2-rank)/(n+1) without ties") {
  auto rng = testing::stream(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 0, 15);
    const Sample s(testing::random_distinct(rng, n));
    const double y = -12.0 + 24.0 * uniform01(rng);
    for (const auto& m : {kIdentity, kMeanDev}) {
      const auto sv = compute_scores(s, y, m);
      auto sorted = sv.scores;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      const double expected =
          static_cast<double>(n + 2 - rank_of_candidate(sv)) / static_cast<double>(n + 1);
      CHECK(transducer(s, m, y) == doctest::Approx(expected).epsilon(1e-15));
    }
  }
}

TEST_CASE("permutation invariance") {
  auto rng = testing::stream(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 0, 12);
    auto xs = testing::random_distinct(rng, n);
    const double y = -12.0 + 24.0 * uniform01(rng);
    const Sample a(xs);
    std::shuffle(xs.begin(), xs.end(), rng);
    const Sample b(xs);
    for (const auto& m : {kIdentity, kMeanDev}) {
      auto sa = compute_scores(a, y, m).scores;
      auto sb = compute_scores(b, y, m).scores;
      CHECK(sa.back() == doctest::Approx(sb.back()).epsilon(1e-13));
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      for (std::size_t i = 0; i < sa.size(); ++i) {
        CHECK(sa[i] == doctest::Approx(sb[i]).epsilon(1e-12));
      }
      CHECK(candidate_rank(a, m, y) == candidate_rank(b, m, y));
      CHECK(transducer(a, m, y) == transducer(b, m, y));
    }
  }
}

TEST_CASE("fast rank path agrees with the materialised score vector") {
  auto rng = testing::stream(51);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 0, 30);
    const Sample s(testing::random_distinct(rng, n, -5.0, 5.0));
    const double y = -8.0 + 16.0 * uniform01(rng);
    for (const auto& m : {kIdentity, kMeanDev}) {
      const auto sv = compute_scores(s, y, m);
      CHECK(candidate_rank(s, m, y) == rank_of_candidate(sv));
      CHECK(conformity_count(sv) * 1.0 / static_cast<double>(n + 1) == transducer(s, m, y));
    }
  }
}
