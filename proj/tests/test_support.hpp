#pragma once

// Seeded generators and small statistics helpers shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "mfgf/interval_set.hpp"
#include "mfgf/random.hpp"

namespace mfgf::testing {

inline RandomStream stream(std::uint64_t seed) { return make_stream(seed, 0x7e57, 0); }

/// n distinct values drawn uniformly from [lo, hi).
inline std::vector<double> random_distinct(RandomStream& rng, std::size_t n, double lo = -10.0,
                                           double hi = 10.0) {
  std::vector<double> xs;
  while (xs.size() < n) {
    const double x = lo + (hi - lo) * uniform01(rng);
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }
  return xs;
}

/// Union of 1..3 random intervals and points inside [lo, hi], with random
/// open/closed ends.
inline IntervalSet random_event(RandomStream& rng, double lo, double hi) {
  std::vector<Interval> pieces;
  const std::size_t count = 1 + uniform_index(rng, 0, 2);
  for (std::size_t i = 0; i < count; ++i) {
    double a = lo + (hi - lo) * uniform01(rng);
    double b = lo + (hi - lo) * uniform01(rng);
    if (a > b) std::swap(a, b);
    if (uniform01(rng) < 0.15) {
      pieces.push_back(Interval::point(a));
    } else {
      pieces.push_back({a, uniform01(rng) < 0.5, b, uniform01(rng) < 0.5});
    }
  }
  return IntervalSet::unite(std::move(pieces));
}

/// One-sample Kolmogorov-Smirnov distance; sorts xs in place.
inline double ks_distance(std::vector<double>& xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Two-sample Kolmogorov-Smirnov distance; sorts both inputs.
inline double ks_two_sample(std::vector<double>& a, std::vector<double>& b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace mfgf::testing
