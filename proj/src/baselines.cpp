#include "mfgf/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mfgf/errors.hpp"

namespace mfgf {

LomaxPredictive lomax_fit(const Sample& sample, double prior_shape, double prior_rate) {
  if (!(prior_shape > 0.0) || !(prior_rate > 0.0) || !std::isfinite(prior_shape) ||
      !std::isfinite(prior_rate)) {
    throw InvalidInput("gamma prior shape and rate must be positive and finite");
  }
  for (double y : sample.values()) {
    if (y < 0.0) throw InvalidInput("exponential model needs nonnegative observations");
  }
  return {prior_shape + static_cast<double>(sample.size()), prior_rate + sample.sum()};
}

double lomax_cdf(const LomaxPredictive& pred, double y) {
  if (!(y >= 0.0)) throw InvalidInput("Lomax CDF is defined for y >= 0");
  if (std::isinf(y)) return 1.0;
  // -expm1(-alpha * log1p(y/lambda)) keeps precision for small y.
  return -std::expm1(-pred.alpha * std::log1p(y / pred.lambda));
}

double lomax_survival(const LomaxPredictive& pred, double y) {
  if (!(y >= 0.0)) throw InvalidInput("Lomax survival is defined for y >= 0");
  if (std::isinf(y)) return 0.0;
  return std::exp(-pred.alpha * std::log1p(y / pred.lambda));
}

double lomax_probability(const LomaxPredictive& pred, const IntervalSet& event) {
  double total = 0.0;
  for (const Interval& p : event.pieces()) {
    const double lo = std::max(p.lo, 0.0);
    if (p.hi > lo) total += lomax_cdf(pred, p.hi) - lomax_cdf(pred, lo);
  }
  return total;
}

DChoice d_choice_from_int(int choice) {
  if (choice < 1 || choice > 5) {
    throw InvalidInput("D choice must be 1..5, got " + std::to_string(choice));
  }
  return static_cast<DChoice>(choice);
}

BinomialGFInterval binomial_gf_interval(std::int64_t y, std::int64_t m, RandomStream& rng) {
  if (m < 1) throw InvalidInput("binomial trials m must be >= 1");
  if (y < 0 || y > m) throw InvalidInput("binomial count y must lie in 0..m");
  std::vector<double> u(static_cast<std::size_t>(m));
  for (double& x : u) x = uniform01(rng);
  std::sort(u.begin(), u.end());
  BinomialGFInterval out;
  out.y = y;
  out.m = m;
  out.lower = y == 0 ? 0.0 : u[static_cast<std::size_t>(y - 1)];
  out.upper = y == m ? 1.0 : u[static_cast<std::size_t>(y)];
  return out;
}

double map_interval(const BinomialGFInterval& interval, DChoice choice, RandomStream& rng) {
  const double lo = interval.lower;
  const double gap = interval.upper - interval.lower;
  double d = 0.5;
  switch (choice) {
    case DChoice::Uniform:
      d = uniform01(rng);
      break;
    case DChoice::Endpoint:
      d = uniform01(rng) < 0.5 ? 0.0 : 1.0;
      break;
    case DChoice::Jeffreys: {
      std::gamma_distribution<double> g(0.5, 1.0);
      const double a = g(rng);
      const double b = g(rng);
      d = (a + b) > 0.0 ? a / (a + b) : 0.5;
      break;
    }
    case DChoice::Mixture: {
      const double u = uniform01(rng);
      if (u < interval.lower) {
        d = 0.0;
      } else if (u < interval.lower + (1.0 - interval.upper)) {
        d = 1.0;
      } else {
        d = uniform01(rng);
      }
      break;
    }
    case DChoice::Midpoint:
      d = 0.5;
      break;
  }
  return lo + d * gap;
}

double binomial_gf_sample(std::int64_t y, std::int64_t m, int d_choice, RandomStream& rng) {
  const DChoice choice = d_choice_from_int(d_choice);
  const BinomialGFInterval interval = binomial_gf_interval(y, m, rng);
  return map_interval(interval, choice, rng);
}

}  // namespace mfgf
