#pragma once

#include <cstdint>

#include "mfgf/core.hpp"
#include "mfgf/interval_set.hpp"
#include "mfgf/random.hpp"

namespace mfgf {

/// Posterior predictive of an exponential model under a gamma(shape, rate)
/// prior on the rate: F(y) = 1 - (1 + y/lambda)^(-alpha).
struct LomaxPredictive {
  double alpha = 1.0;
  double lambda = 1.0;
};

LomaxPredictive lomax_fit(const Sample& sample, double prior_shape = 1.0, double prior_rate = 1.0);
double lomax_cdf(const LomaxPredictive& pred, double y);
double lomax_survival(const LomaxPredictive& pred, double y);
/// Predictive probability of an event; the part below 0 carries no mass.
double lomax_probability(const LomaxPredictive& pred, const IntervalSet& event);

/// Fiducial interval (U*_(y), U*_(y+1)] for a binomial success probability,
/// with U*_(0) = 0 and U*_(m+1) = 1.
struct BinomialGFInterval {
  double lower = 0.0;
  double upper = 1.0;
  std::int64_t y = 0;
  std::int64_t m = 1;
};

/// The five ways of picking a point R = lower + D * (upper - lower).
enum class DChoice : int {
  Uniform = 1,    // D ~ uniform(0,1)
  Endpoint = 2,   // D ~ uniform{0,1}
  Jeffreys = 3,   // D ~ beta(1/2, 1/2)
  Mixture = 4,    // 0 w.p. lower, 1 w.p. 1 - upper, uniform otherwise
  Midpoint = 5,   // D = 1/2
};

DChoice d_choice_from_int(int choice);

BinomialGFInterval binomial_gf_interval(std::int64_t y, std::int64_t m, RandomStream& rng);
double map_interval(const BinomialGFInterval& interval, DChoice choice, RandomStream& rng);
double binomial_gf_sample(std::int64_t y, std::int64_t m, int d_choice, RandomStream& rng);

}  // namespace mfgf
