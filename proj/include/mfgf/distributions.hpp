#pragma once

#include <string>
#include <vector>

#include "mfgf/random.hpp"

namespace mfgf {

/// Synthetic data generators for the simulation harness.
///
/// Accepted spellings (parameters optional where a default exists):
///   gaussian(mu,sigma)            default (0,1)
///   cauchy(location,scale)        default (0,1)
///   lognormal(meanlog,sdlog)      default (1,2)
///   mixture(w:mu:sigma,...)       Gaussian mixture, weights renormalised
///   exponential(rate)             default 1
///   poisson(rate)                 discrete; rejected where continuity matters
class Distribution {
 public:
  enum class Kind { Gaussian, Cauchy, LogNormal, GaussianMixture, Exponential, Poisson };

  struct Component {
    double weight;
    double mean;
    double sd;
  };

  static Distribution parse(const std::string& text);
  static Distribution gaussian(double mu = 0.0, double sigma = 1.0);
  static Distribution cauchy(double location = 0.0, double scale = 1.0);
  static Distribution lognormal(double meanlog = 1.0, double sdlog = 2.0);
  static Distribution mixture(std::vector<Component> components);
  static Distribution exponential(double rate = 1.0);
  static Distribution poisson(double rate);

  Kind kind() const { return kind_; }
  bool continuous() const { return kind_ != Kind::Poisson; }

  double sample(RandomStream& rng) const;
  std::vector<double> sample(RandomStream& rng, std::size_t n) const;
  double cdf(double x) const;
  /// Density (continuous kinds) or probability mass at x (Poisson).
  double pdf(double x) const;
  double median() const;

  /// Canonical spelling, parseable by parse().
  std::string describe() const;

 private:
  Kind kind_ = Kind::Gaussian;
  double a_ = 0.0;
  double b_ = 1.0;
  std::vector<Component> mix_;
};

double standard_normal_cdf(double z);

}  // namespace mfgf
