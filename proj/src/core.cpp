#include "mfgf/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mfgf/errors.hpp"

namespace mfgf {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw InvalidInput("a sample needs at least 2 observations, got " +
                       std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidInput("sample contains a non-finite value");
  }
  sum_ = std::accumulate(values_.begin(), values_.end(), 0.0);
  auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  min_ = *lo;
  max_ = *hi;
  std::vector<double> s = sorted();
  distinct_ = std::adjacent_find(s.begin(), s.end()) == s.end();
}

std::vector<double> Sample::sorted() const {
  std::vector<double> s = values_;
  std::sort(s.begin(), s.end());
  return s;
}

NonconformityMeasure NonconformityMeasure::identity() {
  return {MeasureKind::Identity, nullptr, "identity"};
}

NonconformityMeasure NonconformityMeasure::mean_abs_deviation() {
  return {MeasureKind::MeanAbsDeviation, nullptr, "meandev"};
}

NonconformityMeasure NonconformityMeasure::custom(Evaluator fn, std::string name) {
  if (!fn) throw InvalidInput("custom nonconformity measure needs a callable");
  return {MeasureKind::Custom, std::move(fn), std::move(name)};
}

double NonconformityMeasure::evaluate(std::span<const double> bag, double value) const {
  switch (kind_) {
    case MeasureKind::Identity:
      return value;
    case MeasureKind::MeanAbsDeviation: {
      if (bag.empty()) throw InvalidInput("mean of an empty bag");
      double s = std::accumulate(bag.begin(), bag.end(), 0.0);
      return std::abs(s / static_cast<double>(bag.size()) - value);
    }
    case MeasureKind::Custom:
      return fn_(bag, value);
  }
  return value;
}

NonconformityMeasure measure_from_name(const std::string& name) {
  if (name == "identity") return NonconformityMeasure::identity();
  if (name == "meandev" || name == "mean-abs-deviation") {
    return NonconformityMeasure::mean_abs_deviation();
  }
  throw InvalidInput("unknown nonconformity measure '" + name + "'");
}

namespace {

// Leave-one-out mean-deviation score of value v when the augmented sample
// sums to total and has n+1 elements.
inline double loo_mean_dev(double total, double v, double n) {
  return std::abs((total - v) / n - v);
}

void check_candidate(double candidate) {
  if (!std::isfinite(candidate)) throw InvalidInput("candidate value is not finite");
}

}  // namespace

ScoreVector compute_scores(const Sample& sample, double candidate,
                           const NonconformityMeasure& measure) {
  check_candidate(candidate);
  const std::size_t n = sample.size();
  ScoreVector out;
  out.candidate = candidate;
  out.scores.resize(n + 1);

  switch (measure.kind()) {
    case MeasureKind::Identity:
      for (std::size_t i = 0; i < n; ++i) out.scores[i] = sample[i];
      out.scores[n] = candidate;
      break;
    case MeasureKind::MeanAbsDeviation: {
      const double total = sample.sum() + candidate;
      const double dn = static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) out.scores[i] = loo_mean_dev(total, sample[i], dn);
      out.scores[n] = loo_mean_dev(total, candidate, dn);
      break;
    }
    case MeasureKind::Custom: {
      std::vector<double> augmented(sample.values().begin(), sample.values().end());
      augmented.push_back(candidate);
      std::vector<double> bag(n);
      for (std::size_t i = 0; i <= n; ++i) {
        std::size_t k = 0;
        for (std::size_t j = 0; j <= n; ++j) {
          if (j != i) bag[k++] = augmented[j];
        }
        out.scores[i] = measure.evaluate(bag, augmented[i]);
      }
      break;
    }
  }
  for (double t : out.scores) {
    if (!std::isfinite(t)) throw InvalidInput("nonconformity score is not finite");
  }
  return out;
}

std::size_t rank_of_candidate(const ScoreVector& scores) {
  const double tc = scores.candidate_score();
  std::size_t below = 0;
  for (double t : scores.scores) below += (tc > t) ? 1 : 0;
  return 1 + below;
}

std::size_t conformity_count(const ScoreVector& scores) {
  const double tc = scores.candidate_score();
  std::size_t count = 0;
  for (double t : scores.scores) count += (tc <= t) ? 1 : 0;
  return count;
}

std::size_t candidate_rank(const Sample& sample, const NonconformityMeasure& measure, double y) {
  check_candidate(y);
  const std::size_t n = sample.size();
  switch (measure.kind()) {
    case MeasureKind::Identity: {
      std::size_t below = 0;
      for (double v : sample.values()) below += (y > v) ? 1 : 0;
      return 1 + below;
    }
    case MeasureKind::MeanAbsDeviation: {
      const double total = sample.sum() + y;
      const double dn = static_cast<double>(n);
      const double tc = loo_mean_dev(total, y, dn);
      if (!std::isfinite(tc)) throw InvalidInput("nonconformity score is not finite");
      std::size_t below = 0;
      for (double v : sample.values()) below += (tc > loo_mean_dev(total, v, dn)) ? 1 : 0;
      return 1 + below;
    }
    case MeasureKind::Custom:
      return rank_of_candidate(compute_scores(sample, y, measure));
  }
  return 1;
}

double transducer(const Sample& sample, const NonconformityMeasure& measure, double y) {
  ScoreVector s = compute_scores(sample, y, measure);
  return static_cast<double>(conformity_count(s)) / static_cast<double>(s.scores.size());
}

std::map<std::size_t, double> pvalue_pmf_given_bag(std::span<const std::size_t> multiplicities) {
  if (multiplicities.empty()) throw InvalidInput("bag multiplicities are empty");
  std::size_t total = 0;
  for (std::size_t m : multiplicities) {
    if (m == 0) throw InvalidInput("bag multiplicities must be positive");
    total += m;
  }
  std::map<std::size_t, double> pmf;
  std::size_t at_least = total;
  for (std::size_t m : multiplicities) {
    pmf[at_least] += static_cast<double>(m) / static_cast<double>(total);
    at_least -= m;
  }
  return pmf;
}

}  // namespace mfgf
