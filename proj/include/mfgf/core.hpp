#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace mfgf {

/// An ordered collection of n >= 2 finite observations.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double sum() const { return sum_; }
  double min() const { return min_; }
  double max() const { return max_; }

  /// True iff all values are pairwise distinct (exact comparison).
  bool strictly_distinct() const { return distinct_; }

  std::vector<double> sorted() const;

 private:
  std::vector<double> values_;
  double sum_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
  bool distinct_ = true;
};

enum class MeasureKind { Identity, MeanAbsDeviation, Custom };

/// Nonconformity measure Psi(bag, value). The bag holds the other n values
/// of the augmented sample; a custom callable must not depend on its order.
class NonconformityMeasure {
 public:
  using Evaluator = std::function<double(std::span<const double> bag, double value)>;

  static NonconformityMeasure identity();
  static NonconformityMeasure mean_abs_deviation();
  static NonconformityMeasure custom(Evaluator fn, std::string name = "custom");

  MeasureKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  double evaluate(std::span<const double> bag, double value) const;

 private:
  NonconformityMeasure(MeasureKind kind, Evaluator fn, std::string name)
      : kind_(kind), fn_(std::move(fn)), name_(std::move(name)) {}

  MeasureKind kind_;
  Evaluator fn_;
  std::string name_;
};

/// Parses "identity" or "meandev" (also "mean-abs-deviation").
NonconformityMeasure measure_from_name(const std::string& name);

/// Scores t_1..t_{n+1} of the augmented sample; the last entry belongs to
/// the candidate.
struct ScoreVector {
  std::vector<double> scores;
  double candidate = 0.0;

  std::size_t n() const { return scores.size() - 1; }
  double candidate_score() const { return scores.back(); }
};

ScoreVector compute_scores(const Sample& sample, double candidate,
                           const NonconformityMeasure& measure);

/// 1 + number of scores strictly below the candidate's score.
std::size_t rank_of_candidate(const ScoreVector& scores);

/// Number of scores at least as large as the candidate's (self included).
std::size_t conformity_count(const ScoreVector& scores);

/// Candidate rank without materialising the score vector; O(n) for the
/// built-in measures.
std::size_t candidate_rank(const Sample& sample, const NonconformityMeasure& measure, double y);

/// GF transducer f_n(y) = #{i : t_{n+1}(y) <= t_i} / (n+1).
double transducer(const Sample& sample, const NonconformityMeasure& measure, double y);

/// Conditional pmf of #{i : t_i >= t_{n+1}} given the bag of scores, where
/// multiplicities are listed in ascending score order.
std::map<std::size_t, double> pvalue_pmf_given_bag(std::span<const std::size_t> multiplicities);

}  // namespace mfgf
