#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mfgf/core.hpp"
#include "mfgf/interval_set.hpp"

namespace mfgf {

struct Bounds {
  double kappa_min = 0.0;
  double kappa_max = 0.0;
};

/// Focal sets A_n(1..n+1) truncated to [kappa_min, kappa_max]. Each region
/// carries mass 1/(n+1). Regions may be empty when scores tie or when the
/// truncation window misses a rank entirely.
class FocalPartition {
 public:
  FocalPartition(std::vector<IntervalSet> regions, Bounds bounds);

  /// Number of observations; there are n+1 regions.
  std::size_t n() const { return regions_.size() - 1; }
  std::size_t region_count() const { return regions_.size(); }
  double mass_per_region() const { return 1.0 / static_cast<double>(regions_.size()); }

  /// Region v, 1-based as in A_n(v).
  const IntervalSet& region(std::size_t v) const;
  const std::vector<IntervalSet>& regions() const { return regions_; }

  const Bounds& bounds() const { return bounds_; }
  double kappa_min() const { return bounds_.kappa_min; }
  double kappa_max() const { return bounds_.kappa_max; }
  IntervalSet support() const {
    return IntervalSet(Interval::closed(bounds_.kappa_min, bounds_.kappa_max));
  }

  const std::vector<bool>& empty_flags() const { return empty_; }
  bool has_empty_regions() const;

 private:
  std::vector<IntervalSet> regions_;
  Bounds bounds_;
  std::vector<bool> empty_;
};

/// [Y_(1), Y_(n)] for the identity measure; the data range widened by one
/// range on either side otherwise. For the mean-deviation measure the window
/// is enlarged further when needed so that every rank change lies at least
/// half a range inside it.
Bounds default_bounds(const Sample& sample, const NonconformityMeasure& measure);

/// Closed form for t(y) = y truncated to [Y_(1), Y_(n)]:
/// {Y_(1)}, (Y_(1),Y_(2)), ..., (Y_(n-1),Y_(n)), {Y_(n)}.
FocalPartition focal_partition_identity(const Sample& sample);

struct GridOptions {
  std::size_t grid_points = 0;  // 0 selects 64 * (n+1)
  double refine_tol = 0.0;      // 0 selects 1e-10 * (kappa_max - kappa_min)
};

/// Grid scan of the rank function over [kappa_min, kappa_max] with every
/// rank change localised by bisection to within refine_tol.
FocalPartition focal_partition_numeric(const Sample& sample, const NonconformityMeasure& measure,
                                       Bounds bounds, GridOptions options = {});

/// Closed form for the identity measure, grid scan otherwise; bounds default
/// to default_bounds().
FocalPartition focal_partition(const Sample& sample, const NonconformityMeasure& measure,
                               std::optional<Bounds> bounds = std::nullopt);

/// Omega_n(k): union of the regions of rank <= k.
IntervalSet cp_set(const FocalPartition& partition, std::size_t k);

/// Largest k with (n+2-k)/(n+1) > alpha.
std::size_t prediction_rank(std::size_t n, double alpha);

/// Upsilon_n^alpha = {y : f_n(y) > alpha} = Omega_n(k_alpha).
IntervalSet prediction_set(const Sample& sample, const NonconformityMeasure& measure, double alpha,
                           const FocalPartition& partition);

}  // namespace mfgf
