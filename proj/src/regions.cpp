#include "mfgf/regions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfgf/errors.hpp"

namespace mfgf {

FocalPartition::FocalPartition(std::vector<IntervalSet> regions, Bounds bounds)
    : regions_(std::move(regions)), bounds_(bounds) {
  if (regions_.size() < 3) throw InvalidInput("a focal partition needs n+1 >= 3 regions");
  if (!(bounds_.kappa_min <= bounds_.kappa_max)) {
    throw InvalidInput("truncation bounds must satisfy kappa_min <= kappa_max");
  }
  empty_.reserve(regions_.size());
  for (const IntervalSet& r : regions_) empty_.push_back(r.empty());
}

const IntervalSet& FocalPartition::region(std::size_t v) const {
  if (v < 1 || v > regions_.size()) {
    throw InvalidInput("region index " + std::to_string(v) + " outside 1.." +
                       std::to_string(regions_.size()));
  }
  return regions_[v - 1];
}

bool FocalPartition::has_empty_regions() const {
  return std::find(empty_.begin(), empty_.end(), true) != empty_.end();
}

namespace {

/// Candidates y where |y - m| = |y/n + c_i| for the mean-deviation measure,
/// m the data mean and c_i = (S - (n+1) y_i)/n. The candidate's rank can only
/// change at these points.
std::vector<double> mean_deviation_crossings(const Sample& sample) {
  const double n = static_cast<double>(sample.size());
  const double m = sample.sum() / n;
  std::vector<double> out;
  out.reserve(2 * sample.size());
  for (double yi : sample.values()) {
    const double c = (sample.sum() - (n + 1.0) * yi) / n;
    out.push_back((m + c) * n / (n - 1.0));
    out.push_back((m - c) * n / (n + 1.0));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Bounds default_bounds(const Sample& sample, const NonconformityMeasure& measure) {
  if (measure.kind() == MeasureKind::Identity) return {sample.min(), sample.max()};
  double range = sample.max() - sample.min();
  if (range <= 0.0) range = 1.0;
  Bounds b{sample.min() - range, sample.max() + range};
  if (measure.kind() == MeasureKind::MeanAbsDeviation) {
    // With n = 2 (and some skewed samples) the last rank change sits on or
    // beyond min - range or max + range, which would leave region n+1 empty.
    // Keep every crossing at least half a range inside.
    const auto cross = mean_deviation_crossings(sample);
    b.kappa_min = std::min(b.kappa_min, cross.front() - 0.5 * range);
    b.kappa_max = std::max(b.kappa_max, cross.back() + 0.5 * range);
  }
  return b;
}

FocalPartition focal_partition_identity(const Sample& sample) {
  if (!sample.strictly_distinct()) {
    throw AssumptionViolated("identity focal partition requires distinct observations");
  }
  const std::vector<double> y = sample.sorted();
  const std::size_t n = y.size();
  std::vector<IntervalSet> regions;
  regions.reserve(n + 1);
  regions.emplace_back(Interval::point(y.front()));
  for (std::size_t v = 1; v < n; ++v) regions.emplace_back(Interval::open(y[v - 1], y[v]));
  regions.emplace_back(Interval::point(y.back()));
  return FocalPartition(std::move(regions), {y.front(), y.back()});
}

namespace {

struct Segment {
  double start;
  double end;
  std::size_t rank;
};

}  // namespace

FocalPartition focal_partition_numeric(const Sample& sample, const NonconformityMeasure& measure,
                                       Bounds bounds, GridOptions options) {
  const std::size_t n = sample.size();
  const double a = bounds.kappa_min;
  const double b = bounds.kappa_max;
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw InvalidInput("numeric partition needs finite bounds with kappa_min < kappa_max");
  }
  const std::size_t grid = options.grid_points == 0 ? 64 * (n + 1) : options.grid_points;
  const double tol = options.refine_tol == 0.0 ? 1e-10 * (b - a) : options.refine_tol;
  if (grid < 2 * (n + 1)) throw InvalidInput("grid_points must be at least 2(n+1)");
  if (!(tol > 0.0)) throw InvalidInput("refine_tol must be positive");

  auto rank_at = [&](double y) { return candidate_rank(sample, measure, y); };

  std::vector<double> xs(grid);
  const double step = (b - a) / static_cast<double>(grid - 1);
  for (std::size_t j = 0; j < grid; ++j) xs[j] = (j + 1 == grid) ? b : a + step * static_cast<double>(j);
  if (measure.kind() == MeasureKind::MeanAbsDeviation) {
    // A region narrower than the grid step whose rank differs from both
    // neighbours would be skipped; seeding every crossing and the midpoint
    // between consecutive crossings puts a grid point in each such region.
    std::vector<double> knots{a};
    for (double c : mean_deviation_crossings(sample)) {
      if (c > a && c < b) knots.push_back(c);
    }
    knots.push_back(b);
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
      xs.push_back(knots[k]);
      xs.push_back(knots[k] + 0.5 * (knots[k + 1] - knots[k]));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  }
  std::vector<std::size_t> ranks(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) ranks[j] = rank_at(xs[j]);

  std::vector<Segment> segments;
  segments.push_back({a, a, ranks[0]});
  for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
    double left = xs[j];
    std::size_t left_rank = segments.back().rank;
    const double right = xs[j + 1];
    while (left_rank != ranks[j + 1]) {
      // rank(lo) == left_rank, rank(hi) != left_rank
      double lo = left;
      double hi = right;
      std::size_t hi_rank = ranks[j + 1];
      while (hi - lo > tol) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const std::size_t r = rank_at(mid);
        if (r == left_rank) {
          lo = mid;
        } else {
          hi = mid;
          hi_rank = r;
        }
      }
      const double boundary = lo + 0.5 * (hi - lo);
      segments.back().end = boundary;
      segments.push_back({boundary, boundary, hi_rank});
      left = hi;
      left_rank = hi_rank;
      if (left >= right) break;
    }
  }
  segments.back().end = b;

  std::vector<std::vector<Interval>> pieces(n + 1);
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const Segment& seg = segments[s];
    const bool first = s == 0;
    const bool last = s + 1 == segments.size();
    if (seg.end - seg.start <= tol) {
      // Sub-resolution segments survive only as the endpoint atoms.
      if (first) {
        pieces[seg.rank - 1].push_back(Interval::point(a));
      } else if (last) {
        pieces[seg.rank - 1].push_back(Interval::point(b));
      }
      continue;
    }
    pieces[seg.rank - 1].push_back({first ? a : seg.start, !first, last ? b : seg.end, !last});
  }

  std::vector<IntervalSet> regions;
  regions.reserve(n + 1);
  for (auto& p : pieces) regions.push_back(IntervalSet::unite(std::move(p)));
  return FocalPartition(std::move(regions), bounds);
}

FocalPartition focal_partition(const Sample& sample, const NonconformityMeasure& measure,
                               std::optional<Bounds> bounds) {
  if (measure.kind() == MeasureKind::Identity && !bounds) return focal_partition_identity(sample);
  return focal_partition_numeric(sample, measure, bounds.value_or(default_bounds(sample, measure)));
}

IntervalSet cp_set(const FocalPartition& partition, std::size_t k) {
  if (k < 1 || k > partition.region_count()) {
    throw InvalidInput("cp_set level k=" + std::to_string(k) + " outside 1.." +
                       std::to_string(partition.region_count()));
  }
  std::vector<Interval> all;
  for (std::size_t v = 1; v <= k; ++v) {
    const auto& p = partition.region(v).pieces();
    all.insert(all.end(), p.begin(), p.end());
  }
  return IntervalSet::unite(std::move(all));
}

std::size_t prediction_rank(std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0,1)");
  const double denom = static_cast<double>(n + 1);
  std::size_t k = 1;
  for (std::size_t cand = 1; cand <= n + 1; ++cand) {
    if (static_cast<double>(n + 2 - cand) / denom > alpha) k = cand;
  }
  return k;
}

IntervalSet prediction_set(const Sample& sample, [[maybe_unused]] const NonconformityMeasure& measure,
                           double alpha, const FocalPartition& partition) {
  if (partition.n() != sample.size()) {
    throw InvalidInput("partition was built for a different sample size");
  }
  return cp_set(partition, prediction_rank(sample.size(), alpha));
}

}  // namespace mfgf
