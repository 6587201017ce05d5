#include "mfgf/imprecise.hpp"

#include <cmath>

#include "mfgf/errors.hpp"
#include "mfgf/precise.hpp"

namespace mfgf {

namespace {

struct Counts {
  std::size_t contained = 0;
  std::size_t hit = 0;
  bool skipped_empty = false;
};

Counts count_regions(const FocalPartition& partition, const IntervalSet& event) {
  Counts c;
  for (const IntervalSet& region : partition.regions()) {
    if (region.empty()) {
      c.skipped_empty = true;
      continue;
    }
    const IntervalSet overlap = region.intersect(event);
    if (overlap.empty()) continue;
    ++c.hit;
    if (overlap == region) ++c.contained;
  }
  return c;
}

}  // namespace

double belief(const FocalPartition& partition, const IntervalSet& event) {
  return static_cast<double>(count_regions(partition, event).contained) *
         partition.mass_per_region();
}

double plausibility(const FocalPartition& partition, const IntervalSet& event) {
  return static_cast<double>(count_regions(partition, event).hit) * partition.mass_per_region();
}

ImpreciseValue evaluate_event(const FocalPartition& partition, const IntervalSet& event) {
  const Counts c = count_regions(partition, event);
  const double m = partition.mass_per_region();
  return {static_cast<double>(c.contained) * m, static_cast<double>(c.hit) * m, c.skipped_empty};
}

bool credal_check(const FocalPartition& partition, const MEDistribution& med) {
  const Bounds& s = med.support();
  if (s.kappa_min != partition.kappa_min() || s.kappa_max != partition.kappa_max()) {
    throw InvalidInput("distribution support does not match the partition's truncation bounds");
  }
  const double target = partition.mass_per_region();
  for (const IntervalSet& region : partition.regions()) {
    if (std::abs(med.probability(region) - target) > 1e-10) return false;
  }
  return true;
}

}  // namespace mfgf
