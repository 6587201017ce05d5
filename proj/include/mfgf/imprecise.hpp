#pragma once

#include "mfgf/interval_set.hpp"
#include "mfgf/regions.hpp"

namespace mfgf {

class MEDistribution;

/// Lower and upper probability of one event.
struct ImpreciseValue {
  double belief = 0.0;
  double plausibility = 0.0;
  // Set when the partition had empty focal regions; those contribute 0 to
  // both bounds.
  bool empty_regions_ignored = false;
};

double belief(const FocalPartition& partition, const IntervalSet& event);
double plausibility(const FocalPartition& partition, const IntervalSet& event);
ImpreciseValue evaluate_event(const FocalPartition& partition, const IntervalSet& event);

/// True iff the distribution gives every focal region mass 1/(n+1) within
/// 1e-10, i.e. it lies in the credal set.
bool credal_check(const FocalPartition& partition, const MEDistribution& med);

}  // namespace mfgf
