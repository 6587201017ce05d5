#pragma once

#include <cstddef>
#include <vector>

#include "mfgf/interval_set.hpp"
#include "mfgf/random.hpp"
#include "mfgf/regions.hpp"

namespace mfgf {

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

struct DensityPiece {
  Interval interval;
  double density = 0.0;
};

/// Mixture of point masses and piecewise-constant density on
/// [kappa_min, kappa_max]. When built from a focal partition, the
/// components are grouped by focal region so that sampling can follow the
/// two-stage scheme (region, then uniform within the region).
class MEDistribution {
 public:
  /// One focal region's share: its atoms and density pieces.
  struct Group {
    std::vector<std::size_t> atoms;
    std::vector<std::size_t> pieces;
    double mass = 0.0;
    double length = 0.0;
  };

  /// Free-form distribution; every atom and piece becomes its own group.
  /// Throws InvalidInput unless masses are nonnegative and sum to 1 within
  /// 1e-12.
  MEDistribution(std::vector<Atom> atoms, std::vector<DensityPiece> pieces, Bounds support);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityPiece>& pieces() const { return pieces_; }
  const Bounds& support() const { return support_; }
  const std::vector<Group>& groups() const { return groups_; }
  bool equal_mass_groups() const { return equal_groups_; }

  double total_mass() const;
  double probability(const IntervalSet& event) const;
  double cdf(double x) const;
  /// Generalised inverse CDF, u in [0, 1].
  double quantile(double u) const;
  /// Differential entropy of the continuous part; atoms excluded.
  double entropy() const;

 private:
  MEDistribution() = default;
  void validate() const;
  void build_sorted_index();

  std::vector<Atom> atoms_;
  std::vector<DensityPiece> pieces_;
  Bounds support_;
  std::vector<Group> groups_;
  bool equal_groups_ = false;

  // (location, cumulative mass before, is_atom, index) sorted by location.
  struct Component {
    double lo;
    double before;
    bool atom;
    std::size_t index;
  };
  std::vector<Component> sorted_;

  friend MEDistribution med_from_partition(const FocalPartition& partition);
};

/// Maximum-entropy member of the credal set: singleton regions become atoms
/// of mass 1/(n+1), every other region is uniform with that mass.
MEDistribution med_from_partition(const FocalPartition& partition);

double med_probability(const MEDistribution& med, const IntervalSet& event);

/// Two-stage draw: region uniformly, then uniformly inside the region.
double med_sample(const MEDistribution& med, RandomStream& rng);

/// Inverse-CDF draw; independent of the grouping used by med_sample.
double med_sample_inverse_cdf(const MEDistribution& med, RandomStream& rng);

/// Sampler over the nested CP sets: rank level uniformly, then uniformly
/// (by length) over Omega_n(level). Point pieces inside a set of positive
/// length carry no weight.
class CpAnalogueSampler {
 public:
  explicit CpAnalogueSampler(const FocalPartition& partition);

  double operator()(RandomStream& rng) const;
  double sample_at_level(std::size_t k, RandomStream& rng) const;
  const IntervalSet& set(std::size_t k) const { return sets_.at(k - 1); }
  std::size_t levels() const { return sets_.size(); }

 private:
  std::vector<IntervalSet> sets_;
  std::vector<std::vector<double>> cumulative_;  // running piece lengths per level
};

double cp_analogue_sample(const FocalPartition& partition, RandomStream& rng);

}  // namespace mfgf
