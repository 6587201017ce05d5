#include "mfgf/precise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfgf/errors.hpp"

namespace mfgf {

namespace {

constexpr double kMassTol = 1e-12;

double overlap_length(const Interval& piece, const IntervalSet& event) {
  double total = 0.0;
  for (const Interval& e : event.pieces()) {
    if (e.lo >= piece.hi) break;
    const double lo = std::max(piece.lo, e.lo);
    const double hi = std::min(piece.hi, e.hi);
    if (hi > lo) total += hi - lo;
  }
  return total;
}

}  // namespace

MEDistribution::MEDistribution(std::vector<Atom> atoms, std::vector<DensityPiece> pieces,
                               Bounds support)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)), support_(support) {
  validate();
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    groups_.push_back({{i}, {}, atoms_[i].mass, 0.0});
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double len = pieces_[i].interval.length();
    groups_.push_back({{}, {i}, pieces_[i].density * len, len});
  }
  build_sorted_index();
}

void MEDistribution::validate() const {
  for (const Atom& a : atoms_) {
    if (!std::isfinite(a.location) || !(a.mass >= 0.0)) {
      throw InvalidInput("atoms need a finite location and nonnegative mass");
    }
    if (a.location < support_.kappa_min || a.location > support_.kappa_max) {
      throw InvalidInput("atom outside the support");
    }
  }
  for (const DensityPiece& p : pieces_) {
    if (!std::isfinite(p.interval.lo) || !std::isfinite(p.interval.hi) ||
        !(p.interval.hi > p.interval.lo)) {
      throw InvalidInput("density pieces need finite, positive-length intervals");
    }
    if (!(p.density >= 0.0) || !std::isfinite(p.density)) {
      throw InvalidInput("densities must be finite and nonnegative");
    }
    if (p.interval.lo < support_.kappa_min || p.interval.hi > support_.kappa_max) {
      throw InvalidInput("density piece outside the support");
    }
  }
  if (std::abs(total_mass() - 1.0) > kMassTol) {
    throw InvalidInput("distribution mass " + std::to_string(total_mass()) + " is not 1");
  }
}

void MEDistribution::build_sorted_index() {
  sorted_.clear();
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    sorted_.push_back({atoms_[i].location, 0.0, true, i});
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    sorted_.push_back({pieces_[i].interval.lo, 0.0, false, i});
  }
  std::sort(sorted_.begin(), sorted_.end(), [](const Component& a, const Component& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.atom && !b.atom;
  });
  long double cum = 0.0L;
  for (Component& c : sorted_) {
    c.before = static_cast<double>(cum);
    if (c.atom) {
      cum += atoms_[c.index].mass;
    } else {
      const DensityPiece& p = pieces_[c.index];
      cum += static_cast<long double>(p.density) * p.interval.length();
    }
  }
}

double MEDistribution::total_mass() const {
  long double total = 0.0L;
  for (const Atom& a : atoms_) total += a.mass;
  for (const DensityPiece& p : pieces_) {
    total += static_cast<long double>(p.density) * p.interval.length();
  }
  return static_cast<double>(total);
}

double MEDistribution::probability(const IntervalSet& event) const {
  long double total = 0.0L;
  for (const Atom& a : atoms_) {
    if (event.contains(a.location)) total += a.mass;
  }
  for (const DensityPiece& p : pieces_) {
    total += static_cast<long double>(p.density) * overlap_length(p.interval, event);
  }
  return static_cast<double>(total);
}

double MEDistribution::cdf(double x) const {
  return probability(IntervalSet(Interval{-kInf, true, x, false}));
}

double MEDistribution::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw InvalidInput("quantile level must lie in [0,1]");
  if (sorted_.empty()) throw InvalidInput("distribution has no components");
  // Last component whose cumulative mass before it is < u.
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), u,
                             [](const Component& c, double level) { return c.before < level; });
  const Component& c = (it == sorted_.begin()) ? sorted_.front() : *std::prev(it);
  if (c.atom) return atoms_[c.index].location;
  const DensityPiece& p = pieces_[c.index];
  if (p.density <= 0.0) return p.interval.lo;
  const double x = p.interval.lo + (u - c.before) / p.density;
  return std::clamp(x, p.interval.lo, p.interval.hi);
}

double MEDistribution::entropy() const {
  double h = 0.0;
  for (const DensityPiece& p : pieces_) {
    if (p.density > 0.0) h -= p.density * std::log(p.density) * p.interval.length();
  }
  return h;
}

MEDistribution med_from_partition(const FocalPartition& partition) {
  const double mass = partition.mass_per_region();
  MEDistribution med;
  med.support_ = partition.bounds();
  med.equal_groups_ = true;
  for (std::size_t v = 1; v <= partition.region_count(); ++v) {
    const IntervalSet& region = partition.region(v);
    if (region.empty()) {
      throw TiePathology("focal region " + std::to_string(v) +
                         " is empty; tied scores or a truncation window that misses it");
    }
    const double length = region.lebesgue();
    if (std::isinf(length)) {
      throw TruncationRequired("focal region " + std::to_string(v) + " has infinite measure");
    }
    MEDistribution::Group group;
    group.mass = mass;
    group.length = length;
    if (length == 0.0) {
      const std::vector<double> pts = region.points();
      if (pts.size() != 1) {
        throw InvalidInput("focal region " + std::to_string(v) +
                           " has zero length but is not a single point");
      }
      group.atoms.push_back(med.atoms_.size());
      med.atoms_.push_back({pts.front(), mass});
    } else {
      const double density = mass / length;
      for (const Interval& piece : region.pieces()) {
        if (piece.is_point()) continue;
        group.pieces.push_back(med.pieces_.size());
        med.pieces_.push_back({piece, density});
      }
    }
    med.groups_.push_back(std::move(group));
  }
  med.validate();
  med.build_sorted_index();
  return med;
}

double med_probability(const MEDistribution& med, const IntervalSet& event) {
  return med.probability(event);
}

double med_sample(const MEDistribution& med, RandomStream& rng) {
  const auto& groups = med.groups();
  std::size_t g = 0;
  if (med.equal_mass_groups()) {
    g = uniform_index(rng, 0, groups.size() - 1);
  } else {
    double target = uniform01(rng) * med.total_mass();
    for (g = 0; g + 1 < groups.size(); ++g) {
      if (target < groups[g].mass) break;
      target -= groups[g].mass;
    }
  }
  const auto& group = groups[g];
  if (group.length > 0.0) {
    double target = uniform01(rng) * group.length;
    for (std::size_t k = 0; k < group.pieces.size(); ++k) {
      const Interval& piece = med.pieces()[group.pieces[k]].interval;
      const double len = piece.length();
      if (target < len || k + 1 == group.pieces.size()) {
        return std::min(piece.lo + target, piece.hi);
      }
      target -= len;
    }
  }
  const std::size_t a = group.atoms.size() == 1 ? 0 : uniform_index(rng, 0, group.atoms.size() - 1);
  return med.atoms()[group.atoms[a]].location;
}

double med_sample_inverse_cdf(const MEDistribution& med, RandomStream& rng) {
  return med.quantile(uniform01(rng) * med.total_mass());
}

CpAnalogueSampler::CpAnalogueSampler(const FocalPartition& partition) {
  const std::size_t levels = partition.region_count();
  sets_.reserve(levels);
  cumulative_.reserve(levels);
  std::vector<Interval> acc;
  for (std::size_t k = 1; k <= levels; ++k) {
    const auto& p = partition.region(k).pieces();
    acc.insert(acc.end(), p.begin(), p.end());
    IntervalSet omega = IntervalSet::unite(acc);
    acc = omega.pieces();
    if (omega.empty()) {
      throw TiePathology("CP set at level " + std::to_string(k) + " is empty");
    }
    if (std::isinf(omega.lebesgue())) {
      throw TruncationRequired("CP set at level " + std::to_string(k) + " has infinite measure");
    }
    std::vector<double> cum;
    double run = 0.0;
    for (const Interval& piece : omega.pieces()) {
      run += piece.length();
      cum.push_back(run);
    }
    cumulative_.push_back(std::move(cum));
    sets_.push_back(std::move(omega));
  }
}

double CpAnalogueSampler::sample_at_level(std::size_t k, RandomStream& rng) const {
  if (k < 1 || k > sets_.size()) {
    throw InvalidInput("CP level " + std::to_string(k) + " outside 1.." + std::to_string(sets_.size()));
  }
  const IntervalSet& omega = set(k);
  const std::vector<double>& cum = cumulative_[k - 1];
  const auto& pieces = omega.pieces();
  const double total = cum.back();
  if (total > 0.0) {
    const double target = uniform01(rng) * total;
    auto it = std::upper_bound(cum.begin(), cum.end(), target);
    if (it == cum.end()) --it;
    const std::size_t i = static_cast<std::size_t>(it - cum.begin());
    const double before = i == 0 ? 0.0 : cum[i - 1];
    return std::min(pieces[i].lo + (target - before), pieces[i].hi);
  }
  const std::vector<double> pts = omega.points();
  return pts[pts.size() == 1 ? 0 : uniform_index(rng, 0, pts.size() - 1)];
}

double CpAnalogueSampler::operator()(RandomStream& rng) const {
  const std::size_t k = 1 + uniform_index(rng, 0, sets_.size() - 1);
  return sample_at_level(k, rng);
}

double cp_analogue_sample(const FocalPartition& partition, RandomStream& rng) {
  return CpAnalogueSampler(partition)(rng);
}

}  // namespace mfgf
