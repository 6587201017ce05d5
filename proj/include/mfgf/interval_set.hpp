#pragma once

#include <limits>
#include <string>
#include <vector>

namespace mfgf {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// One connected piece of a subset of the extended real line. A point is a
/// closed piece with lo == hi. Infinite endpoints are always open.
struct Interval {
  double lo = 0.0;
  bool lo_open = false;
  double hi = 0.0;
  bool hi_open = false;

  static Interval closed(double lo, double hi) { return {lo, false, hi, false}; }
  static Interval open(double lo, double hi) { return {lo, true, hi, true}; }
  static Interval point(double x) { return {x, false, x, false}; }

  bool empty() const;
  bool is_point() const { return lo == hi && !lo_open && !hi_open; }
  double length() const { return hi - lo; }
  bool contains(double x) const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint intervals kept in canonical form: pieces sorted,
/// pairwise disjoint, and no two pieces joinable into one.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(Interval piece);

  /// Union of arbitrary (possibly overlapping or empty) pieces.
  static IntervalSet unite(std::vector<Interval> pieces);
  /// Validates that the pieces are already canonical; throws InvalidInput
  /// otherwise.
  static IntervalSet from_canonical(std::vector<Interval> pieces);
  static IntervalSet real_line() { return IntervalSet(Interval{-kInf, true, kInf, true}); }

  const std::vector<Interval>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet unite(const IntervalSet& other) const;
  /// Complement relative to `within`.
  IntervalSet complement(const IntervalSet& within = real_line()) const;

  bool intersects(const IntervalSet& other) const;
  bool subset_of(const IntervalSet& other) const;
  bool contains(double x) const;

  /// Total length; points contribute 0 and unbounded pieces +inf.
  double lebesgue() const;
  /// Points (degenerate pieces) of the set.
  std::vector<double> points() const;

  std::string to_string() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> pieces_;
};

/// Result bundle of the pairwise set operations.
struct IntervalAlgebra {
  IntervalSet intersection;
  bool a_subset_of_b = false;
  bool intersects = false;
  double lebesgue_of_a = 0.0;
};

IntervalAlgebra intervalset_algebra(const IntervalSet& a, const IntervalSet& b);

}  // namespace mfgf
