#include "mfgf/interval_set.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mfgf/errors.hpp"

namespace mfgf {

bool Interval::empty() const {
  if (std::isnan(lo) || std::isnan(hi)) return true;
  if (lo > hi) return true;
  if (lo == hi) return lo_open || hi_open || std::isinf(lo);
  return false;
}

bool Interval::contains(double x) const {
  const bool above = lo < x || (!lo_open && lo == x);
  const bool below = x < hi || (!hi_open && x == hi);
  return above && below;
}

namespace {

Interval normalized(Interval p) {
  if (std::isinf(p.lo)) p.lo_open = true;
  if (std::isinf(p.hi)) p.hi_open = true;
  return p;
}

Interval intersect_pieces(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_open = a.lo_open;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_open = b.lo_open;
  } else {
    r.lo = a.lo;
    r.lo_open = a.lo_open || b.lo_open;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_open = a.hi_open;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_open = b.hi_open;
  } else {
    r.hi = a.hi;
    r.hi_open = a.hi_open || b.hi_open;
  }
  return r;
}

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

IntervalSet::IntervalSet(Interval piece) {
  piece = normalized(piece);
  if (!piece.empty()) pieces_.push_back(piece);
}

IntervalSet IntervalSet::unite(std::vector<Interval> pieces) {
  std::vector<Interval> kept;
  kept.reserve(pieces.size());
  for (const Interval& p : pieces) {
    Interval q = normalized(p);
    if (!q.empty()) kept.push_back(q);
  }
  std::sort(kept.begin(), kept.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return !a.lo_open && b.lo_open;
  });

  IntervalSet out;
  for (const Interval& p : kept) {
    if (out.pieces_.empty()) {
      out.pieces_.push_back(p);
      continue;
    }
    Interval& cur = out.pieces_.back();
    const bool joinable = p.lo < cur.hi || (p.lo == cur.hi && !(cur.hi_open && p.lo_open));
    if (!joinable) {
      out.pieces_.push_back(p);
    } else if (p.hi > cur.hi) {
      cur.hi = p.hi;
      cur.hi_open = p.hi_open;
    } else if (p.hi == cur.hi) {
      cur.hi_open = cur.hi_open && p.hi_open;
    }
  }
  return out;
}

IntervalSet IntervalSet::from_canonical(std::vector<Interval> pieces) {
  for (const Interval& p : pieces) {
    if (p.empty()) throw InvalidInput("interval set contains an empty piece");
    if ((std::isinf(p.lo) && !p.lo_open) || (std::isinf(p.hi) && !p.hi_open)) {
      throw InvalidInput("infinite interval endpoints must be open");
    }
  }
  IntervalSet canon = unite(pieces);
  if (canon.pieces_ != pieces) throw InvalidInput("interval set is not in canonical form");
  return canon;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < pieces_.size() && j < other.pieces_.size()) {
    const Interval& a = pieces_[i];
    const Interval& b = other.pieces_[j];
    Interval r = intersect_pieces(a, b);
    if (!r.empty()) out.push_back(r);
    // Advance whichever piece ends first.
    const bool a_first = a.hi < b.hi || (a.hi == b.hi && a.hi_open && !b.hi_open);
    if (a_first) {
      ++i;
    } else {
      ++j;
    }
  }
  return unite(std::move(out));
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = pieces_;
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  return unite(std::move(all));
}

IntervalSet IntervalSet::complement(const IntervalSet& within) const {
  std::vector<Interval> gaps;
  double lo = -kInf;
  bool lo_open = true;
  for (const Interval& p : pieces_) {
    gaps.push_back({lo, lo_open, p.lo, !p.lo_open});
    lo = p.hi;
    lo_open = !p.hi_open;
  }
  gaps.push_back({lo, lo_open, kInf, true});
  return unite(std::move(gaps)).intersect(within);
}

bool IntervalSet::intersects(const IntervalSet& other) const {
  return !intersect(other).empty();
}

bool IntervalSet::subset_of(const IntervalSet& other) const {
  return intersect(other) == *this;
}

bool IntervalSet::contains(double x) const {
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [x](const Interval& p) { return p.contains(x); });
}

double IntervalSet::lebesgue() const {
  double total = 0.0;
  for (const Interval& p : pieces_) total += p.length();
  return total;
}

std::vector<double> IntervalSet::points() const {
  std::vector<double> out;
  for (const Interval& p : pieces_) {
    if (p.is_point()) out.push_back(p.lo);
  }
  return out;
}

std::string IntervalSet::to_string() const {
  if (pieces_.empty()) return "{}";
  std::string s;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Interval& p = pieces_[i];
    if (i) s += " U ";
    if (p.is_point()) {
      s += "{" + format_number(p.lo) + "}";
      continue;
    }
    s += p.lo_open ? "(" : "[";
    s += format_number(p.lo) + "," + format_number(p.hi);
    s += p.hi_open ? ")" : "]";
  }
  return s;
}

IntervalAlgebra intervalset_algebra(const IntervalSet& a, const IntervalSet& b) {
  IntervalAlgebra r;
  r.intersection = a.intersect(b);
  r.intersects = !r.intersection.empty();
  r.a_subset_of_b = r.intersection == a;
  r.lebesgue_of_a = a.lebesgue();
  return r;
}

}  // namespace mfgf
