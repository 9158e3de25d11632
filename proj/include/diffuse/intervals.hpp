#pragma once

// Parameter intervals along a single polygon edge, with explicit endpoint
// closedness. Weak coverage is about relative interiors, so the flags matter.

#include <algorithm>
#include <vector>

#include "diffuse/geom.hpp"

namespace diffuse {

struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(const Rational& t) const {
    if (t < lo || t > hi) return false;
    if (t == lo && !lo_closed) return false;
    if (t == hi && !hi_closed) return false;
    return true;
  }
  bool positive_length() const { return lo < hi; }
  Rational length() const { return hi - lo; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi && a.lo_closed == b.lo_closed && a.hi_closed == b.hi_closed;
  }
};

inline Interval open_interval(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), false, false}; }
inline Interval closed_interval(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), true, true}; }

/// Sorted, pairwise-disjoint union. Intervals touching at a point merge when
/// that point belongs to at least one of them.
inline std::vector<Interval> normalize(std::vector<Interval> in) {
  in.erase(std::remove_if(in.begin(), in.end(),
                          [](const Interval& i) {
                            return i.lo > i.hi || (i.lo == i.hi && !(i.lo_closed && i.hi_closed));
                          }),
           in.end());
  std::sort(in.begin(), in.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  std::vector<Interval> out;
  for (auto& i : in) {
    if (!out.empty()) {
      Interval& last = out.back();
      const bool overlap = i.lo < last.hi || (i.lo == last.hi && (i.lo_closed || last.hi_closed));
      if (overlap) {
        if (i.hi > last.hi) {
          last.hi = i.hi;
          last.hi_closed = i.hi_closed;
        } else if (i.hi == last.hi) {
          last.hi_closed = last.hi_closed || i.hi_closed;
        }
        if (i.lo == last.lo) last.lo_closed = last.lo_closed || i.lo_closed;
        continue;
      }
    }
    out.push_back(std::move(i));
  }
  return out;
}

inline bool any_positive(const std::vector<Interval>& set) {
  return std::any_of(set.begin(), set.end(), [](const Interval& i) { return i.positive_length(); });
}

inline bool set_contains(const std::vector<Interval>& set, const Rational& t) {
  return std::any_of(set.begin(), set.end(), [&](const Interval& i) { return i.contains(t); });
}

/// Is every point of `inner` (as a point set) inside the union `outer`?
inline bool set_covers(const std::vector<Interval>& outer, const Interval& inner) {
  if (inner.lo > inner.hi) return true;
  const auto merged = normalize(outer);
  for (const auto& o : merged) {
    const bool lo_ok = o.lo < inner.lo || (o.lo == inner.lo && (o.lo_closed || !inner.lo_closed));
    const bool hi_ok = o.hi > inner.hi || (o.hi == inner.hi && (o.hi_closed || !inner.hi_closed));
    if (lo_ok && hi_ok) return true;
  }
  return false;
}

/// Per-edge interval sets, indexed by edge.
using EdgeCoverage = std::vector<std::vector<Interval>>;

}  // namespace diffuse
