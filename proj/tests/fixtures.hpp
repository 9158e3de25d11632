#pragma once

#include <vector>

#include "diffuse/geom.hpp"

namespace fixtures {

using diffuse::make_rational;
using diffuse::Point;
using diffuse::Polygon;

inline Point P(long x, long y) { return Point(x, y); }
inline Point Q(long xn, long xd, long yn, long yd) { return diffuse::make_point(xn, xd, yn, yd); }

inline Polygon unit_square() { return Polygon({P(0, 0), P(1, 0), P(1, 1), P(0, 1)}); }

// L-shaped hexagon with the reflex corner at (1,1).
inline Polygon l6() { return Polygon({P(0, 0), P(2, 0), P(2, 1), P(1, 1), P(1, 2), P(0, 2)}); }

inline Point l6_source() { return Q(3, 2, 1, 4); }

/// Dense rational samples of the open segment uv.
inline std::vector<Point> segment_samples(const Point& u, const Point& v, long count) {
  std::vector<Point> out;
  for (long i = 1; i < count; ++i) out.push_back(diffuse::lerp(u, v, make_rational(i, count)));
  return out;
}

}  // namespace fixtures

namespace fixtures {

// Nine-gon whose view from three_window_source() has three windows, one
// saturated and two unsaturated.
inline Polygon three_window() {
  return Polygon({P(46, 25), P(61, 33), P(61, 10), P(62, 48), P(11, 67), P(2, 32), P(16, 10), P(6, 4), P(55, 5)});
}
inline Point three_window_source() { return Q(719663, 16384, 109433, 2048); }

}  // namespace fixtures
