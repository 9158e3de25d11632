#pragma once

// Exact planar predicates over GMP rationals. Nothing in here rounds.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "diffuse/error.hpp"

namespace diffuse {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline int sign(const Rational& r) { return sgn(r); }

/// Parses "p", "-p" or "p/q" exactly. Throws Error(Parse) on anything else.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error(ErrorKind::Parse, "empty number");
  const auto slash = text.find('/');
  auto valid_int = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i >= s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw Error(ErrorKind::Parse, "not a rational: '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw Error(ErrorKind::Parse, "zero denominator: '" + text + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline std::string format_rational(const Rational& r) { return r.get_str(10); }

struct Point {
  Rational x;
  Rational y;

  Point() = default;
  Point(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}
  Point(long px, long py) : x(px), y(py) {}

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  friend bool operator<(const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
};

inline Point make_point(long xn, long xd, long yn, long yd) {
  return {make_rational(xn, xd), make_rational(yn, yd)};
}

inline std::string format_point(const Point& p) {
  return "(" + format_rational(p.x) + ", " + format_rational(p.y) + ")";
}

inline Point lerp(const Point& a, const Point& b, const Rational& t) {
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

inline Point midpoint(const Point& a, const Point& b) {
  return {(a.x + b.x) / 2, (a.y + b.y) / 2};
}

/// (a - o) x (b - o)
inline Rational cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

enum class Orientation { CW = -1, COLLINEAR = 0, CCW = 1 };

/// Sign of cross(p, q, r). A double evaluation decides whenever its error
/// bound allows; otherwise the exact rational determinant does.
inline int orient(const Point& p, const Point& q, const Point& r) {
  const double px = p.x.get_d(), py = p.y.get_d();
  const double qx = q.x.get_d(), qy = q.y.get_d();
  const double rx = r.x.get_d(), ry = r.y.get_d();
  const double m = std::max({std::fabs(px), std::fabs(py), std::fabs(qx), std::fabs(qy), std::fabs(rx), std::fabs(ry)});
  if (m > 1e-100 && m < 1e100) {
    const double det = (qx - px) * (ry - py) - (qy - py) * (rx - px);
    // get_d truncates (relative error 2^-52); 64 M^2 2^-52 covers inputs plus arithmetic.
    const double bound = 64.0 * m * m * 0x1p-52;
    if (det > bound) return 1;
    if (det < -bound) return -1;
  }
  return sign(cross(p, q, r));
}

inline Orientation orientation(const Point& p, const Point& q, const Point& r) {
  return static_cast<Orientation>(orient(p, q, r));
}

/// Closed segment [a,b] contains p.
inline bool on_segment(const Point& a, const Point& b, const Point& p) {
  if (orient(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

/// Parameter of p along a->b, assuming p lies on that line.
inline Rational param_along(const Point& a, const Point& b, const Point& p) {
  if (a.x != b.x) return (p.x - a.x) / (b.x - a.x);
  return (p.y - a.y) / (b.y - a.y);
}

/// Intersection of the supporting lines of p1p2 and q1q2, if not parallel.
inline std::optional<Point> line_intersection(const Point& p1, const Point& p2, const Point& q1,
                                              const Point& q2) {
  const Rational dx1 = p2.x - p1.x, dy1 = p2.y - p1.y;
  const Rational dx2 = q2.x - q1.x, dy2 = q2.y - q1.y;
  const Rational den = dx1 * dy2 - dy1 * dx2;
  if (den == 0) return std::nullopt;
  const Rational t = ((q1.x - p1.x) * dy2 - (q1.y - p1.y) * dx2) / den;
  return Point{p1.x + t * dx1, p1.y + t * dy1};
}

/// Closed segments share at least one point.
inline bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
         (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

struct EdgeRef {
  std::size_t index = 0;
  friend bool operator==(EdgeRef a, EdgeRef b) { return a.index == b.index; }
};

/// Simple polygon with counterclockwise vertices. Construction does not
/// validate; use validate_polygon (or Polygon::checked) for that.
class Polygon {
 public:
  Polygon() = default;
  explicit Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {}

  static Polygon checked(std::vector<Point> vertices);

  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const Point& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
  std::size_t next(std::size_t i) const { return (i + 1) % vertices_.size(); }
  std::size_t prev(std::size_t i) const { return (i + vertices_.size() - 1) % vertices_.size(); }
  const Point& edge_start(std::size_t e) const { return vertices_[e]; }
  const Point& edge_end(std::size_t e) const { return vertices_[next(e)]; }

  /// Interior angle at vertex i exceeds pi.
  bool is_reflex(std::size_t i) const {
    return orient(vertex(prev(i)), vertex(i), vertex(next(i))) < 0;
  }

  Rational signed_area2() const {
    Rational a = 0;
    for (std::size_t i = 0; i < size(); ++i) {
      const Point& p = vertices_[i];
      const Point& q = vertices_[next(i)];
      a += p.x * q.y - p.y * q.x;
    }
    return a;
  }

  friend bool operator==(const Polygon& a, const Polygon& b) { return a.vertices_ == b.vertices_; }

 private:
  std::vector<Point> vertices_;
};

struct BoundaryPoint {
  EdgeRef edge;
  Point point;
  Rational parameter;  // point = (1 - parameter) * start + parameter * end
};

inline BoundaryPoint boundary_point(const Polygon& poly, std::size_t e, const Rational& t) {
  return {EdgeRef{e}, lerp(poly.edge_start(e), poly.edge_end(e), t), t};
}

// ---------------------------------------------------------------------------
// Validation reports

enum class ViolationKind {
  TooFewVertices,
  RepeatedVertex,
  CollinearTriple,
  NotSimple,
  WrongOrientation,
  SourceAlignment,
  ReflectionAtVertex,
  ReflectionOffEdge,
  SegmentLeavesInterior,
  EndpointNotInterior,
  DegenerateSegment,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::TooFewVertices: return "too-few-vertices";
    case ViolationKind::RepeatedVertex: return "repeated-vertex";
    case ViolationKind::CollinearTriple: return "collinear-triple";
    case ViolationKind::NotSimple: return "not-simple";
    case ViolationKind::WrongOrientation: return "wrong-orientation";
    case ViolationKind::SourceAlignment: return "source-alignment";
    case ViolationKind::ReflectionAtVertex: return "reflection-at-vertex";
    case ViolationKind::ReflectionOffEdge: return "reflection-off-edge";
    case ViolationKind::SegmentLeavesInterior: return "segment-leaves-interior";
    case ViolationKind::EndpointNotInterior: return "endpoint-not-interior";
    case ViolationKind::DegenerateSegment: return "degenerate-segment";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::vector<std::size_t> indices;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(ViolationKind k) const {
    return std::any_of(violations.begin(), violations.end(),
                       [k](const Violation& v) { return v.kind == k; });
  }
  void add(ViolationKind k, std::vector<std::size_t> idx, std::string msg) {
    violations.push_back({k, std::move(idx), std::move(msg)});
  }
  std::string summary() const {
    std::ostringstream os;
    for (const auto& v : violations) os << to_string(v.kind) << ": " << v.message << "\n";
    return os.str();
  }
};

inline ValidationReport validate_polygon(const Polygon& poly) {
  ValidationReport report;
  const std::size_t n = poly.size();
  if (n < 3) {
    report.add(ViolationKind::TooFewVertices, {}, "need at least 3 vertices, got " + std::to_string(n));
    return report;
  }
  const auto& v = poly.vertices();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (v[i] == v[j])
        report.add(ViolationKind::RepeatedVertex, {i, j},
                   "vertices " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (v[i] != v[j] && v[j] != v[k] && v[i] != v[k] && orient(v[i], v[j], v[k]) == 0)
          report.add(ViolationKind::CollinearTriple, {i, j, k},
                     format_point(v[i]) + ", " + format_point(v[j]) + ", " + format_point(v[k]) +
                         " are collinear");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = poly.next(i) == j || poly.next(j) == i;
      const Point& a = poly.edge_start(i);
      const Point& b = poly.edge_end(i);
      const Point& c = poly.edge_start(j);
      const Point& d = poly.edge_end(j);
      bool bad = false;
      if (!adjacent) {
        bad = segments_intersect(a, b, c, d);
      } else {
        // Adjacent edges may only share their common endpoint.
        const Point& shared = poly.next(i) == j ? b : a;
        const Point& p = poly.next(i) == j ? a : b;
        const Point& q = poly.next(i) == j ? d : c;
        if (orient(p, shared, q) == 0) {
          // Collinear: overlap iff p and q lie on the same side of the shared point.
          const Rational dp = (p.x - shared.x) * (q.x - shared.x) + (p.y - shared.y) * (q.y - shared.y);
          bad = dp > 0;
        }
      }
      if (bad)
        report.add(ViolationKind::NotSimple, {i, j},
                   "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
    }
  }
  if (poly.signed_area2() <= 0)
    report.add(ViolationKind::WrongOrientation, {}, "vertices are not counterclockwise");
  return report;
}

/// Collinear triples of pairwise non-adjacent-in-sequence vertices do not break
/// any construction here (a degeneracy they cause is detected where it
/// happens), so illumination only rejects the remaining violations.
inline bool admissible_for_illumination(const Polygon& poly, const ValidationReport& report) {
  const std::size_t n = poly.size();
  for (const auto& v : report.violations) {
    if (v.kind != ViolationKind::CollinearTriple) return false;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> run{i, (i + 1) % n, (i + 2) % n};
      std::sort(run.begin(), run.end());
      if (run == v.indices) return false;
    }
  }
  return true;
}

inline Polygon Polygon::checked(std::vector<Point> vertices) {
  Polygon p(std::move(vertices));
  const auto report = validate_polygon(p);
  if (!report.ok()) throw Error(ErrorKind::DegenerateConfiguration, report.summary());
  return p;
}

// ---------------------------------------------------------------------------
// Point location

enum class LocationKind { Interior, Boundary, Exterior };

struct Location {
  LocationKind kind = LocationKind::Exterior;
  std::optional<std::size_t> edge;    // set when on an edge's relative interior
  std::optional<std::size_t> vertex;  // set when at a vertex

  bool interior() const noexcept { return kind == LocationKind::Interior; }
};

/// Winding-number test over an arbitrary closed ring (used for regions too).
inline Location locate_in_ring(const std::vector<Point>& ring, const Point& q) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (ring[i] == q) return {LocationKind::Boundary, std::nullopt, i};
  }
  int winding = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    const int o = orient(a, b, q);
    if (o == 0 && on_segment(a, b, q)) return {LocationKind::Boundary, i, std::nullopt};
    if (a.y <= q.y) {
      if (b.y > q.y && o > 0) ++winding;
    } else if (b.y <= q.y && o < 0) {
      --winding;
    }
  }
  return {winding != 0 ? LocationKind::Interior : LocationKind::Exterior, std::nullopt,
          std::nullopt};
}

inline Location point_location(const Polygon& poly, const Point& q) {
  return locate_in_ring(poly.vertices(), q);
}

/// Does the open segment (u,v) meet the closed segment [c,d]?
inline bool open_segment_hits(const Point& u, const Point& v, const Point& c, const Point& d) {
  const int o1 = orient(u, v, c), o2 = orient(u, v, d);
  if (o1 == 0 && o2 == 0) {
    // Collinear: compare parameter ranges along u->v against the open (0,1).
    Rational s0 = param_along(u, v, c), s1 = param_along(u, v, d);
    if (s1 < s0) std::swap(s0, s1);
    return s0 < 1 && s1 > 0;
  }
  if (o1 * o2 > 0) return false;
  const int o3 = orient(c, d, u), o4 = orient(c, d, v);
  // Strictly opposite sides: the crossing point is neither u nor v.
  return o3 * o4 < 0;
}

/// The open segment (u,v) lies in int(P): u sees v.
inline bool open_segment_in_interior(const Polygon& poly, const Point& u, const Point& v) {
  if (u == v) throw Error(ErrorKind::DegenerateSegment, "u == v");
  for (std::size_t e = 0; e < poly.size(); ++e)
    if (open_segment_hits(u, v, poly.edge_start(e), poly.edge_end(e))) return false;
  return point_location(poly, midpoint(u, v)).interior();
}

/// First boundary point hit by the open ray origin + lambda*direction, lambda > 0.
inline BoundaryPoint ray_shoot(const Polygon& poly, const Point& origin, const Point& direction) {
  if (direction.x == 0 && direction.y == 0)
    throw Error(ErrorKind::DegenerateSegment, "zero ray direction");
  const auto where = point_location(poly, origin);
  if (where.kind == LocationKind::Exterior)
    throw Error(ErrorKind::OriginOutside, "ray origin " + format_point(origin) + " outside polygon");

  std::optional<Rational> best;
  std::optional<std::size_t> best_edge;
  Rational best_mu;
  std::optional<std::size_t> vertex_at_best;
  auto consider = [&](const Rational& lambda, std::size_t e, const Rational& mu) {
    if (lambda <= 0) return;
    const bool at_vertex = mu == 0 || mu == 1;
    const std::size_t vidx = mu == 0 ? e : poly.next(e);
    if (!best || lambda < *best) {
      best = lambda;
      best_edge = e;
      best_mu = mu;
      vertex_at_best.reset();
      if (at_vertex) vertex_at_best = vidx;
    } else if (lambda == *best && at_vertex) {
      vertex_at_best = vidx;
    }
  };
  const Point far{origin.x + direction.x, origin.y + direction.y};
  for (std::size_t e = 0; e < poly.size(); ++e) {
    const Point& a = poly.edge_start(e);
    const Point& b = poly.edge_end(e);
    const Rational ex = b.x - a.x, ey = b.y - a.y;
    const Rational den = direction.x * ey - direction.y * ex;
    if (den == 0) {
      if (orient(origin, far, a) != 0) continue;
      // Ray runs along this edge's line: it meets the edge's endpoints first.
      const Rational la = param_along(origin, far, a), lb = param_along(origin, far, b);
      consider(la, e, Rational(0));
      consider(lb, e, Rational(1));
      continue;
    }
    const Rational wx = a.x - origin.x, wy = a.y - origin.y;
    const Rational lambda = (wx * ey - wy * ex) / den;
    const Rational mu = (wx * direction.y - wy * direction.x) / den;
    if (mu < 0 || mu > 1) continue;
    consider(lambda, e, mu);
  }
  if (!best) throw Error(ErrorKind::OriginOutside, "ray escapes polygon");
  const Point hit{origin.x + *best * direction.x, origin.y + *best * direction.y};
  if (where.kind == LocationKind::Boundary && !point_location(poly, midpoint(origin, hit)).interior())
    throw Error(ErrorKind::OriginOutside, "ray from boundary does not enter the interior");
  if (vertex_at_best)
    throw Error(ErrorKind::VertexHit, "ray hits vertex " + std::to_string(*vertex_at_best),
                static_cast<long>(*vertex_at_best));
  return {EdgeRef{*best_edge}, hit, best_mu};
}

/// Reports vertex pairs whose supporting line passes through s.
inline ValidationReport general_position_with_source(const Polygon& poly, const Point& s) {
  if (!point_location(poly, s).interior())
    throw Error(ErrorKind::SourceNotInterior, format_point(s) + " is not interior");
  ValidationReport report;
  const auto& v = poly.vertices();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (orient(v[i], v[j], s) == 0)
        report.add(ViolationKind::SourceAlignment, {i, j},
                   format_point(s) + " lies on the line through " + format_point(v[i]) + " and " +
                       format_point(v[j]));
  return report;
}

}  // namespace diffuse
