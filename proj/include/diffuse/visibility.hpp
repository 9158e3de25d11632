#pragma once

// Point visibility and weak (chord) visibility inside a simple polygon.
//
// Both are computed the same way: the boundary is cut at every parameter where
// the visibility status can change, and each open piece is classified by one
// exact test at its midpoint. For a point source the cuts are where rays
// through reflex vertices land; for a chord source they are where lines
// through a reflex vertex and a second vertex (or chord endpoint) land. The
// region boundary then follows the boundary of P, bridging gaps between
// consecutive visible runs with windows.

#include <algorithm>
#include <optional>
#include <vector>

#include "diffuse/geom.hpp"
#include "diffuse/intervals.hpp"

namespace diffuse {

/// Sub-segment [lo, hi] of one edge, traversed in counterclockwise direction.
struct ArcPart {
  std::size_t edge;
  Rational lo;
  Rational hi;
};
using Arc = std::vector<ArcPart>;

inline Arc full_boundary(const Polygon& poly) {
  Arc arc;
  for (std::size_t e = 0; e < poly.size(); ++e) arc.push_back({e, Rational(0), Rational(1)});
  return arc;
}

/// (edge, parameter) of a boundary point, normalised so that a vertex is
/// reported as parameter 0 of its outgoing edge.
struct BoundaryPosition {
  std::size_t edge;
  Rational t;
};

inline BoundaryPosition position_of(const Polygon& poly, const Point& p) {
  const auto loc = point_location(poly, p);
  if (loc.vertex) return {*loc.vertex, Rational(0)};
  if (loc.edge) return {*loc.edge, param_along(poly.edge_start(*loc.edge), poly.edge_end(*loc.edge), p)};
  throw Error(ErrorKind::NotAChord, format_point(p) + " is not on the polygon boundary");
}

/// Counterclockwise boundary arc from `from` to `to` (both on the boundary).
inline Arc boundary_arc(const Polygon& poly, const Point& from, const Point& to) {
  BoundaryPosition a = position_of(poly, from);
  BoundaryPosition b = position_of(poly, to);
  // A vertex as arc end is the end of its incoming edge.
  if (b.t == 0) {
    b.edge = poly.prev(b.edge);
    b.t = 1;
  }
  Arc arc;
  if (a.edge == b.edge && a.t < b.t) {
    arc.push_back({a.edge, a.t, b.t});
    return arc;
  }
  if (a.t < 1) arc.push_back({a.edge, a.t, Rational(1)});
  for (std::size_t e = poly.next(a.edge); e != b.edge; e = poly.next(e))
    arc.push_back({e, Rational(0), Rational(1)});
  if (b.t > 0) arc.push_back({b.edge, Rational(0), b.t});
  return arc;
}

/// A light source: a point (interior, or on an edge's relative interior) or the
/// relative interior of a chord.
struct Source {
  enum class Kind { Point, Chord };
  Kind kind = Kind::Point;
  Point p;                               // Point
  std::optional<std::size_t> host_edge;  // Point on the boundary
  Point a, b;                            // Chord

  static Source point(Point q, std::optional<std::size_t> host = std::nullopt) {
    Source s;
    s.kind = Kind::Point;
    s.p = std::move(q);
    s.host_edge = host;
    return s;
  }
  static Source chord(Point ca, Point cb) {
    Source s;
    s.kind = Kind::Chord;
    s.a = std::move(ca);
    s.b = std::move(cb);
    return s;
  }
};

/// Open sub-intervals t of the chord a + t(b - a), t in (0,1), that x sees.
/// `host` is the edge whose relative interior contains x, if any.
inline std::vector<Interval> chord_gaps(const Polygon& poly, const Point& x,
                                        std::optional<std::size_t> host, const Point& a,
                                        const Point& b) {
  std::vector<Interval> gaps;
  const int tri = orient(x, a, b);
  if (tri == 0) {
    // An endpoint sees the whole open chord along it.
    if (x == a || x == b) gaps.push_back(open_interval(Rational(0), Rational(1)));
    return gaps;
  }
  // Triangle (x, p0, p1) oriented counterclockwise.
  const Point& p0 = tri > 0 ? a : b;
  const Point& p1 = tri > 0 ? b : a;
  const Point d{b.x - a.x, b.y - a.y};
  auto project = [&](const Point& z) -> Rational {
    const Rational wx = z.x - x.x, wy = z.y - x.y;
    const Rational ax = a.x - x.x, ay = a.y - x.y;
    return -(ax * wy - ay * wx) / (d.x * wy - d.y * wx);
  };

  Rational lo_allowed = 0, hi_allowed = 1;
  if (host) {
    const Point& es = poly.edge_start(*host);
    const Point& ee = poly.edge_end(*host);
    const Rational g0 = cross(es, ee, a), g1 = cross(es, ee, b);
    // Interior side is the left of the edge: need g0 + t(g1 - g0) > 0.
    if (g0 <= 0 && g1 <= 0) return gaps;
    if (g0 <= 0 || g1 <= 0) {
      const Rational root = g0 / (g0 - g1);
      if (g0 <= 0) lo_allowed = root;
      else hi_allowed = root;
    }
  }

  std::vector<std::pair<Rational, Rational>> shadows;
  const Point* tv[3] = {&x, &p0, &p1};
  const std::size_t n = poly.size();
  // side[k][i]: which side of triangle edge k vertex i is on (> 0 inside).
  std::vector<Rational> side[3];
  for (int k = 0; k < 3; ++k) {
    side[k].reserve(n);
    for (std::size_t i = 0; i < n; ++i) side[k].push_back(cross(*tv[k], *tv[(k + 1) % 3], poly.vertex(i)));
  }
  for (std::size_t e = 0; e < n; ++e) {
    if (host && e == *host) continue;
    const std::size_t e1 = poly.next(e);
    if (side[0][e] < 0 && side[0][e1] < 0) continue;
    if (side[1][e] < 0 && side[1][e1] < 0) continue;
    if (side[2][e] < 0 && side[2][e1] < 0) continue;
    const Point& c = poly.edge_start(e);
    const Point& dd = poly.edge_end(e);
    Rational s_lo = 0, s_hi = 1;
    bool empty = false;
    for (int k = 0; k < 3 && !empty; ++k) {
      const Rational& f0 = side[k][e];
      const Rational& f1 = side[k][e1];
      if (f0 < 0 && f1 < 0) {
        empty = true;
      } else if (f0 < 0) {
        const Rational r = f0 / (f0 - f1);
        if (r > s_lo) s_lo = r;
      } else if (f1 < 0) {
        const Rational r = f0 / (f0 - f1);
        if (r < s_hi) s_hi = r;
      }
      if (s_lo > s_hi) empty = true;
    }
    if (empty) continue;
    const Point z0 = lerp(c, dd, s_lo);
    const Point z1 = lerp(c, dd, s_hi);
    if (z0 == x || z1 == x) {
      // Only possible for an edge through x itself; it blocks nothing beyond x
      // unless it runs into the triangle, which simplicity forbids.
      continue;
    }
    Rational t0 = project(z0), t1 = project(z1);
    if (t1 < t0) std::swap(t0, t1);
    shadows.emplace_back(std::move(t0), std::move(t1));
  }
  std::sort(shadows.begin(), shadows.end());
  Rational cur = lo_allowed;
  for (const auto& [slo, shi] : shadows) {
    if (cur >= hi_allowed) break;
    if (slo > cur) gaps.push_back(open_interval(cur, std::min(slo, hi_allowed)));
    if (shi > cur) cur = shi;
  }
  if (cur < hi_allowed) gaps.push_back(open_interval(cur, hi_allowed));
  return gaps;
}

inline bool sees_open_chord(const Polygon& poly, const Point& x, std::optional<std::size_t> host,
                            const Point& a, const Point& b) {
  return !chord_gaps(poly, x, host, a, b).empty();
}

inline bool source_sees(const Polygon& poly, const Source& src, const Point& x,
                        std::optional<std::size_t> host) {
  if (src.kind == Source::Kind::Point) {
    if (src.p == x) return false;
    return open_segment_in_interior(poly, src.p, x);
  }
  return sees_open_chord(poly, x, host, src.a, src.b);
}

namespace detail {

/// Is v strictly between y and x on a common line?
inline bool strictly_between(const Point& y, const Point& v, const Point& x) {
  const Rational d1 = (v.x - y.x) * (x.x - y.x) + (v.y - y.y) * (x.y - y.y);
  const Rational d2 = (x.x - v.x) * (x.x - y.x) + (x.y - v.y) * (x.y - y.y);
  return d1 > 0 && d2 > 0;
}

/// Vertex indices touched by an arc (interior vertices plus endpoint vertices).
inline std::vector<std::size_t> arc_vertices(const Polygon& poly, const Arc& arc) {
  std::vector<std::size_t> out;
  for (const auto& part : arc) {
    if (part.lo == 0) out.push_back(part.edge);
    if (part.hi == 1) out.push_back(poly.next(part.edge));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// A sight line leaving `y` through vertex `v` towards `w`; visibility from the
/// source can only change where such a line, beyond v, meets the boundary.
struct SightLine {
  Point y, v, w;
};

/// Sight lines grazing a reflex vertex. From a chord the limiting lines pass
/// through a reflex vertex and either a chord endpoint or a second reflex
/// vertex; a convex vertex cannot lie inside a segment of int(P).
inline std::vector<SightLine> sight_lines(const Polygon& poly, const Source& src,
                                          const std::vector<std::size_t>& reflex,
                                          const std::vector<Point>& partners) {
  std::vector<SightLine> lines;
  if (src.kind == Source::Kind::Point) {
    for (std::size_t r : reflex) {
      const Point& v = poly.vertex(r);
      if (v != src.p) lines.push_back({src.p, v, src.p});
    }
    return lines;
  }
  // Light leaving the chord through an endpoint vertex runs along the chord line.
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (poly.vertex(i) == src.a) lines.push_back({src.b, src.a, src.b});
    if (poly.vertex(i) == src.b) lines.push_back({src.a, src.b, src.a});
  }
  for (std::size_t r : reflex) {
    const Point& v = poly.vertex(r);
    for (const Point& w : partners) {
      if (w == v) continue;
      const int oa = orient(v, w, src.a), ob = orient(v, w, src.b);
      if (oa * ob > 0) continue;  // line misses the chord
      std::optional<Point> y;
      if (oa == 0) y = src.a;
      else if (ob == 0) y = src.b;
      else y = line_intersection(v, w, src.a, src.b);
      if (y) lines.push_back({*y, v, w});
    }
  }
  return lines;
}

/// Cut parameters on `part` at which visibility from the source may change.
inline std::vector<Rational> breakpoints(const Polygon& poly, const ArcPart& part,
                                         const std::vector<SightLine>& lines) {
  std::vector<Rational> cuts;
  const Point& es = poly.edge_start(part.edge);
  const Point& ee = poly.edge_end(part.edge);
  for (const auto& line : lines) {
    const Rational f0 = cross(line.v, line.w, es), f1 = cross(line.v, line.w, ee);
    const int s0 = sign(f0), s1 = sign(f1);
    if (s0 == s1) continue;  // misses the edge, or runs along it
    const Rational t = f0 / (f0 - f1);
    if (t <= part.lo || t >= part.hi) continue;
    if (!strictly_between(line.y, line.v, lerp(es, ee, t))) continue;
    cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace detail

struct EdgeInterval {
  std::size_t edge;
  Interval interval;
};

/// Points of the arc (relative interiors of edges only) seen by `src`, as open
/// intervals in arc order. Adjacent visible pieces are merged across a cut when
/// the cut point itself is visible.
inline std::vector<EdgeInterval> visible_intervals(const Polygon& poly, const Source& src,
                                                   const Arc& arc) {
  std::vector<std::size_t> reflex;
  std::vector<Point> partners;
  if (src.kind == Source::Kind::Point) {
    for (std::size_t i = 0; i < poly.size(); ++i)
      if (poly.is_reflex(i)) reflex.push_back(i);
  } else {
    for (std::size_t i : detail::arc_vertices(poly, arc)) {
      if (!poly.is_reflex(i)) continue;
      partners.push_back(poly.vertex(i));
      if (poly.vertex(i) != src.a && poly.vertex(i) != src.b) reflex.push_back(i);
    }
    partners.push_back(src.a);
    partners.push_back(src.b);
  }

  const auto lines = detail::sight_lines(poly, src, reflex, partners);
  std::vector<EdgeInterval> out;
  for (const auto& part : arc) {
    if (src.kind == Source::Kind::Point && src.host_edge && *src.host_edge == part.edge) continue;
    if (part.lo >= part.hi) continue;
    std::vector<Rational> cuts = detail::breakpoints(poly, part, lines);
    if (src.kind == Source::Kind::Chord) {
      // Keep chord endpoints off the midpoints used for classification.
      for (const Point* end : {&src.a, &src.b}) {
        const auto loc = point_location(poly, *end);
        if (!loc.edge || *loc.edge != part.edge) continue;
        const Rational t = param_along(poly.edge_start(part.edge), poly.edge_end(part.edge), *end);
        if (t > part.lo && t < part.hi) cuts.push_back(t);
      }
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    }
    std::vector<Rational> knots;
    knots.push_back(part.lo);
    knots.insert(knots.end(), cuts.begin(), cuts.end());
    knots.push_back(part.hi);
    const Point& es = poly.edge_start(part.edge);
    const Point& ee = poly.edge_end(part.edge);
    std::optional<Interval> run;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      const Rational mid = (knots[i] + knots[i + 1]) / 2;
      const bool vis = source_sees(poly, src, lerp(es, ee, mid), part.edge);
      if (vis) {
        if (run && run->hi == knots[i] && source_sees(poly, src, lerp(es, ee, knots[i]), part.edge)) {
          run->hi = knots[i + 1];
        } else {
          if (run) out.push_back({part.edge, *run});
          run = open_interval(knots[i], knots[i + 1]);
        }
      }
    }
    if (run) out.push_back({part.edge, *run});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Regions with typed boundaries

enum class PieceKind { Wall, Window };

struct BoundaryPiece {
  PieceKind kind = PieceKind::Wall;
  Point from;  // traversal order, region on the left
  Point to;
  EdgeRef host;  // Wall: the edge it lies on. Window: the edge holding the foot.
  Rational lo, hi;  // Wall: parameter range on host, from = lo, to = hi
  std::size_t reflex_vertex = 0;  // Window: index of the reflex endpoint a
  BoundaryPoint foot;             // Window: the endpoint b
  bool reflex_first = false;      // Window: traversal runs a -> b

  const Point& a() const { return reflex_first ? from : to; }
  const Point& b() const { return reflex_first ? to : from; }
};

struct Region {
  std::vector<BoundaryPiece> boundary;  // counterclockwise cycle
  EdgeCoverage covered;                 // points of each edge's relative interior inside the region

  std::vector<Point> ring() const {
    std::vector<Point> pts;
    pts.reserve(boundary.size());
    for (const auto& p : boundary) pts.push_back(p.from);
    return pts;
  }
  std::vector<const BoundaryPiece*> windows() const {
    std::vector<const BoundaryPiece*> out;
    for (const auto& p : boundary)
      if (p.kind == PieceKind::Window) out.push_back(&p);
    return out;
  }
  std::size_t window_count() const {
    return static_cast<std::size_t>(std::count_if(boundary.begin(), boundary.end(), [](const auto& p) {
      return p.kind == PieceKind::Window;
    }));
  }
  /// Closure of the region intersected with each edge (the wall pieces).
  EdgeCoverage walls(std::size_t n) const {
    EdgeCoverage w(n);
    for (const auto& p : boundary)
      if (p.kind == PieceKind::Wall) w[p.host.index].push_back(closed_interval(p.lo, p.hi));
    for (auto& s : w) s = normalize(std::move(s));
    return w;
  }
  std::size_t weakly_covered_edges() const {
    return static_cast<std::size_t>(
        std::count_if(covered.begin(), covered.end(), [](const auto& s) { return any_positive(s); }));
  }
};

namespace detail {

inline BoundaryPiece make_wall(const Polygon& poly, std::size_t e, const Rational& lo,
                               const Rational& hi) {
  BoundaryPiece w;
  w.kind = PieceKind::Wall;
  w.host = EdgeRef{e};
  w.lo = lo;
  w.hi = hi;
  w.from = lerp(poly.edge_start(e), poly.edge_end(e), lo);
  w.to = lerp(poly.edge_start(e), poly.edge_end(e), hi);
  return w;
}

/// Window between the end of one wall and the start of the next.
inline BoundaryPiece make_window(const Polygon& poly, const BoundaryPiece& before,
                                 const BoundaryPiece& after) {
  BoundaryPiece w;
  w.kind = PieceKind::Window;
  w.from = before.to;
  w.to = after.from;
  const bool from_vertex = before.hi == 1;
  const bool to_vertex = after.lo == 0;
  if (from_vertex == to_vertex)
    throw Error(ErrorKind::PropertyViolation,
                "(iii) window " + format_point(w.from) + " -> " + format_point(w.to) +
                    " does not join a vertex to an edge interior");
  if (from_vertex) {
    w.reflex_first = true;
    w.reflex_vertex = poly.next(before.host.index);
    w.foot = {after.host, after.from, after.lo};
  } else {
    w.reflex_first = false;
    w.reflex_vertex = after.host.index;
    w.foot = {before.host, before.to, before.hi};
  }
  w.host = w.foot.edge;
  if (!poly.is_reflex(w.reflex_vertex))
    throw Error(ErrorKind::PropertyViolation,
                "(iii) window endpoint " + format_point(poly.vertex(w.reflex_vertex)) + " is not reflex");
  return w;
}

/// Turns closed visible runs (arc order) into typed boundary pieces. When
/// `cyclic`, windows also close the loop; otherwise the runs must start at the
/// arc start and end at the arc end.
inline std::vector<BoundaryPiece> pieces_from_runs(const Polygon& poly,
                                                   const std::vector<EdgeInterval>& runs,
                                                   bool cyclic) {
  std::vector<BoundaryPiece> walls;
  for (const auto& r : runs) {
    if (!r.interval.positive_length()) continue;
    if (!walls.empty() && walls.back().host.index == r.edge && walls.back().hi == r.interval.lo) {
      walls.back() = make_wall(poly, r.edge, walls.back().lo, r.interval.hi);
      continue;
    }
    walls.push_back(make_wall(poly, r.edge, r.interval.lo, r.interval.hi));
  }
  if (cyclic && walls.size() > 1 && walls.front().host == walls.back().host &&
      walls.back().hi == walls.front().lo && !(walls.front().lo == 0)) {
    walls.front() = make_wall(poly, walls.front().host.index, walls.back().lo, walls.front().hi);
    walls.pop_back();
  }
  std::vector<BoundaryPiece> out;
  for (std::size_t i = 0; i < walls.size(); ++i) {
    out.push_back(walls[i]);
    const bool last = i + 1 == walls.size();
    if (last && !cyclic) break;
    const BoundaryPiece& nxt = walls[last ? 0 : i + 1];
    if (walls[i].to != nxt.from) out.push_back(make_window(poly, walls[i], nxt));
  }
  return out;
}

/// Closed runs of the closure of the visible set along the arc: the visible
/// intervals closed, plus the host edge of a boundary point source.
inline std::vector<EdgeInterval> closure_runs(const Source& src, const Arc& arc,
                                              const std::vector<EdgeInterval>& visible) {
  std::vector<EdgeInterval> runs;
  std::size_t vi = 0;
  for (const auto& part : arc) {
    if (src.kind == Source::Kind::Point && src.host_edge && *src.host_edge == part.edge) {
      runs.push_back({part.edge, closed_interval(part.lo, part.hi)});
      continue;
    }
    while (vi < visible.size() && visible[vi].edge == part.edge &&
           visible[vi].interval.lo >= part.lo && visible[vi].interval.hi <= part.hi) {
      Interval iv = visible[vi].interval;
      iv.lo_closed = iv.hi_closed = true;
      runs.push_back({part.edge, iv});
      ++vi;
    }
  }
  return runs;
}

inline EdgeCoverage coverage_of(std::size_t n, const std::vector<EdgeInterval>& visible) {
  EdgeCoverage cov(n);
  for (const auto& v : visible) cov[v.edge].push_back(v.interval);
  for (auto& s : cov) s = normalize(std::move(s));
  return cov;
}

}  // namespace detail

/// Visibility pieces of `src` along an open arc running from the arc start to
/// the arc end; used to build W_ab inside the cut-off sub-polygon.
struct ArcVisibility {
  std::vector<EdgeInterval> visible;   // truly visible, open
  std::vector<BoundaryPiece> pieces;   // from arc start to arc end
};

inline ArcVisibility arc_visibility(const Polygon& poly, const Source& src, const Arc& arc) {
  ArcVisibility out;
  out.visible = visible_intervals(poly, src, arc);
  out.pieces = detail::pieces_from_runs(poly, detail::closure_runs(src, arc, out.visible), false);
  return out;
}

/// V_0(q): q interior (in general position) or in the relative interior of an edge.
inline Region visibility_from_point(const Polygon& poly, const Point& q) {
  const auto loc = point_location(poly, q);
  std::optional<std::size_t> host;
  if (loc.kind == LocationKind::Exterior || loc.vertex)
    throw Error(ErrorKind::SourceOutside, format_point(q) + " is not inside the polygon");
  if (loc.kind == LocationKind::Boundary) {
    host = loc.edge;
  } else {
    const auto gp = general_position_with_source(poly, q);
    if (!gp.ok()) throw Error(ErrorKind::DegenerateConfiguration, gp.summary());
  }
  const Source src = Source::point(q, host);
  const Arc arc = full_boundary(poly);
  const auto visible = visible_intervals(poly, src, arc);
  Region r;
  r.boundary = detail::pieces_from_runs(poly, detail::closure_runs(src, arc, visible), true);
  r.covered = detail::coverage_of(poly.size(), visible);
  return r;
}

/// Is [a,b] a chord of P: endpoints on the boundary, open segment interior.
inline bool is_chord(const Polygon& poly, const Point& a, const Point& b) {
  if (a == b) return false;
  if (point_location(poly, a).kind != LocationKind::Boundary) return false;
  if (point_location(poly, b).kind != LocationKind::Boundary) return false;
  return open_segment_in_interior(poly, a, b);
}

/// V_0(ab): everything seen from some point of the open chord ab.
inline Region weak_visibility_from_chord(const Polygon& poly, const Point& a, const Point& b) {
  if (!is_chord(poly, a, b))
    throw Error(ErrorKind::NotAChord, format_point(a) + " - " + format_point(b));
  const Source src = Source::chord(a, b);
  const Arc arc = full_boundary(poly);
  const auto visible = visible_intervals(poly, src, arc);
  Region r;
  r.boundary = detail::pieces_from_runs(poly, detail::closure_runs(src, arc, visible), true);
  r.covered = detail::coverage_of(poly.size(), visible);
  return r;
}

/// Region interior membership (strict), via the boundary ring.
inline bool region_contains(const Region& r, const Point& q) {
  return locate_in_ring(r.ring(), q).interior();
}

}  // namespace diffuse
