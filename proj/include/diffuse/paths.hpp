#pragma once

// Diffuse reflection paths from s, recovered from an IlluminationResult by
// walking the provenance records backwards.

#include <optional>
#include <string>
#include <vector>

#include "diffuse/geom.hpp"
#include "diffuse/intervals.hpp"
#include "diffuse/regions.hpp"
#include "diffuse/visibility.hpp"

namespace diffuse {

struct ReflectionPath {
  Point source;
  std::vector<BoundaryPoint> reflections;
  Point target;

  std::size_t reflection_count() const { return reflections.size(); }
  std::vector<Point> vertices() const {
    std::vector<Point> pts{source};
    for (const auto& r : reflections) pts.push_back(r.point);
    pts.push_back(target);
    return pts;
  }
  /// Same path walked from the target back to the source.
  ReflectionPath reversed() const {
    ReflectionPath r{target, {reflections.rbegin(), reflections.rend()}, source};
    return r;
  }
};

inline ValidationReport validate_path(const Polygon& poly, const ReflectionPath& path) {
  ValidationReport rep;
  auto check_end = [&](const Point& p, std::size_t idx, const char* name) {
    if (!point_location(poly, p).interior())
      rep.add(ViolationKind::EndpointNotInterior, {idx}, std::string(name) + " " + format_point(p) + " not in int(P)");
  };
  const auto pts = path.vertices();
  check_end(path.source, 0, "source");
  check_end(path.target, pts.size() - 1, "target");
  for (std::size_t i = 0; i < path.reflections.size(); ++i) {
    const auto& r = path.reflections[i];
    const std::size_t idx = i + 1;
    bool at_vertex = false;
    for (const auto& v : poly.vertices())
      if (v == r.point) at_vertex = true;
    if (at_vertex) {
      rep.add(ViolationKind::ReflectionAtVertex, {idx}, "reflection at polygon vertex " + format_point(r.point));
      continue;
    }
    const std::size_t e = r.edge.index;
    if (e >= poly.size() || !on_segment(poly.edge_start(e), poly.edge_end(e), r.point))
      rep.add(ViolationKind::ReflectionOffEdge, {idx}, "reflection " + format_point(r.point) + " not on its edge");
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const std::size_t idx = i;
    if (pts[i] == pts[i + 1]) {
      rep.add(ViolationKind::DegenerateSegment, {idx, idx + 1}, "repeated path vertex " + format_point(pts[i]));
      continue;
    }
    if (!open_segment_in_interior(poly, pts[i], pts[i + 1]))
      rep.add(ViolationKind::SegmentLeavesInterior, {idx, idx + 1},
              "segment " + format_point(pts[i]) + " - " + format_point(pts[i + 1]) + " leaves int(P)");
  }
  return rep;
}

/// Smallest k with t in R_k.
inline std::size_t locate_k(const IlluminationResult& res, const Point& t) {
  if (!point_location(res.polygon, t).interior())
    throw Error(ErrorKind::TargetOutside, "target " + format_point(t) + " not in int(P)");
  for (std::size_t k = 0; k < res.regions.size(); ++k) {
    const Region& r = res.regions[k];
    if (region_contains(r, t)) return k;
    for (const auto* w : r.windows())
      if (on_segment(w->from, w->to, t))
        throw Error(ErrorKind::OnWindowChord,
                    "target " + format_point(t) + " on a window of R_" + std::to_string(k) + "; perturb it",
                    static_cast<long>(k));
  }
  throw Error(ErrorKind::InvariantBreach, "target " + format_point(t) + " in no region");
}

namespace detail {

/// Direct coverage by level: for each level j and edge e, the events at level
/// exactly j that saw part of e.
class DirectIndex {
 public:
  explicit DirectIndex(const IlluminationResult& res) : res_(res) {
    for (std::size_t i = 0; i < res.events.size(); ++i) {
      const auto& ev = res.events[i];
      if (!ev.direct) continue;
      if (by_level_.size() <= ev.level) by_level_.resize(ev.level + 1);
      by_level_[ev.level].push_back(i);
    }
  }

  /// Lowest-level direct event containing q on edge e with level <= max_level.
  std::optional<std::size_t> event_for(std::size_t e, const Rational& t, std::size_t max_level) const {
    for (std::size_t j = 0; j <= max_level && j < by_level_.size(); ++j)
      for (std::size_t i : by_level_[j]) {
        const auto& ev = res_.events[i];
        if (ev.edge == e && ev.interval.contains(t)) return i;
      }
    return std::nullopt;
  }

  /// Open intervals of edge e directly covered at levels <= max_level.
  std::vector<Interval> covered(std::size_t e, std::size_t max_level) const {
    std::vector<Interval> out;
    for (std::size_t j = 0; j <= max_level && j < by_level_.size(); ++j)
      for (std::size_t i : by_level_[j])
        if (res_.events[i].edge == e) out.push_back(res_.events[i].interval);
    return out;
  }

 private:
  const IlluminationResult& res_;
  std::vector<std::vector<std::size_t>> by_level_;
};

/// Dyadic aim parameters in (0,1): 1/2, 1/4, 3/4, 1/8, ...
inline std::vector<Rational> aim_schedule(std::size_t count) {
  std::vector<Rational> out;
  for (long den = 2; out.size() < count; den *= 2)
    for (long num = 1; num < den && out.size() < count; num += 2) out.push_back(make_rational(num, den));
  return out;
}

struct Hop {
  BoundaryPoint point;
  std::size_t event;
};

class PathBuilder {
 public:
  explicit PathBuilder(const IlluminationResult& res) : res_(res), poly_(res.polygon), index_(res) {}

  /// Reflection points from s up to (excluding) x, where x is seen directly by
  /// record `origin` (or by s when origin < 0) and lies at `level`.
  std::vector<BoundaryPoint> walk(const Point& x, std::optional<std::size_t> host, long origin, std::size_t level) {
    std::vector<BoundaryPoint> rev;
    Point cur = x;
    std::optional<std::size_t> cur_host = host;
    while (origin >= 0) {
      if (level == 0) throw Error(ErrorKind::InvariantBreach, "provenance below level 0");
      const auto& rec = res_.provenance[static_cast<std::size_t>(origin)];
      auto hop = preferred(rec, cur, cur_host, level - 1);
      if (!hop) hop = scan(cur, cur_host, level - 1);
      if (!hop)
        throw Error(ErrorKind::AimExhausted, "no directly lit boundary point visible from " + format_point(cur));
      rev.push_back(hop->point);
      const auto& ev = res_.events[hop->event];
      cur = hop->point.point;
      cur_host = hop->point.edge.index;
      origin = ev.origin;
      level = ev.level;
    }
    return {rev.rbegin(), rev.rend()};
  }

 private:
  bool sees(const Point& from, const Point& to) const { return from != to && open_segment_in_interior(poly_, from, to); }

  std::optional<Hop> accept(const BoundaryPoint& p, const Point& from, std::size_t max_level) const {
    for (const auto& v : poly_.vertices())
      if (v == p.point) return std::nullopt;
    const auto ev = index_.event_for(p.edge.index, p.parameter, max_level);
    if (!ev || !sees(from, p.point)) return std::nullopt;
    return Hop{p, *ev};
  }

  std::optional<Hop> preferred(const ProvenanceRecord& rec, const Point& x, std::optional<std::size_t> host,
                               std::size_t max_level) const {
    if (rec.mode == ExpansionMode::Unsaturated) return accept(*rec.probe, x, max_level);
    const Point& a = rec.window.a;
    const Point& b = rec.window.b.point;
    const auto gaps = chord_gaps(poly_, x, host, a, b);
    if (gaps.empty()) return std::nullopt;
    const Interval& g = gaps.front();
    for (const auto& u : aim_schedule(64)) {
      const Point aim = lerp(a, b, g.lo + u * (g.hi - g.lo));
      try {
        const BoundaryPoint p = ray_shoot(poly_, x, Point{aim.x - x.x, aim.y - x.y});
        if (auto hop = accept(p, x, max_level)) return hop;
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::VertexHit) throw;
      }
    }
    return std::nullopt;
  }

  /// Any directly lit point at level <= max_level that x sees.
  std::optional<Hop> scan(const Point& x, std::optional<std::size_t> host, std::size_t max_level) const {
    const auto vis = visible_intervals(poly_, Source::point(x, host), full_boundary(poly_));
    for (const auto& v : vis) {
      for (const auto& c : index_.covered(v.edge, max_level)) {
        const Rational lo = std::max(c.lo, v.interval.lo);
        const Rational hi = std::min(c.hi, v.interval.hi);
        if (lo >= hi) continue;
        for (const auto& u : aim_schedule(8)) {
          const BoundaryPoint p = boundary_point(poly_, v.edge, lo + u * (hi - lo));
          if (auto hop = accept(p, x, max_level)) return hop;
        }
      }
    }
    return std::nullopt;
  }

  const IlluminationResult& res_;
  const Polygon& poly_;
  DirectIndex index_;
};

}  // namespace detail

/// A path from s to t with at most locate_k(t) reflections.
inline ReflectionPath extract_path(const IlluminationResult& res, const Point& t) {
  const std::size_t k = locate_k(res, t);
  ReflectionPath path;
  path.source = res.source;
  path.target = t;
  if (k == 0) return path;
  long origin = -1;
  for (std::size_t i = 0; i < res.provenance.size(); ++i) {
    const auto& rec = res.provenance[i];
    if (rec.step + 1 == k && region_contains(rec.expansion, t)) {
      origin = static_cast<long>(i);
      break;
    }
  }
  if (origin < 0) throw Error(ErrorKind::InvariantBreach, "no expansion at step " + std::to_string(k - 1) + " holds the target");
  detail::PathBuilder builder(res);
  path.reflections = builder.walk(t, std::nullopt, origin, k);
  return path;
}

}  // namespace diffuse
