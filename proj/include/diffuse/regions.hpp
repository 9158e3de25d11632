#pragma once

// The nested regions R_0 ⊆ R_1 ⊆ ... grown by diffuse reflections, with the
// counting ledger (mu_k, lambda_k, criticality) used to audit the upper bound.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffuse/geom.hpp"
#include "diffuse/intervals.hpp"
#include "diffuse/visibility.hpp"

namespace diffuse {

struct Window {
  std::size_t a_index = 0;  // reflex vertex of P
  Point a;
  BoundaryPoint b;  // foot, in the relative interior of e_ab
  bool reflex_first = false;  // region boundary traverses a -> b
  std::size_t piece = 0;      // index of the window in the region boundary
  Polygon far_side;           // U_ab
  Polygon near_side;

  /// Endpoints in region-boundary traversal order (region on the left).
  const Point& from() const { return reflex_first ? a : b.point; }
  const Point& to() const { return reflex_first ? b.point : a; }
};

enum class ExpansionMode { Saturated, Unsaturated };

struct ProvenanceRecord {
  std::size_t step = 0;
  Window window;
  ExpansionMode mode = ExpansionMode::Saturated;
  std::optional<BoundaryPoint> probe;  // c, present iff Unsaturated
  Region expansion;                    // W_ab, closed by the chord ab
  std::size_t new_edges = 0;           // edges weakly covered by W_ab but not by R_step
  bool far_side_fully_visible = false;  // U_ab ⊆ cl(W_ab)
};

enum class Condition { None, A, B };

inline const char* to_string(Condition c) {
  switch (c) {
    case Condition::A: return "A";
    case Condition::B: return "B";
    case Condition::None: return "none";
  }
  return "none";
}

struct LedgerStep {
  std::size_t k = 0;
  std::size_t mu = 0;
  std::size_t lambda = 0;
  bool critical = false;
  Condition condition = Condition::None;
  std::vector<bool> saturated;  // per window of R_k
  EdgeCoverage covered;
};

struct CoverageLedger {
  std::vector<LedgerStep> steps;
};

/// A piece of boundary entering the regions at `level`. `origin` is the
/// provenance record whose expansion saw it directly, or -1 for the source s.
/// Non-direct events come from taking closures.
struct CoverEvent {
  std::size_t edge;
  Interval interval;
  std::size_t level;
  long origin;
  bool direct;
};

struct IlluminationResult {
  Polygon polygon;
  Point source;
  std::vector<Region> regions;
  std::vector<std::vector<Window>> windows_per_step;
  std::vector<ProvenanceRecord> provenance;
  CoverageLedger ledger;
  std::vector<CoverEvent> events;
  std::size_t bound_k = 0;
  std::size_t terminated_at = 0;
};

inline std::size_t reflection_bound(std::size_t n) { return n / 2 >= 1 ? n / 2 - 1 : 0; }

// ---------------------------------------------------------------------------
// Structural checks

/// Simple, counterclockwise closed ring; consecutive collinear vertices allowed.
inline std::optional<std::string> ring_defect(const std::vector<Point>& ring) {
  const std::size_t m = ring.size();
  if (m < 3) return "fewer than three boundary vertices";
  Rational area = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Point& p = ring[i];
    const Point& q = ring[(i + 1) % m];
    area += p.x * q.y - p.y * q.x;
    if (p == q) return "repeated consecutive boundary vertex " + format_point(p);
  }
  if (area <= 0) return "boundary is not counterclockwise";
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const Point& a = ring[i];
      const Point& b = ring[(i + 1) % m];
      const Point& c = ring[j];
      const Point& d = ring[(j + 1) % m];
      const bool adj_fwd = (i + 1) % m == j;
      const bool adj_back = (j + 1) % m == i;
      if (adj_fwd || adj_back) {
        const Point& shared = adj_fwd ? b : a;
        const Point& p = adj_fwd ? a : b;
        const Point& q = adj_fwd ? d : c;
        if (orient(p, shared, q) == 0) {
          const Rational dp = (p.x - shared.x) * (q.x - shared.x) + (p.y - shared.y) * (q.y - shared.y);
          if (dp > 0) return "boundary folds back at " + format_point(shared);
        }
        continue;
      }
      if (segments_intersect(a, b, c, d))
        return "boundary edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect";
    }
  }
  return std::nullopt;
}

/// Properties (i) and (ii); (iii) is enforced when windows are built.
inline void check_structure(const Region& r) {
  if (auto defect = ring_defect(r.ring()))
    throw Error(ErrorKind::PropertyViolation, "(i) " + *defect);
  const auto ws = r.windows();
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (std::size_t j = i + 1; j < ws.size(); ++j)
      if (segments_intersect(ws[i]->from, ws[i]->to, ws[j]->from, ws[j]->to))
        throw Error(ErrorKind::PropertyViolation, "(ii) windows " + std::to_string(i) + " and " +
                                                      std::to_string(j) + " intersect");
}

inline Polygon polygon_from_arc(const Polygon& poly, const Arc& arc) {
  std::vector<Point> pts;
  for (const auto& part : arc) pts.push_back(lerp(poly.edge_start(part.edge), poly.edge_end(part.edge), part.lo));
  const auto& last = arc.back();
  pts.push_back(lerp(poly.edge_start(last.edge), poly.edge_end(last.edge), last.hi));
  return Polygon(std::move(pts));
}

/// The two sub-polygons on either side of chord ab: first runs a -> b along the
/// boundary counterclockwise, second b -> a.
inline std::pair<Polygon, Polygon> split_by_chord(const Polygon& poly, const Point& a, const Point& b) {
  if (!is_chord(poly, a, b)) throw Error(ErrorKind::NotAChord, format_point(a) + " - " + format_point(b));
  return {polygon_from_arc(poly, boundary_arc(poly, a, b)), polygon_from_arc(poly, boundary_arc(poly, b, a))};
}

/// Windows of R with their sides; asserts properties (ii)-(iv).
inline std::vector<Window> extract_windows(const Polygon& poly, const Region& r) {
  std::vector<Window> out;
  for (std::size_t i = 0; i < r.boundary.size(); ++i) {
    const auto& piece = r.boundary[i];
    if (piece.kind != PieceKind::Window) continue;
    Window w;
    w.a_index = piece.reflex_vertex;
    w.a = poly.vertex(piece.reflex_vertex);
    w.b = piece.foot;
    w.reflex_first = piece.reflex_first;
    w.piece = i;
    if (w.b.parameter <= 0 || w.b.parameter >= 1)
      throw Error(ErrorKind::PropertyViolation, "(iii) window foot is not inside an edge");
    if (!poly.is_reflex(w.a_index))
      throw Error(ErrorKind::PropertyViolation, "(iii) window endpoint a is not reflex");
    const auto& cov = r.covered[w.b.edge.index];
    if (set_contains(cov, w.b.parameter))
      throw Error(ErrorKind::PropertyViolation, "(iv) foot " + format_point(w.b.point) + " is inside the region");
    const bool abuts = std::any_of(cov.begin(), cov.end(), [&](const Interval& iv) {
      return iv.positive_length() && (iv.lo == w.b.parameter || iv.hi == w.b.parameter);
    });
    if (!abuts)
      throw Error(ErrorKind::PropertyViolation,
                  "(iv) no covered points of e_ab next to foot " + format_point(w.b.point));
    w.far_side = polygon_from_arc(poly, boundary_arc(poly, piece.from, piece.to));
    w.near_side = polygon_from_arc(poly, boundary_arc(poly, piece.to, piece.from));
    out.push_back(std::move(w));
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (segments_intersect(out[i].a, out[i].b.point, out[j].a, out[j].b.point))
        throw Error(ErrorKind::PropertyViolation, "(ii) windows are not disjoint");
  return out;
}

/// Near-side boundary points that see the open chord, as open intervals.
inline std::vector<EdgeInterval> near_side_chord_visibility(const Polygon& poly, const Window& w) {
  return visible_intervals(poly, Source::chord(w.a, w.b.point), boundary_arc(poly, w.to(), w.from()));
}

/// Every chord crossing ab has an endpoint in R. The far endpoint lies in U_ab,
/// so this asks whether every near-side boundary point seeing the open chord is
/// in cl(R).
inline bool is_saturated(const Polygon& poly, const Region& r, const Window& w) {
  const auto walls = r.walls(poly.size());
  for (const auto& v : near_side_chord_visibility(poly, w))
    if (!set_covers(walls[v.edge], v.interval)) return false;
  return true;
}

/// The probe c on e_ab: inside R's covered interval next to b, and on the same
/// side as b of every line through two vertices of P. Placed halfway between b
/// and the nearest such line crossing (or the far end of the covered interval).
namespace detail {

inline BoundaryPoint probe_near_foot(const Polygon& poly, const Region& r, const Window& w) {
  const std::size_t e = w.b.edge.index;
  const Rational& tb = w.b.parameter;
  // Covered side: the wall next to b in the boundary continues away from the window.
  const int dir = w.reflex_first ? 1 : -1;
  std::optional<Rational> delta;
  for (const auto& iv : r.covered[e]) {
    if (!iv.positive_length()) continue;
    if (dir > 0 && iv.lo == tb) delta = iv.hi - tb;
    if (dir < 0 && iv.hi == tb) delta = tb - iv.lo;
  }
  if (!delta) throw Error(ErrorKind::NoCoveredNeighborhood, "no covered interval next to " + format_point(w.b.point));
  const Point& es = poly.edge_start(e);
  const Point& ee = poly.edge_end(e);
  const auto& v = poly.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const auto hit = line_intersection(v[i], v[j], es, ee);
      if (!hit) continue;
      const Rational u = param_along(es, ee, *hit);
      const Rational d = (u - tb) * dir;
      if (d > 0 && d < *delta) delta = d;
    }
  }
  return boundary_point(poly, e, tb + Rational(dir) * *delta / 2);
}

}  // namespace detail

inline BoundaryPoint probe_point(const Polygon& poly, const Region& r, const Window& w) {
  if (is_saturated(poly, r, w)) throw Error(ErrorKind::WindowSaturated, "probe requested for a saturated window");
  return detail::probe_near_foot(poly, r, w);
}

namespace detail {

inline void merge_collinear_walls(std::vector<BoundaryPiece>& pieces, const Polygon& poly) {
  std::vector<BoundaryPiece> out;
  for (auto& p : pieces) {
    if (!out.empty() && p.kind == PieceKind::Wall && out.back().kind == PieceKind::Wall &&
        out.back().host == p.host && out.back().hi == p.lo) {
      out.back() = make_wall(poly, p.host.index, out.back().lo, p.hi);
      continue;
    }
    out.push_back(std::move(p));
  }
  if (out.size() > 1 && out.front().kind == PieceKind::Wall && out.back().kind == PieceKind::Wall &&
      out.front().host == out.back().host && out.back().hi == out.front().lo) {
    out.front() = make_wall(poly, out.front().host.index, out.back().lo, out.front().hi);
    out.pop_back();
  }
  pieces = std::move(out);
}

inline EdgeCoverage union_coverage(EdgeCoverage a, const EdgeCoverage& b) {
  for (std::size_t e = 0; e < a.size(); ++e) {
    a[e].insert(a[e].end(), b[e].begin(), b[e].end());
    a[e] = normalize(std::move(a[e]));
  }
  return a;
}

inline std::size_t count_covered(const EdgeCoverage& c) {
  return static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [](const auto& s) { return any_positive(s); }));
}

}  // namespace detail

struct Expansion {
  Region next;
  std::vector<ProvenanceRecord> records;
};

/// R_{k+1} = cl(R_k) ∪ W_ab over all windows, spliced across each window.
/// `saturated` gives the precomputed classification per window.
inline Expansion expand(const Polygon& poly, const Region& rk, const std::vector<Window>& windows,
                        const std::vector<bool>& saturated, std::size_t step) {
  Expansion out;
  if (windows.empty()) {
    out.next = rk;
    return out;
  }
  const std::size_t n = poly.size();
  std::vector<std::vector<BoundaryPiece>> replacement(rk.boundary.size());
  EdgeCoverage covered = detail::union_coverage(rk.covered, rk.walls(n));
  for (std::size_t wi = 0; wi < windows.size(); ++wi) {
    const Window& w = windows[wi];
    ProvenanceRecord rec;
    rec.step = step;
    rec.window = w;
    Source src;
    if (saturated[wi]) {
      rec.mode = ExpansionMode::Saturated;
      src = Source::chord(w.a, w.b.point);
    } else {
      rec.mode = ExpansionMode::Unsaturated;
      rec.probe = detail::probe_near_foot(poly, rk, w);
      src = Source::point(rec.probe->point, rec.probe->edge.index);
    }
    const Arc far_arc = boundary_arc(poly, w.from(), w.to());
    ArcVisibility av = arc_visibility(poly, src, far_arc);
    if (av.pieces.empty() || av.pieces.front().from != w.from() || av.pieces.back().to != w.to())
      throw Error(ErrorKind::PropertyViolation,
                  "expansion behind window at " + format_point(w.a) + " does not span the far side");
    // W_ab closed by the old window, traversed the other way.
    BoundaryPiece closing = rk.boundary[w.piece];
    std::swap(closing.from, closing.to);
    closing.reflex_first = !closing.reflex_first;
    rec.expansion.boundary = av.pieces;
    rec.expansion.boundary.push_back(closing);
    rec.expansion.covered = detail::coverage_of(n, av.visible);
    const auto& wcov = rec.expansion.covered;
    for (std::size_t e = 0; e < n; ++e)
      if (any_positive(wcov[e]) && !any_positive(rk.covered[e])) ++rec.new_edges;
    rec.far_side_fully_visible = std::none_of(av.pieces.begin(), av.pieces.end(), [](const BoundaryPiece& p) {
      return p.kind == PieceKind::Window;
    });
    covered = detail::union_coverage(std::move(covered), wcov);
    replacement[w.piece] = std::move(av.pieces);
    out.records.push_back(std::move(rec));
  }
  std::vector<BoundaryPiece> pieces;
  for (std::size_t i = 0; i < rk.boundary.size(); ++i) {
    if (rk.boundary[i].kind == PieceKind::Window) {
      pieces.insert(pieces.end(), replacement[i].begin(), replacement[i].end());
    } else {
      pieces.push_back(rk.boundary[i]);
    }
  }
  detail::merge_collinear_walls(pieces, poly);
  out.next.boundary = std::move(pieces);
  out.next.covered = std::move(covered);
  return out;
}

inline Condition classify_condition(const std::vector<bool>& saturated) {
  if (saturated.empty()) return Condition::None;
  const bool all = std::all_of(saturated.begin(), saturated.end(), [](bool s) { return s; });
  if (all) return Condition::A;
  if (saturated.size() >= 2) return Condition::B;
  return Condition::None;
}

inline bool is_critical(std::size_t mu, std::size_t k, std::size_t n) { return mu == 2 * k + 3 && mu < n; }

/// Builds R_0, R_1, ... until a region has no windows.
inline IlluminationResult illuminate(const Polygon& poly, const Point& s) {
  const auto report = validate_polygon(poly);
  if (!admissible_for_illumination(poly, report)) throw Error(ErrorKind::DegenerateConfiguration, report.summary());
  const auto gp = general_position_with_source(poly, s);
  if (!gp.ok()) throw Error(ErrorKind::DegenerateConfiguration, gp.summary());

  const std::size_t n = poly.size();
  IlluminationResult res;
  res.polygon = poly;
  res.source = s;
  res.bound_k = reflection_bound(n);
  res.regions.push_back(visibility_from_point(poly, s));
  for (std::size_t e = 0; e < n; ++e)
    for (const auto& iv : res.regions[0].covered[e]) res.events.push_back({e, iv, 0, -1, true});

  for (std::size_t k = 0;; ++k) {
    const Region& rk = res.regions[k];
    check_structure(rk);
    auto windows = extract_windows(poly, rk);
    LedgerStep entry;
    entry.k = k;
    entry.mu = rk.weakly_covered_edges();
    entry.lambda = windows.size();
    for (const auto& w : windows) entry.saturated.push_back(is_saturated(poly, rk, w));
    entry.critical = is_critical(entry.mu, k, n);
    if (entry.critical) entry.condition = classify_condition(entry.saturated);
    entry.covered = rk.covered;
    if (entry.mu < std::min(2 * k + 3, n))
      throw Error(ErrorKind::InvariantBreach,
                  "mu_" + std::to_string(k) + " = " + std::to_string(entry.mu) + " < min(2k+3, n)");
    const auto saturated = entry.saturated;
    res.ledger.steps.push_back(std::move(entry));
    res.windows_per_step.push_back(windows);
    if (windows.empty()) {
      res.terminated_at = k;
      break;
    }
    if (k >= n) throw Error(ErrorKind::IterationCap, "more than n expansion rounds");

    const auto walls = rk.walls(n);
    Expansion ex = expand(poly, rk, windows, saturated, k);
    for (std::size_t e = 0; e < n; ++e)
      for (const auto& iv : walls[e]) res.events.push_back({e, iv, k + 1, -1, false});
    for (auto& rec : ex.records) {
      const long idx = static_cast<long>(res.provenance.size());
      for (std::size_t e = 0; e < n; ++e)
        for (const auto& iv : rec.expansion.covered[e]) res.events.push_back({e, iv, k + 1, idx, true});
      res.provenance.push_back(std::move(rec));
    }
    res.regions.push_back(std::move(ex.next));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Audit

struct AuditFinding {
  std::size_t k;
  std::string what;
};

struct AuditReport {
  std::vector<AuditFinding> breaches;
  std::size_t critical_steps = 0;
  std::size_t condition_a = 0;
  std::size_t condition_b = 0;

  bool ok() const noexcept { return breaches.empty(); }
};

/// Recomputes the counting invariants from the ledger.
inline AuditReport audit_criticality(const IlluminationResult& res) {
  AuditReport rep;
  const std::size_t n = res.polygon.size();
  const auto& steps = res.ledger.steps;
  auto breach = [&](std::size_t k, std::string what) { rep.breaches.push_back({k, std::move(what)}); };
  if (steps.empty()) {
    breach(0, "empty ledger");
    return rep;
  }
  if (steps[0].mu < 3) breach(0, "mu_0 < 3");
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& st = steps[k];
    const std::size_t mu = detail::count_covered(st.covered);
    if (mu != st.mu) breach(k, "recorded mu disagrees with covered intervals");
    if (mu < std::min(2 * k + 3, n)) breach(k, "mu_k < min(2k+3, n)");
    if (k + 1 < steps.size()) {
      if (steps[k + 1].mu < mu + st.lambda) breach(k, "mu_{k+1} < mu_k + lambda_k");
      for (std::size_t e = 0; e < n; ++e)
        for (const auto& iv : st.covered[e])
          if (!set_covers(steps[k + 1].covered[e], iv)) breach(k, "coverage shrinks on edge " + std::to_string(e));
    }
    if (is_critical(mu, k, n)) {
      ++rep.critical_steps;
      const Condition c = classify_condition(st.saturated);
      if (c == Condition::A) ++rep.condition_a;
      else if (c == Condition::B) ++rep.condition_b;
      else breach(k, "critical step satisfies neither (A) nor (B)");
    }
  }
  for (const auto& rec : res.provenance) {
    const std::size_t k = rec.step;
    if (rec.new_edges < 1) breach(k, "expansion covers no new edge");
    if (rec.mode == ExpansionMode::Saturated && !rec.far_side_fully_visible && rec.new_edges < 2)
      breach(k, "saturated expansion with U_ab not inside V_0(ab) covers fewer than two new edges");
  }
  if (res.terminated_at > res.bound_k) breach(res.terminated_at, "terminated after the floor(n/2)-1 bound");
  return rep;
}

// ---------------------------------------------------------------------------
// Queries against a finished result

/// Final region's closure reaches every point of every edge.
inline bool final_closure_spans_boundary(const IlluminationResult& res) {
  const auto walls = res.regions.back().walls(res.polygon.size());
  for (const auto& w : walls)
    if (!set_covers(w, closed_interval(Rational(0), Rational(1)))) return false;
  return true;
}

}  // namespace diffuse
