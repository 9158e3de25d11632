#pragma once

// Brute-force minimum reflection count over a sampled boundary. Any path it
// finds is valid, so the count is an upper bound on the true minimum; as a
// lower bound it is only evidence at the sampling resolution.

#include <deque>
#include <string>
#include <vector>

#include "diffuse/geom.hpp"
#include "diffuse/paths.hpp"
#include "diffuse/visibility.hpp"

namespace diffuse {

struct OracleResult {
  std::size_t min_reflections = 0;
  ReflectionPath witness;
  std::size_t samples_per_edge = 0;

  std::string status() const {
    return "evidence at resolution m=" + std::to_string(samples_per_edge) + " (upper bound proved by witness)";
  }
};

/// Edge e is sampled at parameters j/m, j = 1..m-1, so the samples at 2m
/// contain those at m.
inline OracleResult min_reflections_bfs(const Polygon& poly, const Point& s, const Point& t, std::size_t m) {
  if (m < 2) throw Error(ErrorKind::BadN, "oracle resolution must be at least 2");
  if (!point_location(poly, s).interior()) throw Error(ErrorKind::SourceNotInterior, "s not in int(P)");
  if (!point_location(poly, t).interior()) throw Error(ErrorKind::TargetOutside, "t not in int(P)");

  OracleResult out;
  out.samples_per_edge = m;
  out.witness.source = s;
  out.witness.target = t;
  if (s == t || open_segment_in_interior(poly, s, t)) return out;

  const std::size_t n = poly.size();
  const std::size_t per = m - 1;
  const std::size_t total = n * per;
  auto sample = [&](std::size_t id) {
    const std::size_t e = id / per;
    return boundary_point(poly, e, make_rational(static_cast<long>(id % per + 1), static_cast<long>(m)));
  };
  const Arc boundary = full_boundary(poly);
  auto neighbours = [&](const Point& x, std::optional<std::size_t> host) {
    std::vector<std::size_t> ids;
    const Rational mm(static_cast<long>(m));
    for (const auto& v : visible_intervals(poly, Source::point(x, host), boundary)) {
      // j/m strictly inside (lo, hi)
      const Rational lo_m = v.interval.lo * mm;
      const Rational hi_m = v.interval.hi * mm;
      const mpz_class j0 = lo_m.get_num() / lo_m.get_den() + 1;
      const mpz_class hi_ceil = (hi_m.get_num() + hi_m.get_den() - 1) / hi_m.get_den();
      for (mpz_class j = j0; j < hi_ceil; ++j) {
        if (j < 1 || j > static_cast<unsigned long>(per)) continue;
        ids.push_back(v.edge * per + j.get_ui() - 1);
      }
    }
    return ids;
  };

  std::vector<long> parent(total, -2);  // -1: reached from s
  std::deque<std::size_t> queue;
  for (std::size_t id : neighbours(s, std::nullopt)) {
    parent[id] = -1;
    queue.push_back(id);
  }
  while (!queue.empty()) {
    const std::size_t id = queue.front();
    queue.pop_front();
    const BoundaryPoint bp = sample(id);
    if (open_segment_in_interior(poly, bp.point, t)) {
      std::vector<BoundaryPoint> rev;
      for (long cur = static_cast<long>(id); cur >= 0; cur = parent[static_cast<std::size_t>(cur)])
        rev.push_back(sample(static_cast<std::size_t>(cur)));
      out.witness.reflections.assign(rev.rbegin(), rev.rend());
      out.min_reflections = out.witness.reflections.size();
      return out;
    }
    for (std::size_t nb : neighbours(bp.point, bp.edge.index)) {
      if (parent[nb] != -2) continue;
      parent[nb] = static_cast<long>(id);
      queue.push_back(nb);
    }
  }
  throw Error(ErrorKind::Unreachable, "t not reached at resolution m=" + std::to_string(m));
}

}  // namespace diffuse
