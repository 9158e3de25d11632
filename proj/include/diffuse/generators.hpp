#pragma once

// Test polygons: the two extremal families, convex polygons on a circle, and
// random simple polygons. All deterministic in (family, n, seed).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "diffuse/geom.hpp"

namespace diffuse {

enum class Family { Zigzag, Spiral, Convex, Random };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::Zigzag: return "zigzag";
    case Family::Spiral: return "spiral";
    case Family::Convex: return "convex";
    case Family::Random: return "random";
  }
  return "unknown";
}

inline std::optional<Family> parse_family(const std::string& name) {
  if (name == "zigzag") return Family::Zigzag;
  if (name == "spiral") return Family::Spiral;
  if (name == "convex") return Family::Convex;
  if (name == "random") return Family::Random;
  return std::nullopt;
}

struct FixtureSpec {
  Family family = Family::Convex;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  Polygon polygon;
  Point source;
  std::optional<Point> target;
};

namespace detail {

inline void require_general_position(const Polygon& poly, const Point& p, const char* what) {
  const auto rep = general_position_with_source(poly, p);
  if (!rep.ok())
    throw Error(ErrorKind::GenerationFailed, std::string(what) + " not in general position: " + rep.summary());
}

}  // namespace detail

/// Serpentine corridor with pointed ends: n/2 steep legs between alternating
/// rows, s near the first tip and t near the last.
inline FixtureSpec zigzag(std::size_t n) {
  if (n < 8 || n % 2 != 0) throw Error(ErrorKind::BadN, "zigzag needs even n >= 8, got " + std::to_string(n));
  const long pitch = 10, height = 60, half = 8;
  const long m = static_cast<long>(n / 2);
  std::vector<Point> upper, lower;
  for (long i = 1; i < m; ++i) {
    const long row = i % 2 ? height : 0;
    const Rational bump = make_rational(i * i, 97);
    upper.emplace_back(Rational(i * pitch), Rational(row + half) + bump);
    lower.emplace_back(Rational(i * pitch), Rational(row - half) + bump);
  }
  const Point first(0, 0);
  const Point last(m * pitch, m % 2 ? height : 0);
  std::vector<Point> v{first};
  v.insert(v.end(), lower.begin(), lower.end());
  v.push_back(last);
  v.insert(v.end(), upper.rbegin(), upper.rend());

  FixtureSpec f;
  f.family = Family::Zigzag;
  f.n = n;
  f.polygon = Polygon::checked(std::move(v));
  const Rational depth = make_rational(1, 10);
  f.source = lerp(first, Point(pitch, height), depth);
  f.target = lerp(last, Point((m - 1) * pitch, (m - 1) % 2 ? height : 0), depth);
  detail::require_general_position(f.polygon, f.source, "zigzag source");
  detail::require_general_position(f.polygon, *f.target, "zigzag target");
  return f;
}

/// Square corridor spiralling inward with n/2 - 1 legs, slightly jittered off
/// the axes. s sits at the outer cap, t at the inner one.
inline FixtureSpec spiral(std::size_t n) {
  if (n < 12 || n % 4 != 0) throw Error(ErrorKind::BadN, "spiral needs n divisible by 4, n >= 12, got " + std::to_string(n));
  const long legs = static_cast<long>(n / 2) - 1;
  const long pitch = 10, half = 2;
  const long first_len = pitch * ((legs - 1) / 2 + 2);
  const long dx[4] = {1, 0, -1, 0}, dy[4] = {0, 1, 0, -1};

  std::vector<std::pair<long, long>> centre{{0, 0}};
  for (long i = 0; i < legs; ++i) {
    const long len = i < 3 ? first_len : first_len - ((i - 1) / 2) * pitch;
    const auto [x, y] = centre.back();
    centre.emplace_back(x + dx[i % 4] * len, y + dy[i % 4] * len);
  }
  std::vector<Point> inner, outer;
  for (long i = 0; i <= legs; ++i) {
    long nx = 0, ny = 0;  // sum of left normals of the legs meeting here
    if (i > 0) {
      nx -= dy[(i - 1) % 4];
      ny += dx[(i - 1) % 4];
    }
    if (i < legs) {
      nx -= dy[i % 4];
      ny += dx[i % 4];
    }
    const auto [x, y] = centre[static_cast<std::size_t>(i)];
    const Rational jx = make_rational((i * 37) % 11, 1000), jy = make_rational((i * 53) % 13, 1000);
    inner.emplace_back(Rational(x + half * nx) + jx, Rational(y + half * ny) + jy);
    outer.emplace_back(Rational(x - half * nx) - jy, Rational(y - half * ny) + jx);
  }
  std::vector<Point> v(outer.begin(), outer.end());
  v.insert(v.end(), inner.rbegin(), inner.rend());

  FixtureSpec f;
  f.family = Family::Spiral;
  f.n = n;
  f.polygon = Polygon::checked(std::move(v));
  const Rational ox = make_rational(1, 7), oy = make_rational(1, 9);
  f.source = Point(make_rational(half, 2) + ox, oy);
  const auto [ex, ey] = centre.back();
  const long k = (legs - 1) % 4;
  f.target = Point(Rational(ex - dx[k] * half / 2) + ox, Rational(ey - dy[k] * half / 2) + oy);
  detail::require_general_position(f.polygon, f.source, "spiral source");
  detail::require_general_position(f.polygon, *f.target, "spiral target");
  return f;
}

/// Points on the unit circle via the rational parametrization
/// ((1 - u^2) / (1 + u^2), 2u / (1 + u^2)); u = tan of half a jittered angle,
/// rounded to a multiple of 1/1024. Exactly concyclic, hence convex and with
/// no three vertices collinear.
inline Polygon convex(std::size_t n, std::uint64_t seed) {
  if (n < 3) throw Error(ErrorKind::BadN, "convex needs n >= 3, got " + std::to_string(n));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  constexpr long grid = 1024;
  std::vector<long> us;
  for (std::size_t i = 0; i < n; ++i) {
    // Angles in (-0.9 pi, 0.9 pi) keep u bounded.
    const double theta = std::numbers::pi * 0.9 * (2.0 * (static_cast<double>(i) + 0.5 + jitter(rng)) / static_cast<double>(n) - 1.0);
    us.push_back(std::lround(std::tan(theta / 2) * grid));
  }
  for (std::size_t i = 1; i < n; ++i)
    if (us[i] <= us[i - 1]) throw Error(ErrorKind::GenerationFailed, "convex: angles collide at n=" + std::to_string(n));
  std::vector<Point> v;
  for (long u : us) {
    const Rational q = make_rational(u, grid);
    const Rational d = 1 + q * q;
    v.emplace_back(Rational((1 - q * q) / d), Rational(2 * q / d));
  }
  return Polygon::checked(std::move(v));
}

namespace detail {

struct IPoint {
  std::int64_t x, y;
  bool operator==(const IPoint&) const = default;
};

inline std::int64_t icross(const IPoint& o, const IPoint& a, const IPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline bool iproper_cross(const IPoint& a, const IPoint& b, const IPoint& c, const IPoint& d) {
  auto sgn = [](std::int64_t v) { return (v > 0) - (v < 0); };
  const int o1 = sgn(icross(a, b, c)), o2 = sgn(icross(a, b, d));
  const int o3 = sgn(icross(c, d, a)), o4 = sgn(icross(c, d, b));
  if (o1 != o2 && o3 != o4) return true;
  auto within = [](const IPoint& p, const IPoint& q, const IPoint& r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  return (o1 == 0 && within(a, b, c)) || (o2 == 0 && within(a, b, d)) || (o3 == 0 && within(c, d, a)) ||
         (o4 == 0 && within(c, d, b));
}

/// Reverses tour segments until no two non-adjacent edges meet. Each reversal
/// shortens the tour, so this terminates.
inline void untangle(std::vector<IPoint>& tour) {
  const std::size_t n = tour.size();
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n && !changed; ++i)
      for (std::size_t j = i + 2; j < n && !changed; ++j) {
        if (i == 0 && j == n - 1) continue;
        if (iproper_cross(tour[i], tour[i + 1], tour[j], tour[(j + 1) % n])) {
          std::reverse(tour.begin() + static_cast<long>(i) + 1, tour.begin() + static_cast<long>(j) + 1);
          changed = true;
        }
      }
  }
}

inline bool any_collinear(const std::vector<IPoint>& pts, std::size_t& culprit) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (icross(pts[i], pts[j], pts[k]) == 0) {
          culprit = k;
          return true;
        }
  return false;
}

}  // namespace detail

/// Random point set on an integer grid, collinear triples re-drawn, then a
/// random tour untangled by 2-opt moves.
inline Polygon random_simple(std::size_t n, std::uint64_t seed) {
  if (n < 3) throw Error(ErrorKind::BadN, "random_simple needs n >= 3, got " + std::to_string(n));
  std::mt19937_64 rng(seed);
  const std::int64_t side = std::max<std::int64_t>(64, 8 * static_cast<std::int64_t>(n));
  std::uniform_int_distribution<std::int64_t> coord(0, side - 1);
  auto draw = [&] { return detail::IPoint{coord(rng), coord(rng)}; };

  std::vector<detail::IPoint> pts;
  for (int budget = 0; pts.size() < n; ++budget) {
    if (budget > 1000 * static_cast<int>(n)) throw Error(ErrorKind::GenerationFailed, "random_simple: point budget");
    const auto p = draw();
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  std::size_t culprit = 0;
  for (int retries = 0; detail::any_collinear(pts, culprit); ++retries) {
    if (retries > 1000) throw Error(ErrorKind::GenerationFailed, "random_simple: general-position repair");
    auto p = draw();
    while (std::find(pts.begin(), pts.end(), p) != pts.end()) p = draw();
    pts[culprit] = p;
  }
  std::shuffle(pts.begin(), pts.end(), rng);
  detail::untangle(pts);

  std::vector<Point> v;
  for (const auto& p : pts) v.emplace_back(static_cast<long>(p.x), static_cast<long>(p.y));
  Polygon poly(v);
  if (poly.signed_area2() < 0) {
    std::reverse(v.begin(), v.end());
    poly = Polygon(v);
  }
  const auto rep = validate_polygon(poly);
  if (!rep.ok()) throw Error(ErrorKind::GenerationFailed, "random_simple: " + rep.summary());
  return poly;
}

/// Uniform-ish interior point with small denominators, in general position
/// with respect to `poly`. Used for sources and targets.
template <class Rng>
Point random_interior_point(const Polygon& poly, Rng& rng, int attempts = 10000) {
  Rational minx = poly.vertex(0).x, maxx = minx, miny = poly.vertex(0).y, maxy = miny;
  for (const auto& p : poly.vertices()) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  constexpr long grid = 1 << 16;
  std::uniform_int_distribution<long> unit(1, grid - 1);
  for (int i = 0; i < attempts; ++i) {
    const Point q(minx + (maxx - minx) * make_rational(unit(rng), grid),
                  miny + (maxy - miny) * make_rational(unit(rng), grid));
    if (!point_location(poly, q).interior()) continue;
    if (!general_position_with_source(poly, q).ok()) continue;
    return q;
  }
  throw Error(ErrorKind::GenerationFailed, "no interior point found");
}

}  // namespace diffuse
