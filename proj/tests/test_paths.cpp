#include <gtest/gtest.h>

#include <random>

#include "diffuse/generators.hpp"
#include "diffuse/paths.hpp"
#include "fixtures.hpp"

using namespace diffuse;
using fixtures::P;
using fixtures::Q;

namespace {

const IlluminationResult& l6_result() {
  static const IlluminationResult res = illuminate(fixtures::l6(), fixtures::l6_source());
  return res;
}

}  // namespace

TEST(LocateK, L6) {
  EXPECT_EQ(locate_k(l6_result(), Q(1, 2, 1, 2)), 0u);
  EXPECT_EQ(locate_k(l6_result(), Q(9, 10, 19, 10)), 1u);
  EXPECT_TRUE(open_segment_in_interior(fixtures::l6(), fixtures::l6_source(), Q(1, 2, 1, 2)));
}

TEST(LocateK, ConvexIsZero) {
  const auto poly = convex(9, 5);
  const auto res = illuminate(poly, Point(make_rational(1, 9), make_rational(1, 13)));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(locate_k(res, random_interior_point(poly, rng)), 0u);
}

TEST(LocateK, Errors) {
  try {
    locate_k(l6_result(), Q(2, 3, 3, 2));  // on the chord (1,1)-(1/3,2)
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OnWindowChord);
    EXPECT_EQ(e.index(), 0);
  }
  try {
    locate_k(l6_result(), Q(3, 2, 3, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TargetOutside);
  }
  EXPECT_THROW(locate_k(l6_result(), P(0, 1)), Error);
}

TEST(ExtractPath, L6Direct) {
  const auto path = extract_path(l6_result(), Q(1, 2, 1, 2));
  EXPECT_EQ(path.reflection_count(), 0u);
  EXPECT_EQ(path.source, fixtures::l6_source());
  EXPECT_EQ(path.target, Q(1, 2, 1, 2));
  EXPECT_TRUE(validate_path(fixtures::l6(), path).ok());
}

TEST(ExtractPath, L6OneBounce) {
  const auto l6 = fixtures::l6();
  const Point t = Q(9, 10, 19, 10);
  const auto path = extract_path(l6_result(), t);
  ASSERT_EQ(path.reflection_count(), 1u);
  const auto& p = path.reflections[0];
  EXPECT_TRUE(open_segment_in_interior(l6, fixtures::l6_source(), p.point));
  EXPECT_TRUE(open_segment_in_interior(l6, p.point, t));
  EXPECT_TRUE(validate_path(l6, path).ok()) << validate_path(l6, path).summary();
  // p is on the near side of the window.
  const auto ws = l6_result().windows_per_step[0];
  EXPECT_EQ(locate_in_ring(ws[0].near_side.vertices(), p.point).kind, LocationKind::Boundary);
}

TEST(ExtractPath, Deterministic) {
  const Point t = Q(9, 10, 19, 10);
  const auto a = extract_path(l6_result(), t);
  const auto b = extract_path(l6_result(), t);
  ASSERT_EQ(a.reflection_count(), b.reflection_count());
  for (std::size_t i = 0; i < a.reflections.size(); ++i) EXPECT_EQ(a.reflections[i].point, b.reflections[i].point);
}

TEST(ExtractPath, ZigzagSeven) {
  const auto fx = zigzag(16);
  const auto res = illuminate(fx.polygon, fx.source);
  const auto path = extract_path(res, *fx.target);
  EXPECT_EQ(path.reflection_count(), 7u);
  EXPECT_TRUE(validate_path(fx.polygon, path).ok());
}

TEST(ExtractPath, TargetErrors) {
  EXPECT_THROW(extract_path(l6_result(), Q(3, 2, 3, 2)), Error);
  EXPECT_THROW(extract_path(l6_result(), Q(2, 3, 3, 2)), Error);
}

TEST(ValidatePath, Direct) {
  const ReflectionPath path{fixtures::l6_source(), {}, Q(1, 2, 1, 2)};
  EXPECT_TRUE(validate_path(fixtures::l6(), path).ok());
}

TEST(ValidatePath, ReflectionAtVertex) {
  const auto l6 = fixtures::l6();
  const ReflectionPath path{Q(1, 2, 1, 2), {BoundaryPoint{EdgeRef{3}, P(1, 1), Rational(0)}}, Q(9, 10, 19, 10)};
  EXPECT_TRUE(validate_path(l6, path).has(ViolationKind::ReflectionAtVertex));
}

TEST(ValidatePath, SegmentCrossesBoundary) {
  const auto l6 = fixtures::l6();
  const ReflectionPath path{fixtures::l6_source(), {}, Q(9, 10, 19, 10)};
  EXPECT_TRUE(validate_path(l6, path).has(ViolationKind::SegmentLeavesInterior));
}

TEST(ValidatePath, OtherViolations) {
  const auto l6 = fixtures::l6();
  const ReflectionPath off_edge{Q(1, 2, 1, 2), {BoundaryPoint{EdgeRef{0}, Q(0, 1, 1, 2), make_rational(1, 2)}},
                                Q(1, 2, 3, 2)};
  EXPECT_TRUE(validate_path(l6, off_edge).has(ViolationKind::ReflectionOffEdge));
  const ReflectionPath outside{Q(3, 2, 3, 2), {}, Q(1, 2, 1, 2)};
  EXPECT_TRUE(validate_path(l6, outside).has(ViolationKind::EndpointNotInterior));
  const ReflectionPath repeated{Q(1, 2, 1, 2), {}, Q(1, 2, 1, 2)};
  EXPECT_TRUE(validate_path(l6, repeated).has(ViolationKind::DegenerateSegment));
}

TEST(PathProperty, RandomTargetsWithinLevel) {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto poly = random_simple(16, seed);
    const auto res = illuminate(poly, random_interior_point(poly, rng));
    for (int i = 0; i < 30; ++i) {
      const Point t = random_interior_point(poly, rng);
      const std::size_t k = locate_k(res, t);
      const auto path = extract_path(res, t);
      EXPECT_LE(path.reflection_count(), k);
      EXPECT_LE(k, res.bound_k);
      EXPECT_TRUE(validate_path(poly, path).ok()) << validate_path(poly, path).summary();
      EXPECT_TRUE(validate_path(poly, path.reversed()).ok());
    }
  }
}
