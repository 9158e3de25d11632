#include <gtest/gtest.h>

#include "diffuse/geom.hpp"
#include "fixtures.hpp"

using namespace diffuse;
using fixtures::P;
using fixtures::Q;

TEST(Rational, ParseIsCanonical) {
  EXPECT_EQ(parse_rational("6/4"), make_rational(3, 2));
  EXPECT_EQ(parse_rational("-2/4"), make_rational(-1, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(format_rational(parse_rational("-10/4")), "-5/2");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational(""), Error);
}

TEST(Rational, MakeRationalReduces) {
  const Rational r = make_rational(-6, -8);
  EXPECT_EQ(r.get_num(), 3);
  EXPECT_EQ(r.get_den(), 4);
  EXPECT_THROW(make_rational(1, 0), Error);
}

TEST(Orientation, Basic) {
  EXPECT_EQ(orientation(P(0, 0), P(1, 0), P(0, 1)), Orientation::CCW);
  EXPECT_EQ(orientation(P(0, 0), P(1, 0), P(2, 0)), Orientation::COLLINEAR);
  EXPECT_EQ(orientation(P(0, 0), P(0, 1), P(1, 0)), Orientation::CW);
}

TEST(Orientation, ExactNearCollinear) {
  // One part in 10^30 off the line y = x: doubles would call this collinear.
  const Rational eps = parse_rational("1/1000000000000000000000000000000");
  const Point a = P(0, 0), b = P(1, 1);
  EXPECT_EQ(orientation(a, b, Point(Rational(2), Rational(2) + eps)), Orientation::CCW);
  EXPECT_EQ(orientation(a, b, Point(Rational(2), Rational(2) - eps)), Orientation::CW);
  EXPECT_EQ(orientation(a, b, Point(Rational(2), Rational(2))), Orientation::COLLINEAR);
}

TEST(OpenSegment, L6) {
  const auto l6 = fixtures::l6();
  EXPECT_TRUE(open_segment_in_interior(l6, Q(1, 2, 1, 2), Q(3, 2, 1, 2)));
  EXPECT_FALSE(open_segment_in_interior(l6, fixtures::l6_source(), Q(9, 10, 19, 10)));
  EXPECT_FALSE(open_segment_in_interior(l6, P(0, 0), P(2, 0)));
}

TEST(OpenSegment, BlockedSegmentHasExteriorSample) {
  // Independent check of the blocked case: some sample of the segment is outside.
  const auto l6 = fixtures::l6();
  bool outside = false;
  for (const auto& p : fixtures::segment_samples(fixtures::l6_source(), Q(9, 10, 19, 10), 200))
    outside = outside || point_location(l6, p).kind == LocationKind::Exterior;
  EXPECT_TRUE(outside);
}

TEST(OpenSegment, GrazingReflexVertex) {
  // Touches the reflex vertex (1,1): the vertex is on the boundary, not interior.
  const auto l6 = fixtures::l6();
  EXPECT_FALSE(open_segment_in_interior(l6, Q(3, 2, 1, 2), Q(1, 2, 3, 2)));
  EXPECT_TRUE(open_segment_in_interior(l6, Q(3, 2, 1, 2), Q(1, 2, 4, 3)));
}

TEST(RayShoot, UnitSquare) {
  const auto sq = fixtures::unit_square();
  const auto hit = ray_shoot(sq, Q(1, 2, 1, 2), P(1, 0));
  EXPECT_EQ(hit.edge.index, 1u);
  EXPECT_EQ(hit.point, Q(1, 1, 1, 2));
  EXPECT_EQ(hit.parameter, make_rational(1, 2));
}

TEST(RayShoot, DiagonalHitsVertex) {
  try {
    ray_shoot(fixtures::unit_square(), Q(1, 2, 1, 2), P(1, 1));
    FAIL() << "expected VertexHit";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VertexHit);
    EXPECT_EQ(e.index(), 2);
  }
}

TEST(RayShoot, L6PastReflexVertex) {
  // From s through (1,1): the line y = -(3/2)x + 5/2 meets y = 2 at x = 1/3.
  const auto l6 = fixtures::l6();
  const Point s = fixtures::l6_source();
  // Start just past the reflex vertex so the vertex itself is not the first hit.
  const Point start = lerp(s, P(1, 1), make_rational(11, 10));
  const auto hit = ray_shoot(l6, start, Point(P(1, 1).x - s.x, P(1, 1).y - s.y));
  EXPECT_EQ(hit.edge.index, 4u);
  EXPECT_EQ(hit.point, Q(1, 3, 2, 1));
  EXPECT_EQ(hit.point.y, -make_rational(3, 2) * hit.point.x + make_rational(5, 2));
}

TEST(RayShoot, Errors) {
  const auto sq = fixtures::unit_square();
  EXPECT_THROW(ray_shoot(sq, P(2, 2), P(1, 0)), Error);
  EXPECT_THROW(ray_shoot(sq, Q(1, 2, 1, 2), P(0, 0)), Error);
}

TEST(ValidatePolygon, Square) { EXPECT_TRUE(validate_polygon(fixtures::unit_square()).ok()); }

TEST(ValidatePolygon, CollinearAndTouching) {
  const auto rep = validate_polygon(Polygon({P(0, 0), P(2, 0), P(1, 0), P(1, 1)}));
  EXPECT_TRUE(rep.has(ViolationKind::CollinearTriple));
  EXPECT_TRUE(rep.has(ViolationKind::NotSimple));
}

TEST(ValidatePolygon, BowTie) {
  const auto rep = validate_polygon(Polygon({P(0, 0), P(1, 1), P(1, 0), P(0, 1)}));
  EXPECT_TRUE(rep.has(ViolationKind::NotSimple));
  EXPECT_THROW(Polygon::checked({P(0, 0), P(1, 1), P(1, 0), P(0, 1)}), Error);
}

TEST(ValidatePolygon, ClockwiseAndSmall) {
  EXPECT_TRUE(validate_polygon(Polygon({P(0, 0), P(0, 1), P(1, 1), P(1, 0)})).has(ViolationKind::WrongOrientation));
  EXPECT_TRUE(validate_polygon(Polygon({P(0, 0), P(1, 0)})).has(ViolationKind::TooFewVertices));
  EXPECT_TRUE(validate_polygon(Polygon({P(0, 0), P(1, 0), P(1, 0), P(0, 1)})).has(ViolationKind::RepeatedVertex));
}

TEST(ValidatePolygon, L6HasOnlyTheDiagonalCollinearity) {
  const auto l6 = fixtures::l6();
  const auto rep = validate_polygon(l6);
  ASSERT_EQ(rep.violations.size(), 1u);
  EXPECT_EQ(rep.violations[0].kind, ViolationKind::CollinearTriple);
  EXPECT_TRUE(admissible_for_illumination(l6, rep));
}

TEST(PointLocation, UnitSquare) {
  const auto sq = fixtures::unit_square();
  EXPECT_EQ(point_location(sq, Q(1, 2, 1, 2)).kind, LocationKind::Interior);
  const auto b = point_location(sq, Q(1, 1, 1, 2));
  EXPECT_EQ(b.kind, LocationKind::Boundary);
  ASSERT_TRUE(b.edge.has_value());
  EXPECT_EQ(*b.edge, 1u);
  const auto v = point_location(sq, P(1, 1));
  EXPECT_EQ(v.kind, LocationKind::Boundary);
  ASSERT_TRUE(v.vertex.has_value());
  EXPECT_EQ(*v.vertex, 2u);
  EXPECT_EQ(point_location(sq, P(2, 2)).kind, LocationKind::Exterior);
}

TEST(PointLocation, L6Notch) {
  const auto l6 = fixtures::l6();
  EXPECT_EQ(point_location(l6, Q(3, 2, 3, 2)).kind, LocationKind::Exterior);
  EXPECT_EQ(point_location(l6, Q(1, 2, 3, 2)).kind, LocationKind::Interior);
}

TEST(GeneralPosition, Examples) {
  const auto sq = fixtures::unit_square();
  EXPECT_TRUE(general_position_with_source(sq, Q(1, 3, 1, 5)).ok());
  EXPECT_TRUE(general_position_with_source(sq, Q(1, 2, 1, 2)).has(ViolationKind::SourceAlignment));
  EXPECT_TRUE(general_position_with_source(fixtures::l6(), fixtures::l6_source()).ok());
  EXPECT_THROW(general_position_with_source(sq, P(2, 2)), Error);
}

TEST(GeneralPosition, L6SourceAgainstAllPairs) {
  // Independent recount over the 15 vertex pairs.
  const auto l6 = fixtures::l6();
  const Point s = fixtures::l6_source();
  int aligned = 0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) {
      const auto& a = l6.vertex(i);
      const auto& b = l6.vertex(j);
      if ((b.x - a.x) * (s.y - a.y) == (b.y - a.y) * (s.x - a.x)) ++aligned;
    }
  EXPECT_EQ(aligned, 0);
}
