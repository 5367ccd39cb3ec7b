#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <saver/sdf.hpp>
#include <saver/sets.hpp>

#include "oracles.hpp"

using namespace saver;
using Catch::Matchers::WithinAbs;

namespace {

Point pt(double x, double y) {
  Point p(2);
  p << x, y;
  return p;
}

SetSpec unit_box() {
  Matrix a(4, 2);
  a << 1, 0, 0, 1, -1, 0, 0, -1;
  return SetSpec::polytope(a, Vector::Ones(4));
}

// Distance from an interior point to the polygon boundary by brute force:
// walk every edge at the given pitch and keep the closest sample.
double polygon_boundary_distance(const std::vector<Point>& corners, const Point& y,
                                 double pitch) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const Point& u = corners[i];
    const Point& v = corners[(i + 1) % corners.size()];
    double len = (v - u).norm();
    auto steps = static_cast<int>(std::ceil(len / pitch));
    for (int k = 0; k <= steps; ++k) {
      Point s = u + (static_cast<double>(k) / steps) * (v - u);
      best = std::min(best, (y - s).norm());
    }
  }
  return best;
}

}  // namespace

TEST_CASE("norm ball evaluation is the norm of the offset minus the radius", "[sdf]") {
  NormBallSpec big(Vector::Zero(2), 20000.0);
  CHECK(eval_norm_ball(big, pt(0, 0)) == -20000.0);
  CHECK(eval_norm_ball(big, pt(20000, 0)) == 0.0);

  NormBallSpec unit(Vector::Zero(2), 1.0);
  CHECK(eval_norm_ball(unit, pt(3, 4)) == 4.0);  // 3-4-5 triangle

  SECTION("other norm orders") {
    NormBallSpec one(Vector::Zero(2), 1.0, NormOrder::one);
    CHECK(eval_norm_ball(one, pt(0.5, 0.5)) == 0.0);
    CHECK(eval_norm_ball(one, pt(2, 1)) == 2.0);
    NormBallSpec box(Vector::Zero(2), 1.0, NormOrder::inf);
    CHECK(eval_norm_ball(box, pt(0.5, -0.25)) == -0.5);
    CHECK(eval_norm_ball(box, pt(3, 2)) == 2.0);
  }
}

TEST_CASE("norm ball specs validate their inputs", "[sdf]") {
  CHECK_THROWS_AS(NormBallSpec(Vector::Zero(2), 0.0), spec_error);
  CHECK_THROWS_AS(NormBallSpec(Vector::Zero(2), -1.0), spec_error);
  CHECK_THROWS_AS(NormBallSpec(Vector(0), 1.0), spec_error);
  Vector bad(2);
  bad << 1.0, INFINITY;
  CHECK_THROWS_AS(NormBallSpec(bad, 1.0), spec_error);

  NormBallSpec ok(Vector::Zero(2), 1.0);
  CHECK_THROWS_AS(eval_norm_ball(ok, Vector::Zero(3)), spec_error);
  Vector nan_pt(2);
  nan_pt << 0.0, std::nan("");
  CHECK_THROWS_AS(eval_norm_ball(ok, nan_pt), input_error);
}

TEST_CASE("polytope evaluation is negative nearest-facet distance inside", "[sdf]") {
  SetSpec box = unit_box();
  CHECK(box.evaluate(pt(0, 0)) == -1.0);
  CHECK(box.evaluate(pt(0.5, 0)) == -0.5);
  CHECK(box.evaluate(pt(2, 0)) == 1.0);  // exterior: clip to (1,0)
  CHECK(box.evaluate(pt(1, 1)) == 0.0);  // boundary vertex
}

TEST_CASE("polytope specs validate their inputs", "[sdf]") {
  CHECK_THROWS_AS(PolytopeSpec(Matrix::Zero(0, 2), Vector(0)), spec_error);
  CHECK_THROWS_AS(PolytopeSpec(Matrix::Ones(2, 2), Vector::Ones(3)), spec_error);
  Matrix zero_row(2, 2);
  zero_row << 1, 0, 0, 0;
  CHECK_THROWS_WITH(PolytopeSpec(zero_row, Vector::Ones(2)),
                    Catch::Matchers::ContainsSubstring("facet 1"));
  CHECK_THROWS_AS(interval(2.0, 1.0), spec_error);
}

TEST_CASE("intervals are two-facet polytopes with absolute-value geometry", "[sdf]") {
  SetSpec slab = SetSpec::polytope(interval(-1.0, 1.0));
  Point x(1);
  x << 0.25;
  CHECK(slab.evaluate(x) == -0.75);
  x << 3.0;
  CHECK(slab.evaluate(x) == 2.0);

  SetSpec degenerate = SetSpec::polytope(interval(0.0, 0.0));
  for (double v : {-2.5, -0.1, 0.0, 0.7, 4.0}) {
    x << v;
    CHECK(degenerate.evaluate(x) == std::abs(v));
  }
}

TEST_CASE("composite evaluations combine children by min, max, and negation", "[sdf]") {
  SetSpec b0 = SetSpec::norm_ball(Vector::Zero(2), 1.0);
  SetSpec b3 = SetSpec::norm_ball(pt(3, 0), 1.0);

  CHECK(SetSpec::union_of(b0, b3).evaluate(pt(3, 0)) == -1.0);  // min(2, -1)
  SetSpec b2 = SetSpec::norm_ball(Vector::Zero(2), 2.0);
  CHECK(SetSpec::intersection_of(b2, b0).evaluate(pt(0, 0)) == -1.0);  // max(-2, -1)
  CHECK(SetSpec::complement_of(b0).evaluate(pt(0, 0)) == 1.0);
  CHECK(SetSpec::difference_of(b2, b0).evaluate(pt(0, 0)) == 1.0);    // max(-2, +1)
  CHECK(SetSpec::difference_of(b2, b0).evaluate(pt(1.5, 0)) == -0.5); // max(-0.5, -0.5)

  SECTION("composites require a common dimension") {
    SetSpec line = SetSpec::polytope(interval(0, 1));
    CHECK_THROWS_AS(SetSpec::union_of(b0, line), spec_error);
  }
}

TEST_CASE("level shifts subtract theta and merge additively", "[sdf]") {
  SetSpec ball = SetSpec::norm_ball(Vector::Zero(2), 1.0);
  SetSpec grown = ball.shift_level(0.5);
  CHECK(grown.evaluate(pt(1.5, 0)) == 0.0);
  CHECK_THAT(grown.evaluate(pt(1.2, 0)), WithinAbs(-0.3, 1e-15));

  SECTION("shift by zero is the identity") {
    SetSpec same = ball.shift_level(0.0);
    CHECK(same.kind() == SetKind::norm_ball);
    for (double x = -2; x <= 2; x += 0.25) {
      CHECK(same.evaluate(pt(x, 0.3)) == ball.evaluate(pt(x, 0.3)));
    }
  }

  SECTION("stacked shifts sum") {
    SetSpec twice = ball.shift_level(0.4).shift_level(-0.15);
    CHECK(twice.kind() == SetKind::shifted);
    CHECK(twice.level_shift() == 0.25);
    for (double x = -2; x <= 2; x += 0.3) {
      CHECK_THAT(twice.evaluate(pt(x, -0.2)),
                 WithinAbs(ball.evaluate(pt(x, -0.2)) - 0.25, 1e-15));
    }
    // A net-zero stack collapses back to the inner spec.
    CHECK(ball.shift_level(0.4).shift_level(-0.4).kind() == SetKind::norm_ball);
  }
}

TEST_CASE("containment is evaluation at or below zero", "[sdf]") {
  SetSpec ball = SetSpec::norm_ball(Vector::Zero(2), 1.0);
  CHECK(ball.contains(pt(0.5, 0)));
  CHECK_FALSE(ball.contains(pt(2, 0)));
  CHECK(unit_box().contains(pt(1, 1)));  // boundary counts as inside
}

TEST_CASE("containment agrees with direct membership on random points", "[sdf]") {
  oracles::TestRng rng(21);
  SetSpec ball = SetSpec::norm_ball(pt(0.3, -0.2), 0.8);
  SetSpec box = unit_box();
  SetSpec uni = SetSpec::union_of(ball, box);
  SetSpec inter = SetSpec::intersection_of(ball, box);
  SetSpec comp = SetSpec::complement_of(ball);
  SetSpec diff = SetSpec::difference_of(box, ball);

  for (int i = 0; i < 2000; ++i) {
    Point y = pt(rng.uniform(-2, 2), rng.uniform(-2, 2));
    bool in_ball = (y - pt(0.3, -0.2)).norm() <= 0.8;
    bool in_box = std::abs(y(0)) <= 1.0 && std::abs(y(1)) <= 1.0;
    REQUIRE(ball.contains(y) == in_ball);
    REQUIRE(box.contains(y) == in_box);
    REQUIRE(uni.contains(y) == (in_ball || in_box));
    // Pseudo-SDF boundaries: the min/max combinators keep the sign exact
    // away from measure-zero boundary ties, which random points avoid.
    REQUIRE(inter.contains(y) == (in_ball && in_box));
    REQUIRE(comp.contains(y) == !in_ball);
    REQUIRE(diff.contains(y) == (in_box && !in_ball));
  }
}

TEST_CASE("norm ball evaluation is 1-Lipschitz in its own norm", "[sdf]") {
  oracles::TestRng rng(22);
  for (NormOrder order : {NormOrder::one, NormOrder::two, NormOrder::inf}) {
    NormBallSpec spec(pt(0.1, 0.7), 1.3, order);
    for (int i = 0; i < 500; ++i) {
      Point y1 = pt(rng.uniform(-3, 3), rng.uniform(-3, 3));
      Point y2 = pt(rng.uniform(-3, 3), rng.uniform(-3, 3));
      double lhs = std::abs(eval_norm_ball(spec, y1) - eval_norm_ball(spec, y2));
      REQUIRE(lhs <= norm_of(y1 - y2, order) + 1e-12);
    }
  }
}

TEST_CASE("norm ball boundary points evaluate to zero", "[sdf]") {
  oracles::TestRng rng(23);
  Point c = pt(-0.4, 1.1);
  double r = 2.3;
  for (int i = 0; i < 300; ++i) {
    double t = rng.uniform(0, 2 * M_PI);
    Point u2 = pt(std::cos(t), std::sin(t));                    // ||u||_2 = 1
    double s = rng.uniform(-1, 1);
    Point ui = (i % 2 == 0) ? pt(1.0, s) : pt(s, -1.0);         // ||u||_inf = 1
    Point u1 = pt(s, (i % 2 == 0 ? 1 : -1) * (1 - std::abs(s)));  // ||u||_1 = 1
    CHECK_THAT(eval_norm_ball(NormBallSpec(c, r, NormOrder::two), c + r * u2),
               WithinAbs(0.0, 1e-9));
    CHECK_THAT(eval_norm_ball(NormBallSpec(c, r, NormOrder::inf), c + r * ui),
               WithinAbs(0.0, 1e-9));
    CHECK_THAT(eval_norm_ball(NormBallSpec(c, r, NormOrder::one), c + r * u1),
               WithinAbs(0.0, 1e-9));
  }
}

TEST_CASE("enlargement is monotone in theta", "[sdf]") {
  oracles::TestRng rng(24);
  SetSpec base = SetSpec::difference_of(unit_box(), SetSpec::norm_ball(Vector::Zero(2), 0.5));
  for (int i = 0; i < 500; ++i) {
    double t1 = rng.uniform(-1, 1);
    double t2 = t1 + rng.uniform(0, 1);
    Point y = pt(rng.uniform(-2, 2), rng.uniform(-2, 2));
    if (base.shift_level(t1).contains(y)) {
      REQUIRE(base.shift_level(t2).contains(y));
    }
  }
}

TEST_CASE("interior polytope value matches brute-force boundary distance", "[sdf]") {
  oracles::TestRng rng(25);

  SECTION("boxes") {
    for (int rep = 0; rep < 10; ++rep) {
      auto box = oracles::random_box(rng, 2, 0.5, 2.0);
      SetSpec spec = SetSpec::polytope(box.a, box.b);
      std::vector<Point> corners = {pt(box.lo(0), box.lo(1)), pt(box.hi(0), box.lo(1)),
                                    pt(box.hi(0), box.hi(1)), pt(box.lo(0), box.hi(1))};
      for (int k = 0; k < 5; ++k) {
        Point y = pt(rng.uniform(box.lo(0), box.hi(0)), rng.uniform(box.lo(1), box.hi(1)));
        double inner = spec.evaluate(y);
        REQUIRE(inner <= 0.0);
        CHECK_THAT(-inner, WithinAbs(polygon_boundary_distance(corners, y, 1e-3), 1e-3));
      }
    }
  }

  SECTION("triangles") {
    for (int rep = 0; rep < 10; ++rep) {
      auto tri = oracles::random_simplex(rng, 2, 1.0, 0.15);
      SetSpec spec = SetSpec::polytope(tri.a, tri.b);
      // Recover the triangle's corners from facet intersections: corner k is
      // on every facet except k.
      std::vector<Point> corners;
      for (int k = 0; k < 3; ++k) {
        Matrix m(2, 2);
        Vector rhs(2);
        int r = 0;
        for (int i = 0; i < 3; ++i) {
          if (i == k) continue;
          m.row(r) = tri.a.row(i);
          rhs(r++) = tri.b(i);
        }
        corners.push_back(m.colPivHouseholderQr().solve(rhs));
      }
      Point centroid = (corners[0] + corners[1] + corners[2]) / 3.0;
      for (int k = 0; k < 5; ++k) {
        // Blend toward the centroid to stay strictly inside.
        double w = rng.uniform(0.05, 0.95);
        Point y = centroid + w * (corners[k % 3] - centroid);
        double inner = spec.evaluate(y);
        REQUIRE(inner <= 0.0);
        CHECK_THAT(-inner, WithinAbs(polygon_boundary_distance(corners, y, 1e-3), 1e-3));
      }
    }
  }
}
