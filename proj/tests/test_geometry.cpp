#include <cmath>
#include <random>

#include "doctest.h"
#include "junction/geometry.hpp"

using namespace junction;

TEST_CASE("project_point_to_segment basics") {
  Segment s{{0, 0}, {10, 0}};

  auto mid = project_point_to_segment({5, 3}, s);
  CHECK(mid.t == doctest::Approx(0.5));
  CHECK(mid.point.x == doctest::Approx(5.0));
  CHECK(mid.point.y == doctest::Approx(0.0));

  auto lo = project_point_to_segment({-2, 1}, s);
  CHECK(lo.t == 0.0);
  CHECK(lo.point.x == doctest::Approx(0.0));
  CHECK(lo.point.y == doctest::Approx(0.0));

  auto hi = project_point_to_segment({13, 4}, s);
  CHECK(hi.t == 1.0);
  CHECK(hi.point.x == doctest::Approx(10.0));
}

TEST_CASE("projection is optimal against sampled points") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  for (int trial = 0; trial < 1000; ++trial) {
    Segment s{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
    if ((s.b - s.a).norm() < 1e-9) continue;
    Point2 p{coord(rng), coord(rng)};
    const double best = (p - project_point_to_segment(p, s).point).norm();
    for (int i = 0; i <= 100; ++i) {
      const double t = i / 100.0;
      const Point2 q = s.a + (s.b - s.a) * t;
      CHECK(best <= (p - q).norm() + 1e-12);
    }
  }
}

TEST_CASE("circle_segment_collides") {
  Segment s{{0, 0}, {10, 0}};
  CHECK_FALSE(circle_segment_collides({{5, 3}, 2.0}, s));
  CHECK(circle_segment_collides({{5, 1.5}, 2.0}, s));
  CHECK(circle_segment_collides({{5, 2}, 2.0}, s));  // boundary contact
}

TEST_CASE("footprint_hits_infrastructure") {
  Footprint f{{{10, 0}, 1.5}, {{8, 0}, 1.5}};
  CHECK_FALSE(footprint_hits_infrastructure(f, {}));

  std::vector<Segment> touching{{{10, 1.5}, {10, 5}}};
  CHECK(footprint_hits_infrastructure(f, touching));

  std::vector<Segment> far{{{0, 20}, {30, 20}}, {{0, -20}, {30, -20}}};
  CHECK_FALSE(footprint_hits_infrastructure(f, far));
}

TEST_CASE("footprints_overlap") {
  Footprint f1{{{2, 0}, 1.0}, {{0, 0}, 1.0}};
  CHECK(footprints_overlap(f1, f1));

  Footprint far{{{102, 100}, 1.0}, {{100, 100}, 1.0}};
  CHECK_FALSE(footprints_overlap(f1, far));

  // front circles at exactly r1 + r2
  Footprint touch{{{4, 0}, 1.0}, {{6, 0}, 1.0}};
  CHECK(footprints_overlap(f1, touch));
}

TEST_CASE("footprints_overlap symmetry and radius monotonicity") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_real_distribution<double> rad(0.2, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double r1 = rad(rng), r2 = rad(rng);
    Footprint a{{{coord(rng), coord(rng)}, r1}, {{coord(rng), coord(rng)}, r1}};
    Footprint b{{{coord(rng), coord(rng)}, r2}, {{coord(rng), coord(rng)}, r2}};
    CHECK(footprints_overlap(a, b) == footprints_overlap(b, a));
    if (footprints_overlap(a, b)) {
      Footprint a2 = a, b2 = b;
      a2.front.radius = a2.rear.radius = r1 + 0.5;
      b2.front.radius = b2.rear.radius = r2 + 0.5;
      CHECK(footprints_overlap(a2, b2));
    }
  }
}

TEST_CASE("analytic_closing_time examples") {
  auto head_on = analytic_closing_time({10, 0}, {-1, 0}, 2.0, 0.0);
  REQUIRE(head_on.has_value());
  CHECK(*head_on == doctest::Approx(8.0));

  CHECK_FALSE(analytic_closing_time({10, 0}, {0, 0}, 2.0, 0.0).has_value());
  CHECK_FALSE(analytic_closing_time({0, 5}, {1, 0}, 2.0, 0.0).has_value());

  // already overlapping
  auto inside = analytic_closing_time({0.5, 0}, {1, 0}, 2.0, 0.0);
  REQUIRE(inside.has_value());
  CHECK(*inside == 0.0);
}

TEST_CASE("analytic_closing_time agrees with 1 ms stepping") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> pos(-30.0, 30.0);
  std::uniform_real_distribution<double> vel(-10.0, 10.0);
  std::uniform_real_distribution<double> gain(0.05, 0.5);
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    Point2 p{pos(rng), pos(rng)};
    // half the samples head roughly toward the origin so contact is common
    Point2 v = (i % 2 == 0) ? Point2{vel(rng), vel(rng)}
                            : p * -gain(rng) + Point2{vel(rng) * 0.2, vel(rng) * 0.2};
    const double r_sum = 2.0;
    auto tau = analytic_closing_time(p, v, r_sum, 0.0);
    if (!tau.has_value() || *tau > 20.0) continue;
    ++checked;
    // step the relative motion at 1 ms until first contact
    double t = 0.0;
    bool found = false;
    while (t <= 25.0) {
      if ((p + v * t).norm() <= r_sum) {
        found = true;
        break;
      }
      t += 1e-3;
    }
    REQUIRE(found);
    CHECK(std::abs(t - *tau) <= 2e-3);
  }
  CHECK(checked > 50);
}

TEST_CASE("point_in_convex_polygon") {
  std::vector<Point2> box{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  CHECK(point_in_convex_polygon({2, 2}, box));
  CHECK(point_in_convex_polygon({0, 2}, box));  // boundary counts
  CHECK_FALSE(point_in_convex_polygon({5, 2}, box));
  CHECK_FALSE(point_in_convex_polygon({-0.01, 2}, box));
}

TEST_CASE("polyline_circle respects the chord error bound") {
  const Point2 c{3, -2};
  const double r = 6.0;
  auto segs = polyline_circle(c, r, 0.25);
  REQUIRE(segs.size() >= 3);
  for (const auto& s : segs) {
    // endpoints on the circle
    CHECK((s.a - c).norm() == doctest::Approx(r).epsilon(1e-9));
    // midpoint sag is the chord error
    Point2 mid = (s.a + s.b) * 0.5;
    CHECK(r - (mid - c).norm() <= 0.25 + 1e-9);
  }
  // closed: last endpoint equals first start
  CHECK((segs.back().b - segs.front().a).norm() < 1e-9);
}

TEST_CASE("wrap_to_pi lands in (-pi, pi]") {
  CHECK(wrap_to_pi(M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_to_pi(-M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_to_pi(3 * M_PI / 2) == doctest::Approx(-M_PI / 2));
  CHECK(wrap_to_pi(0.3 + 8 * M_PI) == doctest::Approx(0.3));
}
