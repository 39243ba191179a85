#include <cmath>

#include "doctest.h"
#include "junction/motion_primitives.hpp"

using namespace junction;

namespace {

// Closed-form endpoint of a unit-speed constant-steering arc of length s.
Pose arc_endpoint(double delta, double s, double L) {
  if (std::abs(delta) < 1e-15) return {s, 0.0, 0.0};
  const double R = L / std::tan(delta);
  return {R * std::sin(s / R), R * (1.0 - std::cos(s / R)), s / R};
}

}  // namespace

TEST_CASE("generate_set: steering values uniform and symmetric") {
  auto set = generate_set(5, 30.0 * M_PI / 180.0, 1.0, 0.25, 2.7);
  REQUIRE(set.count() == 5);
  const double step = 15.0 * M_PI / 180.0;
  for (int i = 0; i < 5; ++i) {
    CHECK(set.primitives[i].delta ==
          doctest::Approx(-30.0 * M_PI / 180.0 + i * step));
  }
  CHECK(set.primitives[2].delta == doctest::Approx(0.0));
}

TEST_CASE("generate_set rejects bad arguments") {
  CHECK_THROWS(generate_set(4, 0.5, 1.0, 0.25, 2.7));   // even n
  CHECK_THROWS(generate_set(1, 0.5, 1.0, 0.25, 2.7));   // too few
  CHECK_THROWS(generate_set(5, M_PI / 2, 1.0, 0.25, 2.7));
  CHECK_THROWS(generate_set(5, 0.5, 1.0, 2.0, 2.7));    // spacing > length
}

TEST_CASE("straight primitive ends at (arc_length, 0, 0)") {
  auto set = generate_set(5, 0.5, 1.0, 0.25, 2.7);
  const auto& straight = set.primitives[2];
  CHECK(straight.end_pose.x == doctest::Approx(1.0));
  CHECK(straight.end_pose.y == doctest::Approx(0.0));
  CHECK(straight.end_pose.theta == doctest::Approx(0.0));
  CHECK(straight.local_poses.front().x == 0.0);
  CHECK(straight.local_poses.front().theta == 0.0);
}

TEST_CASE("endpoints match the closed-form arc") {
  const double L = 2.7;
  auto set = generate_set(9, 30.0 * M_PI / 180.0, 1.0, 0.25, L);
  for (const auto& m : set.primitives) {
    Pose exact = arc_endpoint(m.delta, m.arc_length, L);
    CHECK(std::abs(m.end_pose.x - exact.x) <= 1e-6);
    CHECK(std::abs(m.end_pose.y - exact.y) <= 1e-6);
    CHECK(std::abs(m.end_pose.theta - exact.theta) <= 1e-8);
  }
  // spot-check the documented 15 degree case
  const auto& m15 = set.primitives[6];  // -30+6*7.5 = 15 deg
  CHECK(m15.delta == doctest::Approx(15.0 * M_PI / 180.0));
  const double R = L / std::tan(m15.delta);
  CHECK(R == doctest::Approx(10.076).epsilon(1e-3));
  CHECK(m15.end_pose.x == doctest::Approx(R * std::sin(1.0 / R)).epsilon(1e-9));
  CHECK(m15.end_pose.y ==
        doctest::Approx(R * (1.0 - std::cos(1.0 / R))).epsilon(1e-9));
}

TEST_CASE("mirror symmetry of +/- delta") {
  auto set = generate_set(9, 30.0 * M_PI / 180.0, 1.0, 0.25, 2.7);
  const int n = set.count();
  for (int i = 0; i < n / 2; ++i) {
    const auto& neg = set.primitives[i];
    const auto& pos = set.primitives[n - 1 - i];
    REQUIRE(neg.local_poses.size() == pos.local_poses.size());
    for (size_t k = 0; k < neg.local_poses.size(); ++k) {
      CHECK(std::abs(neg.local_poses[k].x - pos.local_poses[k].x) <= 1e-9);
      CHECK(std::abs(neg.local_poses[k].y + pos.local_poses[k].y) <= 1e-9);
      CHECK(std::abs(neg.local_poses[k].theta + pos.local_poses[k].theta) <= 1e-9);
    }
  }
}

TEST_CASE("pose spacing and cumulative chord length") {
  auto set = generate_set(9, 30.0 * M_PI / 180.0, 1.0, 0.25, 2.7);
  for (const auto& m : set.primitives) {
    double chord = 0.0;
    for (size_t k = 1; k < m.local_poses.size(); ++k) {
      const double dx = m.local_poses[k].x - m.local_poses[k - 1].x;
      const double dy = m.local_poses[k].y - m.local_poses[k - 1].y;
      const double step = std::hypot(dx, dy);
      CHECK(step <= 0.25 + 1e-9);
      chord += step;
    }
    CHECK(std::abs(chord - m.arc_length) / m.arc_length <= 1e-3);
  }
}

TEST_CASE("transform_to_global") {
  auto set = generate_set(5, 0.5, 1.0, 0.25, 2.7);
  const auto& straight = set.primitives[2];

  auto ident = transform_to_global(straight, {0, 0, 0});
  CHECK(ident.end_pose.x == doctest::Approx(1.0));
  CHECK(ident.end_pose.y == doctest::Approx(0.0));

  auto up = transform_to_global(straight, {0, 0, M_PI / 2});
  CHECK(up.end_pose.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(up.end_pose.y == doctest::Approx(1.0));
  CHECK(up.end_pose.theta == doctest::Approx(M_PI / 2));
}

TEST_CASE("compose acts like the SE(2) group action") {
  const Pose a{1.0, 2.0, 0.7};
  const Pose b{-0.5, 0.3, -1.1};
  const Pose local{0.8, 0.1, 0.2};
  // transforming by b then relocating the result by a equals transforming by
  // the composed pose a*b
  Pose ab = compose(a, b);
  Pose direct = compose(ab, local);
  Pose nested = compose(a, compose(b, local));
  CHECK(direct.x == doctest::Approx(nested.x));
  CHECK(direct.y == doctest::Approx(nested.y));
  CHECK(std::abs(wrap_to_pi(direct.theta - nested.theta)) <= 1e-12);
}
