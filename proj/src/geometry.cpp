#include "junction/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace junction {

double wrap_to_pi(double angle) {
  double a = std::remainder(angle, 2.0 * M_PI);
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

SegmentProjection project_point_to_segment(const Point2& p, const Segment& s) {
  const Point2 d = s.b - s.a;
  const double len2 = d.squared_norm();
  double t = (p - s.a).dot(d) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return {t, s.a + d * t};
}

double point_segment_distance(const Point2& p, const Segment& s) {
  return (p - project_point_to_segment(p, s).point).norm();
}

bool circle_segment_collides(const Circle& c, const Segment& s) {
  return point_segment_distance(c.center, s) <= c.radius;
}

bool footprint_hits_infrastructure(const Footprint& f,
                                   std::span<const Segment> segments) {
  for (const Segment& s : segments) {
    if (circle_segment_collides(f.front, s) ||
        circle_segment_collides(f.rear, s)) {
      return true;
    }
  }
  return false;
}

bool footprints_overlap(const Footprint& f1, const Footprint& f2) {
  const Circle* c1[2] = {&f1.front, &f1.rear};
  const Circle* c2[2] = {&f2.front, &f2.rear};
  for (const Circle* a : c1) {
    for (const Circle* b : c2) {
      const double d = (a->center - b->center).norm();
      if (d - a->radius - b->radius <= 0.0) return true;
    }
  }
  return false;
}

std::optional<double> analytic_closing_time(const Point2& rel_pos0,
                                            const Point2& rel_vel,
                                            double r_sum, double margin) {
  const double reach = r_sum + margin;
  // |p + tau v|^2 = reach^2  =>  (v.v) tau^2 + 2 (p.v) tau + (p.p - reach^2) = 0
  const double a = rel_vel.squared_norm();
  const double b = 2.0 * rel_pos0.dot(rel_vel);
  const double c = rel_pos0.squared_norm() - reach * reach;

  if (c <= 0.0) return 0.0;  // already within reach

  if (a == 0.0) return std::nullopt;  // no relative motion

  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return std::nullopt;  // closest approach stays outside

  const double sq = std::sqrt(disc);
  // c > 0 here, so both roots share the sign of -b; the smaller one is first
  // contact.
  const double tau = (-b - sq) / (2.0 * a);
  if (tau < 0.0) return std::nullopt;  // receding
  return tau;
}

bool point_in_convex_polygon(const Point2& p, std::span<const Point2> poly) {
  if (poly.size() < 3) return false;
  int sign = 0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % poly.size()];
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (cross > 0.0) {
      if (sign < 0) return false;
      sign = 1;
    } else if (cross < 0.0) {
      if (sign > 0) return false;
      sign = -1;
    }
  }
  return true;
}

std::vector<Segment> polyline_arc(const Point2& center, double radius,
                                  double phi0, double phi1,
                                  double max_chord_error) {
  // chord error for step dphi is r*(1 - cos(dphi/2))
  const double e = std::min(max_chord_error, radius);
  const double max_step = 2.0 * std::acos(1.0 - e / radius);
  const double span = phi1 - phi0;
  const int n = std::max(1, static_cast<int>(std::ceil(std::abs(span) / max_step)));
  std::vector<Segment> out;
  out.reserve(n);
  Point2 prev{center.x + radius * std::cos(phi0),
              center.y + radius * std::sin(phi0)};
  for (int i = 1; i <= n; ++i) {
    const double phi = phi0 + span * static_cast<double>(i) / n;
    Point2 cur{center.x + radius * std::cos(phi),
               center.y + radius * std::sin(phi)};
    out.push_back({prev, cur});
    prev = cur;
  }
  return out;
}

std::vector<Segment> polyline_circle(const Point2& center, double radius,
                                     double max_chord_error) {
  return polyline_arc(center, radius, 0.0, 2.0 * M_PI, max_chord_error);
}

}  // namespace junction
