#ifndef JUNCTION_GEOMETRY_HPP
#define JUNCTION_GEOMETRY_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace junction {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Wraps an angle to (-pi, pi].
double wrap_to_pi(double angle);

struct Point2 {
  double x{0.0};
  double y{0.0};

  Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
  Point2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Point2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  double squared_norm() const { return x * x + y * y; }
};

struct Segment {
  Point2 a;
  Point2 b;
};

struct Circle {
  Point2 center;
  double radius{0.0};
};

/// Dual-circle approximation of a vehicle body. Both circles share one
/// radius; centers lie on the longitudinal axis.
struct Footprint {
  Circle front;
  Circle rear;
};

struct SegmentProjection {
  double t{0.0};   // normalized projection scalar, clamped to [0, 1]
  Point2 point;    // closest point of the segment
};

/// Projects p onto segment s: t = clamp(dot(p-a, b-a)/|b-a|^2, 0, 1),
/// closest point = a + t*(b-a).
SegmentProjection project_point_to_segment(const Point2& p, const Segment& s);

/// Distance from a point to the closest point of a segment.
double point_segment_distance(const Point2& p, const Segment& s);

/// Boundary contact counts as collision (distance <= radius).
bool circle_segment_collides(const Circle& c, const Segment& s);

bool footprint_hits_infrastructure(const Footprint& f,
                                   std::span<const Segment> segments);

/// True iff any of the four circle pairs are at distance <= r1 + r2.
bool footprints_overlap(const Footprint& f1, const Footprint& f2);

/// Smallest nonnegative time tau at which |rel_pos0 + tau*rel_vel| equals
/// r_sum + margin under constant relative velocity, or nullopt if the two
/// bodies never come that close. Already-overlapping inputs yield tau = 0.
std::optional<double> analytic_closing_time(const Point2& rel_pos0,
                                            const Point2& rel_vel,
                                            double r_sum, double margin);

/// Containment test for a convex polygon (boundary counts as inside).
/// Vertices must be given in consistent winding order.
bool point_in_convex_polygon(const Point2& p, std::span<const Point2> poly);

/// Approximates a full circle by a closed polyline whose chord error does
/// not exceed max_chord_error. Used when loading curved infrastructure.
std::vector<Segment> polyline_circle(const Point2& center, double radius,
                                     double max_chord_error);

/// Arc of a circle from anglephi0 to phi1 (radians, counterclockwise when
/// phi1 > phi0), polylined at the same chord-error bound.
std::vector<Segment> polyline_arc(const Point2& center, double radius,
                                  double phi0, double phi1,
                                  double max_chord_error);

}  // namespace junction

#endif  // JUNCTION_GEOMETRY_HPP
