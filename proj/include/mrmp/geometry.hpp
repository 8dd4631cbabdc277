#pragma once

// Planar primitives for unit-disk motion planning. The robot radius is the
// unit of length throughout the library.

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace mrmp {

/// Global coincidence/degeneracy tolerance.
inline constexpr double kTau = 1e-9;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point {
  double x = 0.0;
  double y = 0.0;

  constexpr Point operator+(Point o) const { return {x + o.x, y + o.y}; }
  constexpr Point operator-(Point o) const { return {x - o.x, y - o.y}; }
  constexpr Point operator-() const { return {-x, -y}; }
  constexpr Point operator*(double s) const { return {x * s, y * s}; }
  constexpr Point operator/(double s) const { return {x / s, y / s}; }
  Point& operator+=(Point o) { x += o.x; y += o.y; return *this; }
  Point& operator-=(Point o) { x -= o.x; y -= o.y; return *this; }
  constexpr bool operator==(const Point&) const = default;
};

constexpr Point operator*(double s, Point p) { return p * s; }

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
constexpr double norm2(Point a) { return dot(a, a); }
inline double distance(Point a, Point b) { return norm(a - b); }
constexpr Point perp(Point a) { return {-a.y, a.x}; }  // ccw rotation by 90 degrees
inline Point unit(Point a) { return a / norm(a); }
inline Point polar(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }
inline double angle_of(Point a) { return std::atan2(a.y, a.x); }

/// Maps any angle to [0, 2π).
double normalize_angle(double a);

enum class Orientation { CCW, CW };

constexpr double sign_of(Orientation o) { return o == Orientation::CCW ? 1.0 : -1.0; }
constexpr Orientation flipped(Orientation o) {
  return o == Orientation::CCW ? Orientation::CW : Orientation::CCW;
}

struct Segment {
  Point a;
  Point b;

  double length() const { return distance(a, b); }
  Point direction() const { return unit(b - a); }
  /// Point at arc length s from a.
  Point point_at(double s) const;
  bool operator==(const Segment&) const = default;
};

struct Circle {
  Point center;
  double radius = 1.0;

  bool operator==(const Circle&) const = default;
};

/// Circular arc starting at start_angle and sweeping `sweep` radians in the
/// given orientation. The end angle is derived.
struct Arc {
  Point center;
  double radius = 1.0;
  double start_angle = 0.0;  // [0, 2π)
  double sweep = 0.0;        // (0, 2π]
  Orientation orientation = Orientation::CCW;

  double end_angle() const { return normalize_angle(start_angle + sign_of(orientation) * sweep); }
  double length() const { return radius * sweep; }
  double angle_at(double s) const { return start_angle + sign_of(orientation) * s / radius; }
  Point point_at(double s) const { return center + polar(radius, angle_at(s)); }
  /// Unit tangent in the direction of travel at arc length s.
  Point tangent_at(double s) const;
  Point start_point() const { return point_at(0.0); }
  Point end_point() const { return point_at(length()); }
  /// Offset (radians along the travel direction) of angle theta from the start, in [0, 2π).
  double offset_of(double theta) const;
  /// True if theta lies within the arc, allowing `slack` radians on either end.
  bool contains_angle(double theta, double slack = kTau) const;
  bool operator==(const Arc&) const = default;
};

using Edge = std::variant<Segment, Arc>;

double edge_length(const Edge& e);
Point edge_point_at(const Edge& e, double s);
Point edge_tangent_at(const Edge& e, double s);
Point edge_start(const Edge& e);
Point edge_end(const Edge& e);
/// Reverses the direction of travel.
Edge reversed(const Edge& e);
/// Sub-edge between arc lengths s0 <= s1.
Edge sub_edge(const Edge& e, double s0, double s1);

/// max{0, 2 - |p - q|}: penetration depth of two unit disks.
double overlap(Point p, Point q);

struct ClosestPoint {
  double distance = 0.0;
  Point closest;
  bool at_endpoint = false;
  double param = 0.0;  // arc length from the edge start
};

ClosestPoint dist_point_segment(Point p, const Segment& s);
ClosestPoint dist_point_arc(Point p, const Arc& a);
/// Global minimum distance from p to the edge; ties go to the smaller parameter.
ClosestPoint dist_point_edge(Point p, const Edge& e);

/// A common tangent of two circles; a == b when the circles touch.
struct CommonTangent {
  Point a;        // touch point on the first circle
  Point b;        // touch point on the second circle
  Point normal;   // unit normal of the tangent line
};

std::vector<CommonTangent> common_tangents(const Circle& c1, const Circle& c2);
/// Touch-point to touch-point tangent segments (degenerate when circles touch).
std::vector<Segment> tangent_segments(const Circle& c1, const Circle& c2);
/// Touch points of the tangents from an external point p to circle c (0, 1 or 2 points).
std::vector<Point> point_circle_tangents(Point p, const Circle& c);

struct LinearMotionApproach {
  double dmin = 0.0;
  double t = 0.0;
};

/// Minimum distance between a(t) = a0 + t(a1-a0) and b(t) = b0 + t(b1-b0) over t in [0,1].
LinearMotionApproach min_dist_linear_motions(Point a0, Point a1, Point b0, Point b1);

double segment_segment_distance(const Segment& s, const Segment& t);
bool segments_intersect(const Segment& s, const Segment& t);
double arc_segment_distance(const Arc& a, const Segment& s);

/// Parameters t (along p + t*dir, dir unit) where the line meets the circle.
std::vector<double> line_circle_intersections(Point p, Point dir, const Circle& c);
/// Intersection points of two circles (0, 1 or 2).
std::vector<Point> circle_circle_intersections(const Circle& c1, const Circle& c2);

using Polygon = std::vector<Point>;

double signed_area(std::span<const Point> poly);
/// Even-odd containment; boundary points may go either way.
bool point_in_polygon(Point p, std::span<const Point> poly);
bool polygon_is_simple(std::span<const Point> poly);

}  // namespace mrmp
