#include "mrmp/geometry.hpp"

#include <algorithm>
#include <cassert>

namespace mrmp {

double normalize_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

Point Segment::point_at(double s) const {
  const double len = length();
  if (len <= 0.0) return a;
  return a + (b - a) * (s / len);
}

Point Arc::tangent_at(double s) const {
  const double theta = angle_at(s);
  const Point radial{std::cos(theta), std::sin(theta)};
  return orientation == Orientation::CCW ? perp(radial) : -perp(radial);
}

double Arc::offset_of(double theta) const {
  return normalize_angle(sign_of(orientation) * (theta - start_angle));
}

bool Arc::contains_angle(double theta, double slack) const {
  const double off = offset_of(theta);
  return off <= sweep + slack || off >= kTwoPi - slack;
}

double edge_length(const Edge& e) {
  return std::visit([](const auto& x) { return x.length(); }, e);
}

Point edge_point_at(const Edge& e, double s) {
  return std::visit([s](const auto& x) { return x.point_at(s); }, e);
}

Point edge_tangent_at(const Edge& e, double s) {
  if (const auto* seg = std::get_if<Segment>(&e)) return seg->direction();
  return std::get<Arc>(e).tangent_at(s);
}

Point edge_start(const Edge& e) {
  if (const auto* seg = std::get_if<Segment>(&e)) return seg->a;
  return std::get<Arc>(e).start_point();
}

Point edge_end(const Edge& e) {
  if (const auto* seg = std::get_if<Segment>(&e)) return seg->b;
  return std::get<Arc>(e).end_point();
}

Edge reversed(const Edge& e) {
  if (const auto* seg = std::get_if<Segment>(&e)) return Segment{seg->b, seg->a};
  const Arc& a = std::get<Arc>(e);
  return Arc{a.center, a.radius, a.end_angle(), a.sweep, flipped(a.orientation)};
}

Edge sub_edge(const Edge& e, double s0, double s1) {
  if (const auto* seg = std::get_if<Segment>(&e)) {
    return Segment{seg->point_at(s0), seg->point_at(s1)};
  }
  const Arc& a = std::get<Arc>(e);
  return Arc{a.center, a.radius, normalize_angle(a.angle_at(s0)), (s1 - s0) / a.radius,
             a.orientation};
}

double overlap(Point p, Point q) { return std::max(0.0, 2.0 - distance(p, q)); }

ClosestPoint dist_point_segment(Point p, const Segment& s) {
  const Point d = s.b - s.a;
  const double len2 = norm2(d);
  if (len2 <= 0.0) return {distance(p, s.a), s.a, true, 0.0};
  const double t = dot(p - s.a, d) / len2;
  if (t <= 0.0) return {distance(p, s.a), s.a, true, 0.0};
  const double len = std::sqrt(len2);
  if (t >= 1.0) return {distance(p, s.b), s.b, true, len};
  const Point foot = s.a + d * t;
  return {distance(p, foot), foot, false, t * len};
}

ClosestPoint dist_point_arc(Point p, const Arc& a) {
  const Point rel = p - a.center;
  const double r_p = norm(rel);
  const Point start = a.start_point();
  const Point end = a.end_point();
  if (r_p > kTau) {
    const double phi = angle_of(rel);
    const double off = a.offset_of(phi);
    if (off <= a.sweep) {
      const Point c = a.center + rel * (a.radius / r_p);
      const double s = off * a.radius;
      const bool endpoint = s <= kTau || s >= a.length() - kTau;
      return {std::abs(r_p - a.radius), c, endpoint, s};
    }
  }
  const double ds = distance(p, start);
  const double de = distance(p, end);
  if (de < ds) return {de, end, true, a.length()};
  return {ds, start, true, 0.0};
}

ClosestPoint dist_point_edge(Point p, const Edge& e) {
  if (const auto* seg = std::get_if<Segment>(&e)) return dist_point_segment(p, *seg);
  return dist_point_arc(p, std::get<Arc>(e));
}

std::vector<CommonTangent> common_tangents(const Circle& c1, const Circle& c2) {
  std::vector<CommonTangent> out;
  const Point diff = c2.center - c1.center;
  const double d = norm(diff);
  if (d <= kTau) return out;
  const Point u = diff / d;
  const Point v = perp(u);
  // Outer tangents keep both circles on the same side of the line, inner on opposite sides.
  for (const double s2 : {1.0, -1.0}) {
    const double k = c1.radius - s2 * c2.radius;
    const double ratio = k / d;
    if (std::abs(ratio) > 1.0 + kTau) continue;
    const double h2 = 1.0 - ratio * ratio;
    if (h2 <= 4.0 * kTau) {
      const Point n = u * (ratio >= 0.0 ? 1.0 : -1.0);
      out.push_back({c1.center + n * c1.radius, c2.center + n * (s2 * c2.radius), n});
      continue;
    }
    const double h = std::sqrt(h2);
    for (const double sh : {1.0, -1.0}) {
      const Point n = u * ratio + v * (sh * h);
      out.push_back({c1.center + n * c1.radius, c2.center + n * (s2 * c2.radius), n});
    }
  }
  return out;
}

std::vector<Segment> tangent_segments(const Circle& c1, const Circle& c2) {
  std::vector<Segment> out;
  for (const auto& t : common_tangents(c1, c2)) out.push_back({t.a, t.b});
  return out;
}

std::vector<Point> point_circle_tangents(Point p, const Circle& c) {
  const Point rel = p - c.center;
  const double r_p = norm(rel);
  if (r_p < c.radius - kTau) return {};
  if (r_p <= c.radius + kTau) return {p};
  const double alpha = std::acos(std::clamp(c.radius / r_p, -1.0, 1.0));
  const double base = angle_of(rel);
  return {c.center + polar(c.radius, base + alpha), c.center + polar(c.radius, base - alpha)};
}

LinearMotionApproach min_dist_linear_motions(Point a0, Point a1, Point b0, Point b1) {
  const Point r0 = b0 - a0;
  const Point v = (b1 - b0) - (a1 - a0);
  const double vv = norm2(v);
  if (vv <= 1e-30) return {norm(r0), 0.0};
  const double t = std::clamp(-dot(r0, v) / vv, 0.0, 1.0);
  return {norm(r0 + v * t), t};
}

namespace {

int orient_sign(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  const double scale = std::max({norm2(b - a), norm2(c - a), 1e-300});
  if (std::abs(v) <= 1e-15 * scale) return 0;
  return v > 0 ? 1 : -1;
}

bool on_segment(Point a, Point b, Point p) {
  return std::min(a.x, b.x) - kTau <= p.x && p.x <= std::max(a.x, b.x) + kTau &&
         std::min(a.y, b.y) - kTau <= p.y && p.y <= std::max(a.y, b.y) + kTau;
}

}  // namespace

bool segments_intersect(const Segment& s, const Segment& t) {
  const int o1 = orient_sign(s.a, s.b, t.a);
  const int o2 = orient_sign(s.a, s.b, t.b);
  const int o3 = orient_sign(t.a, t.b, s.a);
  const int o4 = orient_sign(t.a, t.b, s.b);
  if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0) {
    if (o1 != 0 || o2 != 0) return true;
  }
  if (o1 == 0 && on_segment(s.a, s.b, t.a)) return true;
  if (o2 == 0 && on_segment(s.a, s.b, t.b)) return true;
  if (o3 == 0 && on_segment(t.a, t.b, s.a)) return true;
  if (o4 == 0 && on_segment(t.a, t.b, s.b)) return true;
  return false;
}

double segment_segment_distance(const Segment& s, const Segment& t) {
  if (segments_intersect(s, t)) return 0.0;
  return std::min({dist_point_segment(s.a, t).distance, dist_point_segment(s.b, t).distance,
                   dist_point_segment(t.a, s).distance, dist_point_segment(t.b, s).distance});
}

std::vector<double> line_circle_intersections(Point p, Point dir, const Circle& c) {
  const Point rel = p - c.center;
  const double b = dot(dir, rel);
  const double cc = norm2(rel) - c.radius * c.radius;
  const double disc = b * b - cc;
  if (disc < -2.0 * c.radius * kTau) return {};
  if (disc <= 2.0 * c.radius * kTau) return {-b};
  const double h = std::sqrt(disc);
  return {-b - h, -b + h};
}

std::vector<Point> circle_circle_intersections(const Circle& c1, const Circle& c2) {
  const Point diff = c2.center - c1.center;
  const double d = norm(diff);
  if (d <= kTau) return {};
  if (d > c1.radius + c2.radius + kTau) return {};
  if (d < std::abs(c1.radius - c2.radius) - kTau) return {};
  const double a = (d * d + c1.radius * c1.radius - c2.radius * c2.radius) / (2.0 * d);
  const double h2 = c1.radius * c1.radius - a * a;
  const Point u = diff / d;
  const Point base = c1.center + u * a;
  if (h2 <= 2.0 * c1.radius * kTau) return {base};
  const double h = std::sqrt(h2);
  return {base + perp(u) * h, base - perp(u) * h};
}

double arc_segment_distance(const Arc& a, const Segment& s) {
  const double len = s.length();
  const Point dir = len > 0.0 ? (s.b - s.a) / len : Point{1.0, 0.0};
  if (len > 0.0) {
    for (const double t : line_circle_intersections(s.a, dir, Circle{a.center, a.radius})) {
      if (t < -kTau || t > len + kTau) continue;
      const Point q = s.a + dir * t;
      if (a.contains_angle(angle_of(q - a.center), 0.0)) return 0.0;
    }
  }
  double best = std::min({dist_point_arc(s.a, a).distance, dist_point_arc(s.b, a).distance,
                          dist_point_segment(a.start_point(), s).distance,
                          dist_point_segment(a.end_point(), s).distance});
  if (len > 0.0) {
    const Point n = perp(dir);
    for (const double sg : {1.0, -1.0}) {
      const Point q = a.center + n * (sg * a.radius);
      if (!a.contains_angle(angle_of(q - a.center), 0.0)) continue;
      const double t = dot(q - s.a, dir);
      if (t < 0.0 || t > len) continue;
      best = std::min(best, std::abs(dot(q - s.a, n)));
    }
  }
  return best;
}

double signed_area(std::span<const Point> poly) {
  double area = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) area += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * area;
}

bool point_in_polygon(Point p, std::span<const Point> poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = poly[i];
    const Point b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

bool polygon_is_simple(std::span<const Point> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (distance(poly[i], poly[(i + 1) % n]) <= kTau) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Segment e{poly[i], poly[(i + 1) % n]};
    for (std::size_t j = i + 1; j < n; ++j) {
      const Segment f{poly[j], poly[(j + 1) % n]};
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // Adjacent edges may only share their common vertex.
        const Point shared = (j == i + 1) ? e.b : e.a;
        const Point other_e = (j == i + 1) ? e.a : e.b;
        const Point other_f = (j == i + 1) ? f.b : f.a;
        const Point de = other_e - shared;
        const Point df = other_f - shared;
        if (std::abs(cross(de, df)) <= 1e-12 * norm(de) * norm(df) && dot(de, df) > 0.0) {
          return false;
        }
        continue;
      }
      if (segments_intersect(e, f)) return false;
    }
  }
  return true;
}

}  // namespace mrmp
