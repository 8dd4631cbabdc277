#include "mrmp/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mrmp/errors.hpp"
#include "mrmp/free_space.hpp"

namespace mrmp {

namespace {

const double kSqrt3 = std::sqrt(3.0);

// Polygon circumscribing the arc of `c` from angle a0 to a1 (either direction).
// Tangent lines are taken at the given angles; returns the intersections of
// consecutive tangents, so the chain stays outside the circle.
std::vector<Point> circumscribed_chain(const Circle& c, const std::vector<double>& angles) {
  std::vector<Point> out;
  for (std::size_t k = 0; k + 1 < angles.size(); ++k) {
    const double a = angles[k];
    const double b = angles[k + 1];
    const double half = 0.5 * (b - a);
    out.push_back(c.center + polar(c.radius / std::cos(half), a + half));
  }
  return out;
}

// Intersection of the tangent to c at angle a with the horizontal line y = y0.
Point tangent_hits_horizontal(const Circle& c, double a, double y0) {
  const Point p = c.center + polar(c.radius, a);
  const Point d = perp(polar(1.0, a));
  const double t = (y0 - p.y) / d.y;
  return p + d * t;
}

// Intersection of the tangent to c at angle a with the vertical line x = x0.
Point tangent_hits_vertical(const Circle& c, double a, double x0) {
  const Point p = c.center + polar(c.radius, a);
  const Point d = perp(polar(1.0, a));
  const double t = (x0 - p.x) / d.x;
  return p + d * t;
}

}  // namespace

Instance hourglass(double eps_fig, double passage_width) {
  const double r = 4.0 - eps_fig;
  const double hw = 0.5 * passage_width;
  const Point v1{-hw, 0.0};
  const Point v2{hw, 0.0};
  // The left part of the room lies on the circle around v2 and the right part on
  // the circle around v1, so each start is 1.5 - eps_fig from the far arc.
  const Circle left{v2, r};
  const Point s1{-hw, std::sqrt(6.25 - passage_width * passage_width)};
  const Point s2{hw, s1.y};
  const double top = std::acos(hw / r);  // apex (0, .) seen from v2

  // Tangent angles for the left arc, from the floor up to the apex. The one
  // closest to the direction of s1 is moved onto it so the nearest wall point is exact.
  const double a_bottom = kPi;
  const double a_apex = kPi - top;
  const double a_s = angle_of(s1 - v2);
  const int pieces = 24;
  std::vector<double> angles;
  for (int k = 0; k <= pieces; ++k) angles.push_back(a_bottom + (a_apex - a_bottom) * k / pieces);
  *std::min_element(angles.begin() + 1, angles.end() - 1,
                    [&](double a, double b) { return std::abs(a - a_s) < std::abs(b - a_s); }) = a_s;

  std::vector<Point> left_chain;  // from the floor up to the apex
  left_chain.push_back(tangent_hits_horizontal(left, angles.front(), 0.0));
  for (const Point& p : circumscribed_chain(left, angles)) left_chain.push_back(p);
  left_chain.push_back(tangent_hits_vertical(left, angles.back(), 0.0));

  Polygon outer{{-4.0, -5.0}, {4.0, -5.0}, {4.0, -1.0}, v2 + Point{0.0, -1.0}, v2};
  // Right half mirrors the left half.
  for (auto it = left_chain.begin(); it != left_chain.end(); ++it) outer.push_back({-it->x, it->y});
  for (auto it = left_chain.rbegin() + 1; it != left_chain.rend(); ++it) outer.push_back(*it);
  outer.push_back(v1);
  outer.push_back(v1 + Point{0.0, -1.0});
  outer.push_back({-4.0, -1.0});

  Instance inst;
  inst.workspace.outer = std::move(outer);
  inst.starts = {s1, s2};
  inst.targets = {{-2.0, -3.0}, {2.0, -3.0}};
  inst.labeled = false;
  inst.workspace = normalize(inst.workspace);
  return inst;
}

Instance strip(double eps_fig) {
  const double width = 4.0 - eps_fig;
  const double y = 2.0 - eps_fig;
  const double gap = 2.5;
  Instance inst;
  inst.workspace.outer = {{-3.0, 0.0}, {3.0 * gap + 3.0, 0.0}, {3.0 * gap + 3.0, width}, {-3.0, width}};
  // Order along the strip: t1, s2, s1, t2.
  inst.targets = {{0.0, y}, {3.0 * gap, y}};
  inst.starts = {{2.0 * gap, y}, {gap, y}};
  inst.labeled = true;
  return inst;
}

Instance monotone_lb(double delta, double t_offset) {
  const Point v1{0.0, 1.0};
  // Orange points (±1, 1 - √3) sit at angle 30° from the downward vertical.
  const double phi = kPi / 6.0 - delta;
  const Point v2 = v1 + Point{2.0 * std::sin(phi), -2.0 * std::cos(phi)};
  const Point v3{-v2.x, v2.y};
  const double wedge_low = v2.y - 1.15;

  Instance inst;
  inst.workspace.outer = {
      {-8.0, -8.0}, {8.0, -8.0}, {8.0, wedge_low}, {3.0, wedge_low}, v2,         {8.0, v2.y},
      {8.0, 6.0},   {2.0, 6.0},  {2.0, 3.0},       v1,                {-2.0, 3.0}, {-2.0, 6.0},
      {-8.0, 6.0},  {-8.0, v3.y}, v3,              {-3.0, wedge_low}, {-8.0, wedge_low},
  };
  inst.workspace = normalize(inst.workspace);
  inst.starts = {{0.0, -5.0}, {-5.0, 2.0}};
  inst.targets = {{0.0, -2.0 + t_offset}, {5.0, 2.0}};
  inst.labeled = false;
  return inst;
}

Instance weakly_monotone_lb(double delta) {
  return monotone_lb(delta, (15.0 - 6.0 * kSqrt3) / 13.0);
}

Instance random_instance(const RandomSpec& spec) {
  const std::size_t m = spec.robots;
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit01(0.0, 1.0);

  // Area grows with the number of positions and their spacing.
  const double side = std::max(4.0 * spec.omega + 2.0,
                               spec.density * spec.rho * std::sqrt(2.0 * static_cast<double>(m)) + 2.0 * spec.omega);

  for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
    Workspace w;
    // Notches: rectangular bites out of the bottom and top edges.
    std::vector<Point> bottom{{0.0, 0.0}};
    std::vector<Point> top{{side, side}};
    const int notches = std::max(0, spec.notches);
    for (int k = 0; k < notches; ++k) {
      const bool on_bottom = k % 2 == 0;
      const int slots = (notches + 1) / 2;
      const int idx = k / 2;
      const double cell = side / slots;
      const double width = cell * (0.2 + 0.3 * unit01(rng));
      const double x0 = cell * idx + (cell - width) * (0.2 + 0.6 * unit01(rng));
      const double depth = side * (0.1 + 0.15 * unit01(rng));
      if (on_bottom) {
        bottom.insert(bottom.end(), {{x0, 0.0}, {x0, depth}, {x0 + width, depth}, {x0 + width, 0.0}});
      } else {
        const double xr = side - x0;
        top.insert(top.end(), {{xr, side}, {xr, side - depth}, {xr - width, side - depth}, {xr - width, side}});
      }
    }
    w.outer = bottom;
    w.outer.push_back({side, 0.0});
    w.outer.insert(w.outer.end(), top.begin(), top.end());
    w.outer.push_back({0.0, side});

    for (int h = 0; h < spec.holes; ++h) {
      const double half = 0.4 + 0.6 * unit01(rng);
      const Point c{side * (0.2 + 0.6 * unit01(rng)), side * (0.2 + 0.6 * unit01(rng))};
      const double a = kPi * 0.5 * unit01(rng);
      Polygon hole;
      for (int q = 0; q < 4; ++q) hole.push_back(c + polar(half * std::sqrt(2.0), a + kPi / 4.0 + q * kPi / 2.0));
      w.holes.push_back(hole);
    }
    w = normalize(w);
    try {
      validate_workspace(w);
    } catch (const Error&) {
      continue;
    }
    // Holes must stay inside the outer boundary.
    bool holes_ok = true;
    for (const Polygon& hole : w.holes) {
      for (const Point& p : hole) holes_ok = holes_ok && point_in_polygon(p, w.outer);
    }
    if (!holes_ok) continue;

    std::vector<Point> pts;
    int tries = 0;
    while (pts.size() < 2 * m && tries < 4000) {
      ++tries;
      const Point p{side * unit01(rng), side * unit01(rng)};
      if (!inside_workspace(w, p) || obstacle_distance(w, p) < spec.omega + 1e-9) continue;
      const bool spaced = std::all_of(pts.begin(), pts.end(), [&](Point q) { return distance(p, q) >= spec.rho + 1e-9; });
      if (spaced) pts.push_back(p);
    }
    if (pts.size() < 2 * m) continue;

    Instance inst;
    inst.workspace = w;
    inst.starts.assign(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(m));
    inst.targets.assign(pts.begin() + static_cast<std::ptrdiff_t>(m), pts.end());
    inst.labeled = spec.labeled;
    const FreeSpace f = build_free_space(w);
    const auto comps = components_with_counts(f, inst.starts, inst.targets);
    if (!std::all_of(comps.begin(), comps.end(), [](const ComponentCount& c) { return c.starts == c.targets; })) continue;
    if (spec.labeled) {
      // Each robot must reach its own target.
      const GeodesicGraph g(f);
      bool ok = true;
      for (std::size_t r = 0; r < m && ok; ++r) {
        const Point t = inst.targets[r];
        ok = std::isfinite(g.distances(inst.starts[r], std::span<const Point>(&t, 1))[0]);
      }
      if (!ok) continue;
    }
    return inst;
  }
  throw Error(ErrorKind::GenerationFailed, "no instance met the requested separation within the attempt limit");
}

Instance gen_fixture(const FixtureSpec& spec) {
  if (spec.name == "hourglass") return hourglass(spec.eps_fig);
  if (spec.name == "strip") return strip(spec.eps_fig);
  if (spec.name == "monotone_lb") return monotone_lb(spec.delta);
  if (spec.name == "weakly_monotone_lb") return weakly_monotone_lb(spec.delta);
  if (spec.name == "random") return random_instance(spec.random);
  throw Error(ErrorKind::GenerationFailed, "unknown fixture " + spec.name);
}

}  // namespace mrmp
