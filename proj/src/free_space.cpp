#include "mrmp/free_space.hpp"

#include <algorithm>
#include <limits>

#include "mrmp/errors.hpp"

namespace mrmp {

namespace {

constexpr double kPieceTol = 1e-7;

Polygon cleaned_ring(const Polygon& ring) {
  Polygon pts;
  for (const Point& p : ring) {
    if (pts.empty() || distance(pts.back(), p) > kTau) pts.push_back(p);
  }
  while (pts.size() > 1 && distance(pts.front(), pts.back()) <= kTau) pts.pop_back();
  // Drop vertices where the boundary continues straight on.
  bool changed = true;
  while (changed && pts.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Point prev = pts[(i + pts.size() - 1) % pts.size()];
      const Point next = pts[(i + 1) % pts.size()];
      const Point d1 = pts[i] - prev;
      const Point d2 = next - pts[i];
      if (std::abs(cross(d1, d2)) <= 1e-12 * norm(d1) * norm(d2) && dot(d1, d2) > 0.0) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return pts;
}

void append_ring_edges(const Polygon& ring, std::vector<Segment>& out) {
  for (std::size_t i = 0; i < ring.size(); ++i) out.push_back({ring[i], ring[(i + 1) % ring.size()]});
}

void append_ring_reflex(const Polygon& ring, std::vector<Point>& out) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point prev = ring[(i + n - 1) % n];
    const Point next = ring[(i + 1) % n];
    if (cross(ring[i] - prev, next - ring[i]) < 0.0) out.push_back(ring[i]);
  }
}

// A directed candidate piece of ∂F with F on its left.
struct Piece {
  Edge edge;
  bool used = false;
};

Edge merged_or_none(const Edge& a, const Edge& b, bool& ok) {
  ok = false;
  if (const auto* sa = std::get_if<Segment>(&a)) {
    if (const auto* sb = std::get_if<Segment>(&b)) {
      const Point d1 = sa->b - sa->a;
      const Point d2 = sb->b - sb->a;
      if (std::abs(cross(d1, d2)) <= 1e-10 * norm(d1) * norm(d2) && dot(d1, d2) > 0.0) {
        ok = true;
        return Segment{sa->a, sb->b};
      }
    }
    return a;
  }
  const auto* aa = std::get_if<Arc>(&a);
  const auto* ab = std::get_if<Arc>(&b);
  if (aa != nullptr && ab != nullptr && distance(aa->center, ab->center) <= 1e-9 &&
      std::abs(aa->radius - ab->radius) <= 1e-9 && aa->orientation == ab->orientation &&
      aa->sweep + ab->sweep <= kTwoPi + 1e-9) {
    ok = true;
    return Arc{aa->center, aa->radius, aa->start_angle, std::min(kTwoPi, aa->sweep + ab->sweep),
               aa->orientation};
  }
  return a;
}

BoundaryLoop merge_loop(BoundaryLoop loop) {
  if (loop.size() < 2) return loop;
  BoundaryLoop out;
  for (const Edge& e : loop) {
    if (!out.empty()) {
      bool ok = false;
      Edge m = merged_or_none(out.back(), e, ok);
      if (ok) {
        out.back() = m;
        continue;
      }
    }
    out.push_back(e);
  }
  while (out.size() > 1) {
    bool ok = false;
    Edge m = merged_or_none(out.back(), out.front(), ok);
    if (!ok) break;
    out.front() = m;
    out.pop_back();
  }
  return out;
}

double turn_angle(Point in, Point out) { return std::atan2(cross(in, out), dot(in, out)); }

}  // namespace

Workspace normalize(Workspace w) {
  w.outer = cleaned_ring(w.outer);
  if (signed_area(w.outer) < 0.0) std::reverse(w.outer.begin(), w.outer.end());
  for (Polygon& h : w.holes) {
    h = cleaned_ring(h);
    if (signed_area(h) > 0.0) std::reverse(h.begin(), h.end());
  }
  std::vector<Circle> disks;
  for (const Circle& c : w.carved_disks) {
    if (c.radius <= 0.0) continue;
    const bool dup = std::any_of(disks.begin(), disks.end(), [&](const Circle& d) {
      return distance(d.center, c.center) <= kTau && std::abs(d.radius - c.radius) <= kTau;
    });
    if (!dup) disks.push_back(c);
  }
  w.carved_disks = std::move(disks);
  return w;
}

void validate_workspace(const Workspace& w) {
  if (!polygon_is_simple(w.outer)) throw Error(ErrorKind::InvalidWorkspace, "outer polygon is not simple");
  std::vector<Segment> outer_edges;
  append_ring_edges(w.outer, outer_edges);
  for (std::size_t i = 0; i < w.holes.size(); ++i) {
    const Polygon& h = w.holes[i];
    if (!polygon_is_simple(h)) throw Error(ErrorKind::InvalidWorkspace, "hole is not simple");
    if (!point_in_polygon(h.front(), w.outer)) throw Error(ErrorKind::InvalidWorkspace, "hole outside outer polygon");
    std::vector<Segment> hole_edges;
    append_ring_edges(h, hole_edges);
    for (const Segment& e : hole_edges) {
      for (const Segment& f : outer_edges) {
        if (segments_intersect(e, f)) throw Error(ErrorKind::InvalidWorkspace, "hole crosses outer polygon");
      }
    }
    for (std::size_t j = 0; j < i; ++j) {
      const Polygon& g = w.holes[j];
      if (point_in_polygon(h.front(), g) || point_in_polygon(g.front(), h)) {
        throw Error(ErrorKind::InvalidWorkspace, "nested holes");
      }
      std::vector<Segment> g_edges;
      append_ring_edges(g, g_edges);
      for (const Segment& e : hole_edges) {
        for (const Segment& f : g_edges) {
          if (segments_intersect(e, f)) throw Error(ErrorKind::InvalidWorkspace, "holes intersect");
        }
      }
    }
  }
  for (const Circle& c : w.carved_disks) {
    if (!point_in_polygon(c.center, w.outer)) {
      throw Error(ErrorKind::InvalidWorkspace, "carved disk outside outer polygon");
    }
  }
}

std::vector<Segment> boundary_edges(const Workspace& w) {
  std::vector<Segment> out;
  append_ring_edges(w.outer, out);
  for (const Polygon& h : w.holes) append_ring_edges(h, out);
  return out;
}

std::vector<Point> reflex_vertices(const Workspace& w) {
  std::vector<Point> out;
  append_ring_reflex(w.outer, out);
  for (const Polygon& h : w.holes) append_ring_reflex(h, out);
  return out;
}

bool inside_workspace(const Workspace& w, Point p) {
  if (!point_in_polygon(p, w.outer)) return false;
  return std::none_of(w.holes.begin(), w.holes.end(),
                      [&](const Polygon& h) { return point_in_polygon(p, h); });
}

double obstacle_distance(const Workspace& w, Point p) {
  if (!inside_workspace(w, p)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const Segment& e : boundary_edges(w)) best = std::min(best, dist_point_segment(p, e).distance);
  for (const Circle& c : w.carved_disks) best = std::min(best, std::max(0.0, distance(p, c.center) - c.radius));
  return best;
}

Workspace carve_disk(const Workspace& w, Point center, double radius) {
  if (radius <= 0.0) return w;
  Workspace out = w;
  out.carved_disks.push_back({center, radius});
  return normalize(std::move(out));
}

bool FreeSpace::contains(Point p, double tol) const { return clearance(p) >= 1.0 - tol; }

double FreeSpace::clearance(Point p) const {
  if (!inside_workspace(source_, p)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const Segment& e : walls_) best = std::min(best, dist_point_segment(p, e).distance);
  for (const Circle& c : source_.carved_disks) {
    best = std::min(best, std::max(0.0, distance(p, c.center) - c.radius));
  }
  return best;
}

std::vector<Circle> FreeSpace::convex_features() const {
  std::vector<Circle> out;
  for (const Point& v : reflex_) out.push_back({v, 1.0});
  for (const Circle& c : source_.carved_disks) out.push_back({c.center, c.radius + 1.0});
  return out;
}

double FreeSpace::edge_margin(const Edge& e) const {
  const Point mid = edge_point_at(e, 0.5 * edge_length(e));
  if (!inside_workspace(source_, mid)) return -1.0;
  double best = std::numeric_limits<double>::infinity();
  if (const auto* s = std::get_if<Segment>(&e)) {
    for (const Segment& w : walls_) best = std::min(best, segment_segment_distance(*s, w));
    for (const Circle& c : source_.carved_disks) {
      best = std::min(best, dist_point_segment(c.center, *s).distance - c.radius);
    }
  } else {
    const Arc& a = std::get<Arc>(e);
    for (const Segment& w : walls_) best = std::min(best, arc_segment_distance(a, w));
    for (const Circle& c : source_.carved_disks) {
      best = std::min(best, dist_point_arc(c.center, a).distance - c.radius);
    }
  }
  return best - 1.0;
}

bool FreeSpace::segment_free(const Segment& s, double tol) const {
  if (s.length() <= kTau) return contains(s.a, tol);
  return edge_margin(s) >= -tol;
}

FreeSpace build_free_space(const Workspace& input) {
  FreeSpace f;
  f.source_ = normalize(input);
  validate_workspace(f.source_);
  f.walls_ = boundary_edges(f.source_);
  f.reflex_ = reflex_vertices(f.source_);

  // Candidate primitives: inward unit offsets of every wall, plus full circles
  // around reflex vertices and carved disks, all directed with F on the left.
  std::vector<Segment> offsets;
  for (const Segment& e : f.walls_) {
    const Point n = perp(e.direction());
    offsets.push_back({e.a + n, e.b + n});
  }
  std::vector<Circle> circles = f.convex_features();

  std::vector<std::vector<double>> seg_cuts(offsets.size());
  std::vector<std::vector<double>> circle_cuts(circles.size());
  auto circle_cut = [&](std::size_t ci, Point q) {
    circle_cuts[ci].push_back(normalize_angle(angle_of(q - circles[ci].center)));
  };

  for (std::size_t i = 0; i < offsets.size(); ++i) {
    const Segment& s = offsets[i];
    const double len = s.length();
    const Point dir = s.direction();
    for (std::size_t j = i + 1; j < offsets.size(); ++j) {
      const Segment& t = offsets[j];
      const Point r = s.b - s.a;
      const Point q = t.b - t.a;
      const double den = cross(r, q);
      if (std::abs(den) <= 1e-14 * norm(r) * norm(q)) continue;
      const double u = cross(t.a - s.a, q) / den;
      const double v = cross(t.a - s.a, r) / den;
      if (u < -kTau || u > 1 + kTau || v < -kTau || v > 1 + kTau) continue;
      seg_cuts[i].push_back(u * len);
      seg_cuts[j].push_back(v * t.length());
    }
    for (std::size_t c = 0; c < circles.size(); ++c) {
      for (const double t : line_circle_intersections(s.a, dir, circles[c])) {
        if (t < -kTau || t > len + kTau) continue;
        seg_cuts[i].push_back(t);
        circle_cut(c, s.a + dir * t);
      }
    }
  }
  for (std::size_t a = 0; a < circles.size(); ++a) {
    for (std::size_t b = a + 1; b < circles.size(); ++b) {
      for (const Point& q : circle_circle_intersections(circles[a], circles[b])) {
        circle_cut(a, q);
        circle_cut(b, q);
      }
    }
  }

  auto on_boundary = [&](const Edge& e) {
    if (edge_length(e) <= 1e-9) return false;
    const Point mid = edge_point_at(e, 0.5 * edge_length(e));
    return f.contains(mid, kPieceTol);
  };

  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    auto& cuts = seg_cuts[i];
    const double len = offsets[i].length();
    cuts.push_back(0.0);
    cuts.push_back(len);
    for (double& c : cuts) c = std::clamp(c, 0.0, len);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      if (cuts[k + 1] - cuts[k] <= 1e-9) continue;
      Edge e = Segment{offsets[i].point_at(cuts[k]), offsets[i].point_at(cuts[k + 1])};
      if (on_boundary(e)) pieces.push_back({e});
    }
  }
  for (std::size_t c = 0; c < circles.size(); ++c) {
    // Circles are traversed clockwise so that F stays on the left.
    auto& cuts = circle_cuts[c];
    const Circle& circ = circles[c];
    if (cuts.empty()) {
      Edge e = Arc{circ.center, circ.radius, 0.0, kTwoPi, Orientation::CW};
      if (on_boundary(e)) pieces.push_back({e});
      continue;
    }
    std::vector<double> offs;
    for (const double th : cuts) offs.push_back(normalize_angle(-(th - cuts.front())));
    std::sort(offs.begin(), offs.end());
    offs.erase(std::unique(offs.begin(), offs.end(), [](double x, double y) { return y - x <= 1e-12; }),
               offs.end());
    const std::size_t k = offs.size();
    for (std::size_t i = 0; i < k; ++i) {
      const double o0 = offs[i];
      const double o1 = (i + 1 < k) ? offs[i + 1] : kTwoPi;
      if (o1 - o0 <= 1e-9 / circ.radius) continue;
      Edge e = Arc{circ.center, circ.radius, normalize_angle(cuts.front() - o0), o1 - o0, Orientation::CW};
      if (on_boundary(e)) pieces.push_back({e});
    }
  }

  // Link pieces end-to-start into closed loops.
  constexpr double kLinkTol = 1e-6;
  for (std::size_t first = 0; first < pieces.size(); ++first) {
    if (pieces[first].used) continue;
    BoundaryLoop loop;
    std::size_t cur = first;
    pieces[cur].used = true;
    loop.push_back(pieces[cur].edge);
    bool closed = false;
    for (std::size_t guard = 0; guard <= pieces.size(); ++guard) {
      const Point end = edge_end(pieces[cur].edge);
      const Point in_dir = edge_tangent_at(pieces[cur].edge, edge_length(pieces[cur].edge));
      if (distance(end, edge_start(pieces[first].edge)) <= kLinkTol && loop.size() > 0) {
        // Prefer closing the loop unless a straighter continuation exists.
        bool better = false;
        const double close_turn = std::abs(turn_angle(in_dir, edge_tangent_at(pieces[first].edge, 0.0)));
        for (std::size_t j = 0; j < pieces.size(); ++j) {
          if (pieces[j].used) continue;
          if (distance(end, edge_start(pieces[j].edge)) > kLinkTol) continue;
          if (std::abs(turn_angle(in_dir, edge_tangent_at(pieces[j].edge, 0.0))) < close_turn - 1e-9) better = true;
        }
        if (!better) {
          closed = true;
          break;
        }
      }
      std::size_t next = pieces.size();
      double best_turn = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < pieces.size(); ++j) {
        if (pieces[j].used) continue;
        if (distance(end, edge_start(pieces[j].edge)) > kLinkTol) continue;
        const double turn = std::abs(turn_angle(in_dir, edge_tangent_at(pieces[j].edge, 0.0)));
        if (turn < best_turn) {
          best_turn = turn;
          next = j;
        }
      }
      if (next == pieces.size()) break;
      pieces[next].used = true;
      loop.push_back(pieces[next].edge);
      cur = next;
    }
    if (closed) f.loops_.push_back(merge_loop(std::move(loop)));
  }
  return f;
}

}  // namespace mrmp
