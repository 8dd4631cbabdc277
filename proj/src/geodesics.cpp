#include "mrmp/geodesics.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "mrmp/errors.hpp"

namespace mrmp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNoCircle = std::numeric_limits<std::size_t>::max();
// Slack for free-space tests of graph edges that run along ∂F.
constexpr double kEdgeTol = 1e-9;
// Query points closer than this to ∂F are accepted as lying in F.
constexpr double kQueryTol = 1e-7;
constexpr double kAngleSlack = 1e-7;
constexpr double kSameAngle = 1e-11;

double angle_gap(double a, double b) {
  const double d = normalize_angle(a - b);
  return std::min(d, kTwoPi - d);
}

Orientation orientation_for(Point center, Point touch, Point dir) {
  return cross(touch - center, dir) > 0.0 ? Orientation::CCW : Orientation::CW;
}

}  // namespace

Path::Path(Point single) : start_(single), end_(single) {}

Path::Path(std::vector<Edge> edges) : edges_(std::move(edges)) {
  double total = 0.0;
  cum_.reserve(edges_.size());
  for (const Edge& e : edges_) {
    total += edge_length(e);
    cum_.push_back(total);
  }
  if (!edges_.empty()) {
    start_ = edge_start(edges_.front());
    end_ = edge_end(edges_.back());
  }
}

Point Path::point_at_length(double s) const {
  if (edges_.empty()) return start_;
  const double len = length();
  if (s <= 0.0) return start_;
  if (s >= len) return end_;
  const auto it = std::lower_bound(cum_.begin(), cum_.end(), s);
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - cum_.begin()), edges_.size() - 1);
  return edge_point_at(edges_[k], s - edge_offset(k));
}

Point Path::point_at(double w) const { return point_at_length(w * length()); }

Point Path::tangent_at(double w) const {
  if (edges_.empty()) return {};
  const double s = std::clamp(w * length(), 0.0, length());
  const auto it = std::lower_bound(cum_.begin(), cum_.end(), s);
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - cum_.begin()), edges_.size() - 1);
  return edge_tangent_at(edges_[k], s - edge_offset(k));
}

double Path::length_between(double w1, double w2) const {
  return std::max(0.0, std::clamp(w2, 0.0, 1.0) - std::clamp(w1, 0.0, 1.0)) * length();
}

Path Path::subpath(double w1, double w2) const {
  const double len = length();
  const double s1 = std::clamp(w1, 0.0, 1.0) * len;
  const double s2 = std::clamp(w2, 0.0, 1.0) * len;
  if (s2 - s1 <= 1e-12) return Path(point_at_length(s1));
  std::vector<Edge> out;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const double off = edge_offset(k);
    const double lo = std::max(s1, off);
    const double hi = std::min(s2, cum_[k]);
    if (hi - lo <= 1e-13) continue;
    out.push_back(sub_edge(edges_[k], lo - off, hi - off));
  }
  if (out.empty()) return Path(point_at_length(s1));
  return Path(std::move(out));
}

Path concat(const Path& a, const Path& b) {
  std::vector<Edge> edges = a.edges();
  edges.insert(edges.end(), b.edges().begin(), b.edges().end());
  if (edges.empty()) return Path(a.start());
  return Path(std::move(edges));
}

Path concat(const Path& a, const Segment& connector, const Path& b) {
  std::vector<Edge> edges = a.edges();
  if (connector.length() > 1e-12) edges.emplace_back(connector);
  edges.insert(edges.end(), b.edges().begin(), b.edges().end());
  if (edges.empty()) return Path(a.start());
  return Path(std::move(edges));
}

double path_length(const Path& p) { return p.length(); }
double path_length(const Path& p, double w1, double w2) { return p.length_between(w1, w2); }

// ---------------------------------------------------------------------------

GeodesicGraph::GeodesicGraph(const FreeSpace& f) : f_(&f), circles_(f.convex_features()) {
  compute_free_intervals();
  for (std::size_t i = 0; i < circles_.size(); ++i) {
    for (std::size_t j = i + 1; j < circles_.size(); ++j) {
      for (const CommonTangent& t : common_tangents(circles_[i], circles_[j])) {
        const Point d = t.b - t.a;
        const double len = norm(d);
        if (len <= 1e-12) {
          if (!f.contains(t.a, kEdgeTol)) continue;
          for (const Point dir : {perp(t.normal), -perp(t.normal)}) {
            const std::size_t u = add_node(nodes_, i, orientation_for(circles_[i].center, t.a, dir), t.a);
            const std::size_t v = add_node(nodes_, j, orientation_for(circles_[j].center, t.b, dir), t.b);
            seg_edges_.push_back({u, v, 0.0});
          }
          continue;
        }
        if (!f.segment_free({t.a, t.b}, kEdgeTol)) continue;
        const Orientation oa = orientation_for(circles_[i].center, t.a, d);
        const Orientation ob = orientation_for(circles_[j].center, t.b, d);
        const std::size_t u = add_node(nodes_, i, oa, t.a);
        const std::size_t v = add_node(nodes_, j, ob, t.b);
        seg_edges_.push_back({u, v, len});
        const std::size_t ru = add_node(nodes_, j, flipped(ob), t.b);
        const std::size_t rv = add_node(nodes_, i, flipped(oa), t.a);
        seg_edges_.push_back({ru, rv, len});
      }
    }
  }
}

std::size_t GeodesicGraph::add_node(std::vector<Node>& nodes, std::size_t circle, Orientation o, Point p) const {
  const double angle = normalize_angle(angle_of(p - circles_[circle].center));
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const Node& n = nodes[k];
    if (n.circle == circle && n.orientation == o && angle_gap(n.angle, angle) <= kSameAngle) return k;
  }
  nodes.push_back({circle, o, angle, p});
  return nodes.size() - 1;
}

void GeodesicGraph::compute_free_intervals() {
  const FreeSpace& f = *f_;
  intervals_.assign(circles_.size(), {});
  std::vector<Point> vertices;
  for (const Segment& w : f.walls()) vertices.push_back(w.a);
  for (std::size_t c = 0; c < circles_.size(); ++c) {
    const Circle& circ = circles_[c];
    std::vector<double> angles;
    auto add = [&](Point q) { angles.push_back(normalize_angle(angle_of(q - circ.center))); };
    for (const Segment& w : f.walls()) {
      const double len = w.length();
      const Point dir = w.direction();
      const Point n = perp(dir);
      for (const double sg : {1.0, -1.0}) {
        const Point p0 = w.a + n * sg;
        for (const double t : line_circle_intersections(p0, dir, circ)) {
          if (t >= -1e-9 && t <= len + 1e-9) add(p0 + dir * t);
        }
      }
    }
    for (const Point& v : vertices) {
      for (const Point& q : circle_circle_intersections(circ, {v, 1.0})) add(q);
    }
    for (const Circle& d : f.source().carved_disks) {
      for (const Point& q : circle_circle_intersections(circ, {d.center, d.radius + 1.0})) add(q);
    }
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end(), [](double a, double b) { return b - a <= 1e-14; }),
                 angles.end());
    auto& out = intervals_[c];
    if (angles.empty()) {
      out.push_back({0.0, kTwoPi, f.contains(circ.center + polar(circ.radius, 1.0), kEdgeTol)});
      continue;
    }
    for (std::size_t k = 0; k < angles.size(); ++k) {
      const double lo = angles[k];
      const double hi = k + 1 < angles.size() ? angles[k + 1] : angles.front() + kTwoPi;
      const double mid = 0.5 * (lo + hi);
      out.push_back({lo, hi, f.contains(circ.center + polar(circ.radius, mid), kEdgeTol)});
    }
  }
}

bool GeodesicGraph::arc_free(std::size_t circle, double start_angle, double sweep, Orientation o) const {
  if (sweep <= kAngleSlack) return true;
  const double lo = normalize_angle(o == Orientation::CCW ? start_angle : start_angle - sweep);
  const double hi = lo + sweep;
  for (const Interval& iv : intervals_[circle]) {
    if (iv.free) continue;
    for (const double shift : {-kTwoPi, 0.0, kTwoPi}) {
      const double ov = std::min(hi, iv.hi + shift) - std::max(lo, iv.lo + shift);
      if (ov > kAngleSlack) return false;
    }
  }
  return true;
}

struct GeodesicGraph::QueryResult {
  std::vector<double> dist;
  std::vector<std::optional<Path>> paths;
};

GeodesicGraph::QueryResult GeodesicGraph::run_query(Point a, std::span<const Point> targets,
                                                    bool want_paths) const {
  const FreeSpace& f = *f_;
  if (!f.contains(a, kQueryTol)) throw Error(ErrorKind::PositionOutsideFreeSpace, "query start outside F");
  for (const Point& b : targets) {
    if (!f.contains(b, kQueryTol)) throw Error(ErrorKind::PositionOutsideFreeSpace, "query target outside F");
  }

  enum class Kind { Seg, Arc, Zero };
  struct GEdge {
    std::size_t from;
    std::size_t to;
    double length;
    Kind kind;
    double sweep;
  };

  std::vector<Node> nodes = nodes_;
  std::vector<GEdge> edges;
  edges.reserve(seg_edges_.size() * 2);
  for (const SegEdge& e : seg_edges_) edges.push_back({e.from, e.to, e.length, e.length > 0 ? Kind::Seg : Kind::Zero, 0});

  const std::size_t src = nodes.size();
  nodes.push_back({kNoCircle, Orientation::CCW, 0.0, a});
  std::vector<std::size_t> tgt_ids;
  for (const Point& b : targets) {
    tgt_ids.push_back(nodes.size());
    nodes.push_back({kNoCircle, Orientation::CCW, 0.0, b});
  }

  for (std::size_t c = 0; c < circles_.size(); ++c) {
    const Circle& circ = circles_[c];
    for (const Point& t : point_circle_tangents(a, circ)) {
      const Point d = t - a;
      if (norm(d) <= 1e-12) {
        for (const Orientation o : {Orientation::CCW, Orientation::CW}) {
          edges.push_back({src, add_node(nodes, c, o, t), 0.0, Kind::Zero, 0});
        }
        continue;
      }
      if (!f.segment_free({a, t}, kEdgeTol)) continue;
      edges.push_back({src, add_node(nodes, c, orientation_for(circ.center, t, d), t), norm(d), Kind::Seg, 0});
    }
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const Point b = targets[k];
      for (const Point& t : point_circle_tangents(b, circ)) {
        const Point d = b - t;
        if (norm(d) <= 1e-12) {
          for (const Orientation o : {Orientation::CCW, Orientation::CW}) {
            edges.push_back({add_node(nodes, c, o, t), tgt_ids[k], 0.0, Kind::Zero, 0});
          }
          continue;
        }
        if (!f.segment_free({t, b}, kEdgeTol)) continue;
        edges.push_back({add_node(nodes, c, orientation_for(circ.center, t, d), t), tgt_ids[k], norm(d), Kind::Seg, 0});
      }
    }
  }
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const double len = distance(a, targets[k]);
    if (len <= 1e-12) {
      edges.push_back({src, tgt_ids[k], 0.0, Kind::Zero, 0});
    } else if (f.segment_free({a, targets[k]}, kEdgeTol)) {
      edges.push_back({src, tgt_ids[k], len, Kind::Seg, 0});
    }
  }

  // Arc edges between angularly consecutive nodes of one circle and orientation.
  std::vector<std::vector<std::size_t>> rings(circles_.size() * 2);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k].circle == kNoCircle) continue;
    rings[nodes[k].circle * 2 + (nodes[k].orientation == Orientation::CCW ? 0 : 1)].push_back(k);
  }
  for (std::size_t r = 0; r < rings.size(); ++r) {
    auto& ring = rings[r];
    if (ring.size() < 2) continue;
    const std::size_t c = r / 2;
    const Orientation o = r % 2 == 0 ? Orientation::CCW : Orientation::CW;
    const double sgn = sign_of(o);
    std::sort(ring.begin(), ring.end(), [&](std::size_t x, std::size_t y) {
      return sgn * nodes[x].angle < sgn * nodes[y].angle;
    });
    for (std::size_t k = 0; k < ring.size(); ++k) {
      const Node& from = nodes[ring[k]];
      const std::size_t to_id = ring[(k + 1) % ring.size()];
      const Node& to = nodes[to_id];
      const double sweep = normalize_angle(sgn * (to.angle - from.angle));
      if (sweep <= kSameAngle || kTwoPi - sweep <= kSameAngle) {
        edges.push_back({ring[k], to_id, 0.0, Kind::Zero, 0});
        edges.push_back({to_id, ring[k], 0.0, Kind::Zero, 0});
        continue;
      }
      if (!arc_free(c, from.angle, sweep, o)) continue;
      edges.push_back({ring[k], to_id, circles_[c].radius * sweep, Kind::Arc, sweep});
    }
  }

  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (std::size_t e = 0; e < edges.size(); ++e) adj[edges[e].from].push_back(e);

  std::vector<double> dist(nodes.size(), kInf);
  std::vector<std::size_t> pred(nodes.size(), std::numeric_limits<std::size_t>::max());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[src] = 0.0;
  pq.push({0.0, src});
  std::size_t remaining = targets.size();
  std::vector<char> is_target(nodes.size(), 0);
  for (const std::size_t t : tgt_ids) is_target[t] = 1;
  while (!pq.empty() && remaining > 0) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    if (is_target[u]) {
      is_target[u] = 0;
      --remaining;
    }
    for (const std::size_t e : adj[u]) {
      const double nd = d + edges[e].length;
      if (nd < dist[edges[e].to]) {
        dist[edges[e].to] = nd;
        pred[edges[e].to] = e;
        pq.push({nd, edges[e].to});
      }
    }
  }

  QueryResult res;
  for (std::size_t k = 0; k < targets.size(); ++k) res.dist.push_back(dist[tgt_ids[k]]);
  if (!want_paths) return res;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const std::size_t t = tgt_ids[k];
    if (dist[t] == kInf) {
      res.paths.emplace_back(std::nullopt);
      continue;
    }
    std::vector<std::size_t> chain;
    for (std::size_t v = t; v != src; v = edges[pred[v]].from) chain.push_back(pred[v]);
    std::reverse(chain.begin(), chain.end());
    std::vector<Edge> out;
    for (const std::size_t e : chain) {
      const GEdge& ge = edges[e];
      if (ge.kind == Kind::Seg) {
        out.emplace_back(Segment{nodes[ge.from].point, nodes[ge.to].point});
      } else if (ge.kind == Kind::Arc) {
        const Node& from = nodes[ge.from];
        const Circle& circ = circles_[from.circle];
        Arc arc{circ.center, circ.radius, from.angle, ge.sweep, from.orientation};
        if (!out.empty()) {
          if (auto* prev = std::get_if<Arc>(&out.back());
              prev != nullptr && prev->center == arc.center && prev->radius == arc.radius &&
              prev->orientation == arc.orientation && prev->sweep + arc.sweep <= kTwoPi) {
            prev->sweep += arc.sweep;
            continue;
          }
        }
        out.emplace_back(arc);
      }
    }
    if (out.empty()) {
      res.paths.emplace_back(Path(a));
    } else {
      res.paths.emplace_back(Path(std::move(out)));
    }
  }
  return res;
}

std::optional<Path> GeodesicGraph::shortest_path(Point a, Point b) const {
  const Point t[1] = {b};
  return std::move(run_query(a, t, true).paths.front());
}

std::vector<std::optional<Path>> GeodesicGraph::shortest_paths(Point a, std::span<const Point> targets) const {
  return run_query(a, targets, true).paths;
}

std::vector<double> GeodesicGraph::distances(Point a, std::span<const Point> targets) const {
  return run_query(a, targets, false).dist;
}

std::optional<Path> shortest_path(const FreeSpace& f, Point a, Point b) {
  return GeodesicGraph(f).shortest_path(a, b);
}

// ---------------------------------------------------------------------------

double ray_exit_distance(const FreeSpace& f, Point p, Point dir) {
  std::vector<double> cand{0.0};
  for (const Segment& w : f.walls()) {
    const Point wd = w.direction();
    const Point n = perp(wd);
    const double len = w.length();
    for (const double sg : {1.0, -1.0}) {
      const Point q0 = w.a + n * sg;
      const double den = cross(dir, wd);
      if (std::abs(den) <= 1e-15) continue;
      const double t = cross(q0 - p, wd) / den;
      const double u = cross(q0 - p, dir) / den;
      if (t >= 0.0 && u >= -1e-9 && u <= len + 1e-9) cand.push_back(t);
    }
    for (const double t : line_circle_intersections(p, dir, {w.a, 1.0})) {
      if (t >= 0.0) cand.push_back(t);
    }
  }
  for (const Circle& c : f.source().carved_disks) {
    for (const double t : line_circle_intersections(p, dir, {c.center, c.radius + 1.0})) {
      if (t >= 0.0) cand.push_back(t);
    }
  }
  std::sort(cand.begin(), cand.end());
  for (const double t : cand) {
    if (!f.contains(p + dir * (t + 1e-7), kEdgeTol)) return t;
  }
  throw Error(ErrorKind::ExtensionBlocked, "ray never leaves the free space");
}

ExtendedPath extend_to_boundary(const FreeSpace& f, const Path& path) {
  const auto& edges = path.edges();
  if (edges.empty()) throw Error(ErrorKind::ExtensionBlocked, "path has no edges");
  const auto* first = std::get_if<Segment>(&edges.front());
  const auto* last = std::get_if<Segment>(&edges.back());
  if (first == nullptr || last == nullptr) {
    throw Error(ErrorKind::ExtensionBlocked, "first or last edge of the path is an arc");
  }
  const Point back_dir = -first->direction();
  const Point fwd_dir = last->direction();
  const double t0 = ray_exit_distance(f, path.start(), back_dir);
  const double t1 = ray_exit_distance(f, path.end(), fwd_dir);

  ExtendedPath ext;
  ext.base = path;
  ext.pre_extension = {path.start() + back_dir * t0, path.start()};
  ext.post_extension = {path.end(), path.end() + fwd_dir * t1};

  std::vector<Edge> full = edges;
  if (full.size() == 1) {
    full.front() = Segment{ext.pre_extension.a, ext.post_extension.b};
  } else {
    full.front() = Segment{ext.pre_extension.a, first->b};
    full.back() = Segment{last->a, ext.post_extension.b};
  }
  ext.full = Path(std::move(full));
  const double lf = ext.full.length();
  ext.base_w0 = lf > 0.0 ? t0 / lf : 0.0;
  ext.base_w1 = lf > 0.0 ? (t0 + path.length()) / lf : 1.0;
  return ext;
}

// ---------------------------------------------------------------------------

std::vector<LocalMin> locally_closest_points(const Path& path, Point p) {
  std::vector<LocalMin> out;
  const auto& edges = path.edges();
  const double total = path.length();
  if (edges.empty() || total <= 0.0) {
    out.push_back({0.0, path.start(), distance(p, path.start()), true});
    return out;
  }
  auto push = [&](double s, Point q) {
    const double w = std::clamp(s / total, 0.0, 1.0);
    out.push_back({w, q, distance(p, q), w <= 0.0 || w >= 1.0});
  };
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const double off = path.edge_offset(k);
    const double len = edge_length(edges[k]);
    if (const auto* seg = std::get_if<Segment>(&edges[k])) {
      const Point d = seg->b - seg->a;
      const double l2 = norm2(d);
      if (l2 <= 0.0) continue;
      const double t = dot(p - seg->a, d) / l2;
      if (t > 0.0 && t < 1.0) push(off + t * len, seg->a + d * t);
    } else {
      const Arc& arc = std::get<Arc>(edges[k]);
      const Point rel = p - arc.center;
      if (norm(rel) <= kTau) {
        // Plateau: every point of the arc is equidistant; keep the last one.
        push(off + len, arc.end_point());
        continue;
      }
      const double o = arc.offset_of(angle_of(rel));
      if (o > 0.0 && o < arc.sweep) push(off + o * arc.radius, arc.center + unit(rel) * arc.radius);
    }
  }
  // Joints, including both path ends, via one-sided derivatives of |x - p|².
  for (std::size_t k = 0; k <= edges.size(); ++k) {
    const double s = k == edges.size() ? total : path.edge_offset(k);
    const Point x = k == edges.size() ? edge_end(edges.back()) : edge_start(edges[k]);
    const Point r = x - p;
    bool in_ok = true;
    bool out_ok = true;
    if (k > 0) in_ok = dot(r, edge_tangent_at(edges[k - 1], edge_length(edges[k - 1]))) <= 0.0;
    if (k < edges.size()) out_ok = dot(r, edge_tangent_at(edges[k], 0.0)) >= 0.0;
    if (in_ok && out_ok) push(s, x);
  }
  std::sort(out.begin(), out.end(), [](const LocalMin& a, const LocalMin& b) { return a.w < b.w; });
  std::vector<LocalMin> merged;
  for (const LocalMin& m : out) {
    if (!merged.empty() && m.w - merged.back().w <= kTau) {
      if (m.distance < merged.back().distance) {
        const bool ep = merged.back().is_endpoint || m.is_endpoint;
        merged.back() = m;
        merged.back().is_endpoint = ep;
      }
      continue;
    }
    merged.push_back(m);
  }
  return merged;
}

double min_distance(const Path& path, Point p) {
  if (path.edges().empty()) return distance(p, path.start());
  double best = kInf;
  for (const Edge& e : path.edges()) best = std::min(best, dist_point_edge(p, e).distance);
  return best;
}

BlockClassification classify_position(const Path& path, Point p, double epsilon) {
  BlockClassification c;
  c.max_overlap = std::max(0.0, 2.0 - min_distance(path, p));
  c.kind = c.max_overlap > epsilon + kTau ? BlockKind::Blocking : BlockKind::Interrupting;
  for (const LocalMin& m : locally_closest_points(path, p)) {
    if (m.distance < 2.0) c.witnesses.push_back({m.w, m.distance});
  }
  return c;
}

bool blocks(const Path& path, Point p, double epsilon) {
  return 2.0 - min_distance(path, p) > epsilon + kTau;
}

std::optional<Blocker> last_blocker(const Path& path, std::span<const Point> positions, double epsilon) {
  std::optional<Blocker> best;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if (!blocks(path, positions[k], epsilon)) continue;
    double w = -1.0;
    for (const LocalMin& m : locally_closest_points(path, positions[k])) {
      if (m.distance < 2.0 - epsilon - kTau) w = std::max(w, m.w);
    }
    if (w < 0.0) continue;
    if (!best || w > best->w) best = Blocker{k, w};
  }
  if (best && best->w >= 1.0 - kTau) {
    throw Error(ErrorKind::BlockerAtEndpoint, "last blocker approaches the path at its endpoint");
  }
  return best;
}

}  // namespace mrmp
