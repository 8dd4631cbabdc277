#pragma once

// Independent reference computations for tests. These deliberately avoid the
// library's geometry routines and rely on brute force or dense sampling.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include "mrmp/free_space.hpp"

namespace oracle {

using mrmp::Point;

inline double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline double seg_dist(Point p, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double l2 = dx * dx + dy * dy;
  double t = l2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / l2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

// Winding-number containment.
inline bool in_ring(Point p, const std::vector<Point>& ring) {
  int wn = 0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point a = ring[i];
    const Point b = ring[(i + 1) % ring.size()];
    const double c = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
    if (a.y <= p.y) {
      if (b.y > p.y && c > 0) ++wn;
    } else if (b.y <= p.y && c < 0) {
      --wn;
    }
  }
  return wn != 0;
}

// Distance from p to the obstacle space, brute force over all features.
inline double clearance(const mrmp::Workspace& w, Point p) {
  if (!in_ring(p, w.outer)) return 0.0;
  for (const auto& h : w.holes) {
    if (in_ring(p, h)) return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  auto ring_dist = [&](const std::vector<Point>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) best = std::min(best, seg_dist(p, r[i], r[(i + 1) % r.size()]));
  };
  ring_dist(w.outer);
  for (const auto& h : w.holes) ring_dist(h);
  for (const auto& c : w.carved_disks) best = std::min(best, std::max(0.0, dist(p, c.center) - c.radius));
  return best;
}

inline Point sample_edge(const mrmp::Edge& e, double t) {
  if (const auto* s = std::get_if<mrmp::Segment>(&e)) {
    return {s->a.x + t * (s->b.x - s->a.x), s->a.y + t * (s->b.y - s->a.y)};
  }
  const auto& a = std::get<mrmp::Arc>(e);
  const double sg = a.orientation == mrmp::Orientation::CCW ? 1.0 : -1.0;
  const double th = a.start_angle + sg * a.sweep * t;
  return {a.center.x + a.radius * std::cos(th), a.center.y + a.radius * std::sin(th)};
}

inline double sampled_edge_distance(Point p, const mrmp::Edge& e, int n = 10000) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) best = std::min(best, dist(p, sample_edge(e, static_cast<double>(i) / n)));
  return best;
}

inline double sampled_linear_motion(Point a0, Point a1, Point b0, Point b1, int n = 10000) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    const Point a{a0.x + t * (a1.x - a0.x), a0.y + t * (a1.y - a0.y)};
    const Point b{b0.x + t * (b1.x - b0.x), b0.y + t * (b1.y - b0.y)};
    best = std::min(best, dist(a, b));
  }
  return best;
}

// Minimum-cost perfect matching by enumerating all permutations.
inline double brute_force_assignment(const std::vector<std::vector<double>>& cost) {
  std::vector<int> perm(cost.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) s += cost[i][static_cast<std::size_t>(perm[i])];
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Shortest path on a grid over the free space with a 32-neighbourhood
// (all primitive offsets with |dx|, |dy| <= 3). Returns +inf if unreachable.
inline double grid_geodesic(const mrmp::Workspace& w, Point a, Point b, double h) {
  double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
  for (const Point& p : w.outer) {
    minx = std::min(minx, p.x);
    miny = std::min(miny, p.y);
    maxx = std::max(maxx, p.x);
    maxy = std::max(maxy, p.y);
  }
  const int nx = static_cast<int>(std::ceil((maxx - minx) / h)) + 1;
  const int ny = static_cast<int>(std::ceil((maxy - miny) / h)) + 1;
  auto node_point = [&](int i, int j) { return Point{minx + i * h, miny + j * h}; };
  const double free_tol = 1e-9;
  std::vector<char> is_free(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      is_free[static_cast<std::size_t>(j) * nx + i] = clearance(w, node_point(i, j)) >= 1.0 - free_tol;
    }
  }
  std::vector<std::pair<int, int>> offs;
  for (int dx = -3; dx <= 3; ++dx) {
    for (int dy = -3; dy <= 3; ++dy) {
      if ((dx != 0 || dy != 0) && std::gcd(std::abs(dx), std::abs(dy)) == 1) offs.emplace_back(dx, dy);
    }
  }
  auto segment_ok = [&](Point p, Point q) {
    const int steps = std::max(2, static_cast<int>(std::ceil(dist(p, q) / (0.25 * h))));
    for (int k = 1; k < steps; ++k) {
      const double t = static_cast<double>(k) / steps;
      if (clearance(w, {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)}) < 1.0 - free_tol) return false;
    }
    return true;
  };
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  const std::size_t src = n;
  const std::size_t dst = n + 1;
  std::vector<double> d(n + 2, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  d[src] = 0.0;
  pq.push({0.0, src});
  // Endpoints attach to grid nodes within a few cells by free straight segments.
  auto attach = [&](Point p, auto&& fn) {
    const int ci = static_cast<int>(std::round((p.x - minx) / h));
    const int cj = static_cast<int>(std::round((p.y - miny) / h));
    for (int i = ci - 3; i <= ci + 3; ++i) {
      for (int j = cj - 3; j <= cj + 3; ++j) {
        if (i < 0 || j < 0 || i >= nx || j >= ny) continue;
        const std::size_t id = static_cast<std::size_t>(j) * nx + i;
        if (!is_free[id]) continue;
        if (segment_ok(p, node_point(i, j))) fn(id, dist(p, node_point(i, j)));
      }
    }
  };
  std::vector<std::pair<std::size_t, double>> into_dst;
  attach(b, [&](std::size_t id, double len) { into_dst.emplace_back(id, len); });
  std::vector<double> to_dst(n, -1.0);
  for (auto [id, len] : into_dst) to_dst[id] = len;
  while (!pq.empty()) {
    const auto [du, u] = pq.top();
    pq.pop();
    if (du > d[u]) continue;
    if (u == dst) break;
    auto relax = [&](std::size_t v, double len) {
      if (du + len < d[v]) {
        d[v] = du + len;
        pq.push({d[v], v});
      }
    };
    if (u == src) {
      attach(a, relax);
      if (segment_ok(a, b)) relax(dst, dist(a, b));
      continue;
    }
    const int i = static_cast<int>(u % nx);
    const int j = static_cast<int>(u / nx);
    if (to_dst[u] >= 0.0) relax(dst, to_dst[u]);
    for (auto [dx, dy] : offs) {
      const int ii = i + dx;
      const int jj = j + dy;
      if (ii < 0 || jj < 0 || ii >= nx || jj >= ny) continue;
      const std::size_t v = static_cast<std::size_t>(jj) * nx + ii;
      if (!is_free[v]) continue;
      const Point p = node_point(i, j);
      const Point q = node_point(ii, jj);
      // Short edges: the midpoint test suffices since F's obstacles have curvature radius >= 1.
      if (clearance(w, {(p.x + q.x) / 2, (p.y + q.y) / 2}) < 1.0 - free_tol) continue;
      relax(v, h * std::hypot(dx, dy));
    }
  }
  return d[dst];
}

}  // namespace oracle
