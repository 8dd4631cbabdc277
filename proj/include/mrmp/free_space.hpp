#pragma once

#include <vector>

#include "mrmp/geometry.hpp"

namespace mrmp {

/// Polygonal workspace, optionally with holes and carved (removed) disks.
/// After normalize(): outer is CCW, holes are CW, so the workspace interior
/// lies to the left of every boundary edge.
struct Workspace {
  Polygon outer;
  std::vector<Polygon> holes;
  std::vector<Circle> carved_disks;

  bool operator==(const Workspace&) const = default;
};

/// Fixes ring orientations and drops duplicate or collinear vertices.
Workspace normalize(Workspace w);
/// Throws Error(InvalidWorkspace) for self-intersecting or overlapping rings.
void validate_workspace(const Workspace& w);

std::vector<Segment> boundary_edges(const Workspace& w);
/// Vertices where the interior angle of the workspace exceeds π.
std::vector<Point> reflex_vertices(const Workspace& w);
bool inside_workspace(const Workspace& w, Point p);
/// Distance from p to the obstacle space (0 when p is outside the workspace).
double obstacle_distance(const Workspace& w, Point p);

/// Removes the open disk D_radius(center) from the workspace. Radius <= 0 is a no-op;
/// carving the same disk twice is idempotent.
Workspace carve_disk(const Workspace& w, Point center, double radius);

using BoundaryLoop = std::vector<Edge>;

/// The set of robot centers whose unit disk avoids the obstacle space. Closed set.
class FreeSpace {
 public:
  FreeSpace() = default;

  const Workspace& source() const { return source_; }
  const std::vector<BoundaryLoop>& boundary_loops() const { return loops_; }
  const std::vector<Segment>& walls() const { return walls_; }
  const std::vector<Point>& reflex() const { return reflex_; }
  bool empty() const { return loops_.empty(); }

  /// dist(p, O) >= 1 - tol.
  bool contains(Point p, double tol = kTau) const;
  /// Distance from p to the obstacle space including carved disks.
  double clearance(Point p) const;
  /// Circles the free space wraps around: unit circles at reflex vertices and
  /// radius r+1 circles at carved disks.
  std::vector<Circle> convex_features() const;

  /// True when every point of the segment lies in F (exact distance tests).
  bool segment_free(const Segment& s, double tol = kTau) const;
  /// Minimum of dist(x, O) - 1 over the edge; negative means the edge leaves F.
  double edge_margin(const Edge& e) const;

 private:
  friend FreeSpace build_free_space(const Workspace& w);

  Workspace source_;
  std::vector<Segment> walls_;
  std::vector<Point> reflex_;
  std::vector<BoundaryLoop> loops_;
};

/// Builds F by offsetting every boundary feature by one unit and trimming the
/// pieces that are not on ∂F. Pairwise O(k²) in the number k of features.
FreeSpace build_free_space(const Workspace& w);

inline bool contains_free(const FreeSpace& f, Point p) { return f.contains(p); }

struct ComponentCount {
  int component_id = 0;
  int starts = 0;
  int targets = 0;
};

/// Groups start/target positions by connected component of F. Connectivity is
/// decided by geodesic reachability. Throws PositionOutsideFreeSpace.
std::vector<ComponentCount> components_with_counts(const FreeSpace& f, std::span<const Point> starts,
                                                   std::span<const Point> targets);

}  // namespace mrmp
