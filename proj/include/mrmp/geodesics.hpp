#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mrmp/free_space.hpp"
#include "mrmp/geometry.hpp"

namespace mrmp {

/// Chain of segments and arcs parameterized by normalized arc length w in [0, 1].
/// A path without edges is a single point.
class Path {
 public:
  Path() = default;
  explicit Path(Point single);
  explicit Path(std::vector<Edge> edges);

  const std::vector<Edge>& edges() const { return edges_; }
  double length() const { return cum_.empty() ? 0.0 : cum_.back(); }
  Point start() const { return start_; }
  Point end() const { return end_; }

  Point point_at(double w) const;
  Point point_at_length(double s) const;
  /// Unit direction of travel; zero for a single-point path.
  Point tangent_at(double w) const;
  /// Length of the sub-range [w1, w2].
  double length_between(double w1, double w2) const;
  Path subpath(double w1, double w2) const;
  /// Arc length at the start of edge k.
  double edge_offset(std::size_t k) const { return k == 0 ? 0.0 : cum_[k - 1]; }

 private:
  std::vector<Edge> edges_;
  std::vector<double> cum_;
  Point start_;
  Point end_;
};

using GeodesicPath = Path;

/// Joins two paths; b must start where a ends.
Path concat(const Path& a, const Path& b);
Path concat(const Path& a, const Segment& connector, const Path& b);

double path_length(const Path& p);
double path_length(const Path& p, double w1, double w2);

/// Tangent graph among the convex features of F (reflex-vertex unit circles
/// and carved-disk circles). Nodes are tangent points tagged with the direction
/// of travel around their circle; queries attach the endpoints on the fly.
class GeodesicGraph {
 public:
  explicit GeodesicGraph(const FreeSpace& f);

  const FreeSpace& free_space() const { return *f_; }

  /// Shortest path in F, or nullopt if a and b lie in different components.
  /// Throws PositionOutsideFreeSpace.
  std::optional<Path> shortest_path(Point a, Point b) const;
  /// Single-source query towards several targets.
  std::vector<std::optional<Path>> shortest_paths(Point a, std::span<const Point> targets) const;
  /// Geodesic distances from a; +inf where unreachable.
  std::vector<double> distances(Point a, std::span<const Point> targets) const;

  /// True when the arc lies in F, using the precomputed free angular intervals.
  bool arc_free(std::size_t circle, double start_angle, double sweep, Orientation o) const;

 private:
  struct Node {
    std::size_t circle;
    Orientation orientation;
    double angle;
    Point point;
  };
  struct SegEdge {
    std::size_t from;
    std::size_t to;
    double length;
  };
  struct Interval {
    double lo;
    double hi;
    bool free;
  };

  std::size_t add_node(std::vector<Node>& nodes, std::size_t circle, Orientation o, Point p) const;
  void compute_free_intervals();
  struct QueryResult;
  QueryResult run_query(Point a, std::span<const Point> targets, bool want_paths) const;

  const FreeSpace* f_;
  std::vector<Circle> circles_;
  std::vector<std::vector<Interval>> intervals_;
  std::vector<Node> nodes_;
  std::vector<SegEdge> seg_edges_;
};

/// Convenience wrapper building a graph for a single query.
std::optional<Path> shortest_path(const FreeSpace& f, Point a, Point b);

/// γ̂: the path prolonged backwards along its first segment and forwards along
/// its last segment until both ends hit ∂F.
struct ExtendedPath {
  Path base;
  Segment pre_extension;
  Segment post_extension;
  Path full;
  /// Normalized parameters of base's endpoints within full.
  double base_w0 = 0.0;
  double base_w1 = 1.0;
};

/// Throws ExtensionBlocked if the first or last edge is an arc.
ExtendedPath extend_to_boundary(const FreeSpace& f, const Path& path);
/// Distance along the ray from p in unit direction dir to the first exit from F.
double ray_exit_distance(const FreeSpace& f, Point p, Point dir);

struct LocalMin {
  double w = 0.0;
  Point point;
  double distance = 0.0;
  bool is_endpoint = false;
};

/// Local minima of w -> |path(w) - p|, sorted by w.
std::vector<LocalMin> locally_closest_points(const Path& path, Point p);
/// Global minimum distance from p to the path.
double min_distance(const Path& path, Point p);

enum class BlockKind { Blocking, Interrupting };

struct Witness {
  double w = 0.0;
  double distance = 0.0;
};

struct BlockClassification {
  BlockKind kind = BlockKind::Interrupting;
  double max_overlap = 0.0;
  std::vector<Witness> witnesses;
};

/// Blocking iff the maximum overlap with the path exceeds ε + τ.
BlockClassification classify_position(const Path& path, Point p, double epsilon);
bool blocks(const Path& path, Point p, double epsilon);

struct Blocker {
  std::size_t index = 0;
  double w = 0.0;
};

/// The position in S whose last qualifying locally closest point on the path has
/// the largest parameter. Throws BlockerAtEndpoint when that parameter is 1.
std::optional<Blocker> last_blocker(const Path& path, std::span<const Point> positions, double epsilon);

}  // namespace mrmp
