#pragma once

#include <span>
#include <vector>

#include "mrmp/free_space.hpp"
#include "mrmp/geodesics.hpp"

namespace mrmp {

using CostMatrix = std::vector<std::vector<double>>;

/// Entry (i, j) is the geodesic distance from starts[i] to targets[j], +inf if
/// they lie in different components. Rows are computed in parallel.
CostMatrix geodesic_cost_matrix(const FreeSpace& f, std::span<const Point> starts, std::span<const Point> targets);
CostMatrix geodesic_cost_matrix(const GeodesicGraph& g, std::span<const Point> starts,
                                std::span<const Point> targets);
/// Single-threaded reference of the above.
CostMatrix geodesic_cost_matrix_serial(const GeodesicGraph& g, std::span<const Point> starts,
                                       std::span<const Point> targets);

struct Matching {
  std::vector<std::size_t> target_of;  // row -> column
  double total = 0.0;
};

/// Minimum-cost perfect matching (Hungarian method). Among optimal matchings the
/// lexicographically smallest column sequence is returned. Throws InfeasibleMatching
/// when every perfect matching uses an infinite entry.
Matching optimal_assignment(const CostMatrix& cost);

struct AssignedPath {
  std::size_t start = 0;
  std::size_t target = 0;
  Path path;
};

struct AssignmentPathSet {
  std::vector<AssignedPath> pairs;  // sorted by start index
  double total_length = 0.0;
};

/// Optimal-assignment path set for the given starts and targets.
AssignmentPathSet assignment_path_set(const GeodesicGraph& g, std::span<const Point> starts,
                                      std::span<const Point> targets);
/// Path set with the fixed pairing starts[i] -> targets[i].
AssignmentPathSet labeled_path_set(const GeodesicGraph& g, std::span<const Point> starts,
                                   std::span<const Point> targets);

}  // namespace mrmp
