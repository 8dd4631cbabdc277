#pragma once

#include <vector>

#include "mrmp/geodesics.hpp"
#include "mrmp/motion_plan.hpp"

namespace mrmp {

struct Ray {
  Point origin;
  Point direction;
};

/// Part of a pocket that sees exactly one straight edge of the extended path.
struct ExodusCell {
  int pocket_side = 1;        // 1: left of the path, 2: right of the path
  std::size_t pocket = 0;     // pockets on one side are numbered along the path
  std::size_t edge_index = 0; // index of the base edge within the extended path
  Segment base_edge;
  std::vector<Ray> bounding_bisectors;
  Point direction;            // unit normal of the base edge, pointing into the cell
};

/// One cell per straight edge of γ̂ per side. Throws NotSimplePolygon.
std::vector<ExodusCell> build_pockets_and_cells(const FreeSpace& f, const ExtendedPath& path);

/// Direction of the cell containing q, located by the nearest feature of γ̂.
/// Throws AmbiguousCell when q is within τ of a cell border.
Point cell_direction_for(const ExtendedPath& path, const std::vector<ExodusCell>& cells, Point q);

struct CorridorMotion {
  PhaseKind kind = PhaseKind::Open;
  std::vector<Motion> motions;
};

/// Open displaces every robot except the driver by 2 along its cell direction;
/// close is the exact reverse. Throws SeparationViolation if the displaced
/// robots collide or intrude on the driver's path.
std::pair<CorridorMotion, CorridorMotion> corridor_motion(std::span<const Point> occupied, std::size_t driver,
                                                          const ExtendedPath& path,
                                                          const std::vector<ExodusCell>& cells);

struct ExodusPlanResult {
  MotionPlan plan;
  double path_set_total = 0.0;  // L_Γ: assignment or labeled geodesic sum
  std::vector<ExtendedPath> extended;
};

/// Exodus planner for simple polygons. Requires measured ρ >= 2 and ω >= 3.
ExodusPlanResult plan_exodus(const Instance& inst, bool labeled);

}  // namespace mrmp
