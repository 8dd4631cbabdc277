#include "mrmp/exodus_planner.hpp"

#include <algorithm>
#include <limits>

#include "mrmp/assignment.hpp"
#include "mrmp/errors.hpp"

namespace mrmp {

namespace {

constexpr double kMinBaseLength = 1e-9;
constexpr double kCorridorTol = 1e-7;
constexpr double kProbe = 1e-6;

bool is_base_edge(const Edge& e) {
  const auto* s = std::get_if<Segment>(&e);
  return s != nullptr && s->length() > kMinBaseLength;
}

// 1 when the arc turns left (its center lies left of the direction of travel), 2 otherwise.
int center_side(const Arc& a) { return a.orientation == Orientation::CCW ? 1 : 2; }

Point side_normal(const Segment& s, int side) {
  const Point n = perp(s.direction());
  return side == 1 ? n : -n;
}

Ray bisector_of(const Arc& a) {
  const Point mid = a.point_at(0.5 * a.length());
  return {a.center, unit(mid - a.center)};
}

const ExodusCell& find_cell(const std::vector<ExodusCell>& cells, std::size_t edge, int side) {
  for (const ExodusCell& c : cells) {
    if (c.edge_index == edge && c.pocket_side == side) return c;
  }
  throw Error(ErrorKind::AmbiguousCell, "no cell for the located edge");
}

// Positions on the centerline or on a bisector fit either neighbouring cell;
// probe a few nearby points in a fixed order and take the first unambiguous one.
Point robust_direction(const ExtendedPath& path, const std::vector<ExodusCell>& cells, Point q) {
  try {
    return cell_direction_for(path, cells, q);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::AmbiguousCell) throw;
  }
  for (int k = 0; k < 8; ++k) {
    try {
      return cell_direction_for(path, cells, q + polar(kProbe, kPi / 2.0 + k * kPi / 4.0));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::AmbiguousCell) throw;
    }
  }
  throw Error(ErrorKind::AmbiguousCell, "no cell found near the position");
}

}  // namespace

std::vector<ExodusCell> build_pockets_and_cells(const FreeSpace& f, const ExtendedPath& path) {
  if (!f.source().holes.empty() || !f.source().carved_disks.empty()) {
    throw Error(ErrorKind::NotSimplePolygon, "exodus needs a simple polygon without holes");
  }
  const auto& edges = path.full.edges();
  std::vector<ExodusCell> cells;
  for (const int side : {1, 2}) {
    std::size_t pocket = 0;
    std::size_t prev_cell = std::numeric_limits<std::size_t>::max();
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (!is_base_edge(edges[k])) continue;
      ExodusCell cell;
      cell.pocket_side = side;
      cell.edge_index = k;
      cell.base_edge = std::get<Segment>(edges[k]);
      cell.direction = side_normal(cell.base_edge, side);
      if (prev_cell != std::numeric_limits<std::size_t>::max()) {
        // Arcs between the previous base edge and this one.
        bool pinched = false;
        std::optional<Ray> bisector;
        for (std::size_t a = cells[prev_cell].edge_index + 1; a < k; ++a) {
          const auto* arc = std::get_if<Arc>(&edges[a]);
          if (arc == nullptr) continue;
          if (center_side(*arc) == side) {
            pinched = true;
          } else if (!bisector) {
            bisector = bisector_of(*arc);
          }
        }
        if (pinched) {
          ++pocket;
        } else if (bisector) {
          cells[prev_cell].bounding_bisectors.push_back(*bisector);
          cell.bounding_bisectors.push_back(*bisector);
        }
      }
      cell.pocket = pocket;
      cells.push_back(cell);
      prev_cell = cells.size() - 1;
    }
  }
  return cells;
}

Point cell_direction_for(const ExtendedPath& path, const std::vector<ExodusCell>& cells, Point q) {
  const auto& edges = path.full.edges();
  if (edges.empty()) throw Error(ErrorKind::AmbiguousCell, "empty path");
  std::size_t best = 0;
  ClosestPoint cp = dist_point_edge(q, edges[0]);
  for (std::size_t k = 1; k < edges.size(); ++k) {
    const ClosestPoint c = dist_point_edge(q, edges[k]);
    if (c.distance < cp.distance - kTau) {
      cp = c;
      best = k;
    }
  }

  // Resolve a segment endpoint that joins an arc to that arc.
  std::size_t arc_index = edges.size();
  if (std::holds_alternative<Arc>(edges[best])) {
    arc_index = best;
  } else if (cp.at_endpoint) {
    const bool at_start = cp.param <= 0.5 * edge_length(edges[best]);
    if (at_start && best > 0 && std::holds_alternative<Arc>(edges[best - 1])) arc_index = best - 1;
    if (!at_start && best + 1 < edges.size() && std::holds_alternative<Arc>(edges[best + 1])) arc_index = best + 1;
  }

  if (arc_index == edges.size()) {
    const Segment& s = std::get<Segment>(edges[best]);
    const double sd = cross(s.direction(), q - s.a);
    if (std::abs(sd) < kTau) throw Error(ErrorKind::AmbiguousCell, "position on the path centerline");
    std::size_t base = best;
    if (!is_base_edge(edges[best])) {
      throw Error(ErrorKind::AmbiguousCell, "nearest feature is a degenerate edge");
    }
    return find_cell(cells, base, sd > 0 ? 1 : 2).direction;
  }

  const Arc& arc = std::get<Arc>(edges[arc_index]);
  std::size_t prev = arc_index;
  while (prev > 0 && !is_base_edge(edges[prev])) --prev;
  std::size_t next = arc_index;
  while (next + 1 < edges.size() && !is_base_edge(edges[next])) ++next;
  if (!is_base_edge(edges[prev]) || !is_base_edge(edges[next])) {
    throw Error(ErrorKind::AmbiguousCell, "arc without adjacent straight edges");
  }

  const int cside = center_side(arc);
  const Point tangent = arc.tangent_at(arc.offset_of(angle_of(cp.closest - arc.center)) * arc.radius);
  const double s = cross(tangent, q - cp.closest);
  const int q_side = s > 0 ? 1 : 2;
  if (q_side == cside) {
    const double d_prev = distance(q, arc.start_point());
    const double d_next = distance(q, arc.end_point());
    return find_cell(cells, d_prev <= d_next ? prev : next, cside).direction;
  }
  const Ray b = bisector_of(arc);
  const double bq = cross(b.direction, q - b.origin);
  if (std::abs(bq) < kTau) throw Error(ErrorKind::AmbiguousCell, "position on a bisector");
  const double bprev = cross(b.direction, arc.start_point() - b.origin);
  const bool prev_side = (bq > 0) == (bprev > 0);
  return find_cell(cells, prev_side ? prev : next, cside == 1 ? 2 : 1).direction;
}

std::pair<CorridorMotion, CorridorMotion> corridor_motion(std::span<const Point> occupied, std::size_t driver,
                                                          const ExtendedPath& path,
                                                          const std::vector<ExodusCell>& cells) {
  CorridorMotion open{PhaseKind::Open, {}};
  CorridorMotion close{PhaseKind::Close, {}};
  std::vector<Point> shift(occupied.size());
  for (std::size_t r = 0; r < occupied.size(); ++r) {
    if (r == driver) continue;
    shift[r] = robust_direction(path, cells, occupied[r]) * 2.0;
  }
  for (std::size_t r = 0; r < occupied.size(); ++r) {
    if (r == driver) {
      open.motions.push_back({r, Stay{occupied[r]}});
      close.motions.push_back({r, Stay{occupied[r]}});
      continue;
    }
    open.motions.push_back({r, LinearDisplace{occupied[r], shift[r]}});
    close.motions.push_back({r, LinearDisplace{occupied[r] + shift[r], -shift[r]}});
  }
  for (std::size_t a = 0; a < occupied.size(); ++a) {
    for (std::size_t b = a + 1; b < occupied.size(); ++b) {
      const double d = min_dist_linear_motions(occupied[a], occupied[a] + shift[a], occupied[b], occupied[b] + shift[b]).dmin;
      if (d < 2.0 - kCorridorTol) throw Error(ErrorKind::SeparationViolation, "corridor opening collides");
    }
    if (a != driver && min_distance(path.base, occupied[a] + shift[a]) < 2.0 - kCorridorTol) {
      throw Error(ErrorKind::SeparationViolation, "displaced robot intrudes on the driver path");
    }
  }
  return {std::move(open), std::move(close)};
}

ExodusPlanResult plan_exodus(const Instance& inst, bool labeled) {
  const Workspace w = normalize(inst.workspace);
  if (!w.holes.empty() || !w.carved_disks.empty() || !polygon_is_simple(w.outer)) {
    throw Error(ErrorKind::NotSimplePolygon, "exodus needs a simple polygon without holes");
  }
  if (inst.starts.size() != inst.targets.size()) {
    throw Error(ErrorKind::InfeasibleInstance, "number of starts and targets differ");
  }
  const std::size_t m = inst.robots();
  const Separation sep = measure_separation(inst);
  if (sep.rho() < 2.0 - kTau || sep.omega < 3.0 - kTau) {
    throw Error(ErrorKind::SeparationViolation, "exodus needs rho >= 2 and omega >= 3");
  }
  const FreeSpace f = build_free_space(w);
  const GeodesicGraph g(f);
  AssignmentPathSet gamma;
  if (labeled) {
    gamma = labeled_path_set(g, inst.starts, inst.targets);
  } else {
    for (const ComponentCount& c : components_with_counts(f, inst.starts, inst.targets)) {
      if (c.starts != c.targets) throw Error(ErrorKind::InfeasibleInstance, "unbalanced free-space component");
    }
    gamma = assignment_path_set(g, inst.starts, inst.targets);
  }

  ExodusPlanResult result;
  result.path_set_total = gamma.total_length;
  std::vector<Point> pos = inst.starts;
  for (std::size_t j = 0; j < m; ++j) {
    const auto it = std::find_if(gamma.pairs.begin(), gamma.pairs.end(),
                                 [&](const AssignedPath& p) { return p.target == j; });
    const std::size_t driver = it->start;
    const ExtendedPath ext = extend_to_boundary(f, it->path);
    const std::vector<ExodusCell> cells = build_pockets_and_cells(f, ext);
    auto [open, close] = corridor_motion(pos, driver, ext, cells);

    Phase traverse{PhaseKind::Traverse, {}};
    for (const Motion& mo : open.motions) {
      if (mo.robot == driver) {
        traverse.motions.push_back({driver, TraversePath{it->path}});
      } else {
        const auto& ld = std::get<LinearDisplace>(mo.primitive);
        traverse.motions.push_back({mo.robot, Stay{ld.anchor + ld.vector}});
      }
    }
    close.motions[driver] = {driver, Stay{inst.targets[j]}};
    result.plan.phases.push_back({PhaseKind::Open, std::move(open.motions)});
    result.plan.phases.push_back(std::move(traverse));
    result.plan.phases.push_back({PhaseKind::Close, std::move(close.motions)});
    result.extended.push_back(ext);
    pos[driver] = inst.targets[j];
  }
  return result;
}

}  // namespace mrmp
