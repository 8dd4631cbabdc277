#include "mrmp/render.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <limits>
#include <sstream>

#include "mrmp/errors.hpp"
#include "mrmp/free_space.hpp"

namespace mrmp {

namespace {

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                             "#9467bd", "#8c564b", "#e377c2", "#17becf"};

const char* color(std::size_t robot) { return kPalette[robot % kPalette.size()]; }

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << (std::abs(v) < 5e-7 ? 0.0 : v);
  return os.str();
}

std::string xy(Point p) { return num(p.x) + "," + num(p.y); }

std::string ring_d(const Polygon& ring) {
  std::string d;
  for (std::size_t k = 0; k < ring.size(); ++k) d += (k == 0 ? "M" : " L") + xy(ring[k]);
  return d + " Z";
}

// Path data for a chain of edges. Coordinates stay in world units; the y flip
// is applied by the enclosing group, so counter-clockwise arcs use sweep flag 1.
std::string edges_d(const std::vector<Edge>& edges, Point start) {
  std::string d = "M" + xy(start);
  for (const Edge& e : edges) {
    if (const auto* s = std::get_if<Segment>(&e)) {
      d += " L" + xy(s->b);
      continue;
    }
    const Arc& a = std::get<Arc>(e);
    // SVG cannot draw a full circle in one arc command.
    const int parts = a.sweep > kPi ? 2 : 1;
    for (int k = 1; k <= parts; ++k) {
      const Point end = a.point_at(a.length() * k / parts);
      d += " A" + num(a.radius) + "," + num(a.radius) + " 0 0 " + (a.orientation == Orientation::CCW ? "1 " : "0 ") + xy(end);
    }
  }
  return d;
}

}  // namespace

std::string render_svg(const Instance& inst, const MotionPlan* plan, const RenderOptions& opt) {
  const Workspace& w = inst.workspace;
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = x0;
  double x1 = -x0;
  double y1 = -x0;
  for (Point p : w.outer) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  if (w.outer.empty()) x0 = y0 = 0.0, x1 = y1 = 1.0;
  const double margin = 1.0;
  x0 -= margin;
  y0 -= margin;
  x1 += margin;
  y1 += margin;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num((x1 - x0) * opt.scale) << "\" height=\""
     << num((y1 - y0) * opt.scale) << "\" viewBox=\"" << num(x0) << ' ' << num(-y1) << ' ' << num(x1 - x0) << ' '
     << num(y1 - y0) << "\">\n";
  os << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
        "orient=\"auto-start-reverse\"><path d=\"M0,0 L10,5 L0,10 Z\" fill=\"#333\"/></marker></defs>\n";
  os << "<g transform=\"scale(1,-1)\">\n";

  // Obstacle space: gray background with the workspace cut out.
  os << "<rect class=\"obstacle\" x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(x1 - x0)
     << "\" height=\"" << num(y1 - y0) << "\" fill=\"#999\"/>\n";
  std::string ws = ring_d(w.outer);
  for (const Polygon& h : w.holes) ws += " " + ring_d(h);
  os << "<path class=\"workspace\" d=\"" << ws << "\" fill=\"#fff\" fill-rule=\"evenodd\" stroke=\"#333\" stroke-width=\"0.05\"/>\n";
  for (const Circle& c : w.carved_disks) {
    os << "<circle class=\"obstacle\" cx=\"" << num(c.center.x) << "\" cy=\"" << num(c.center.y) << "\" r=\""
       << num(c.radius) << "\" fill=\"#999\"/>\n";
  }

  try {
    const FreeSpace f = build_free_space(w);
    for (const BoundaryLoop& loop : f.boundary_loops()) {
      if (loop.empty()) continue;
      os << "<path class=\"free-boundary\" d=\"" << edges_d(loop, edge_start(loop.front()))
         << " Z\" fill=\"none\" stroke=\"#4a4\" stroke-width=\"0.04\" stroke-dasharray=\"0.2,0.1\"/>\n";
    }
  } catch (const Error&) {
    // Invalid workspaces are drawn without the free-space boundary.
  }

  if (plan != nullptr) {
    for (std::size_t k = 0; k < plan->phases.size(); ++k) {
      const Phase& ph = plan->phases[k];
      for (const Motion& m : ph.motions) {
        if (const auto* tr = std::get_if<TraversePath>(&m.primitive)) {
          const std::string d = edges_d(tr->path.edges(), tr->path.start());
          os << "<path class=\"trace\" d=\"" << d << "\" fill=\"none\" stroke=\"" << color(m.robot)
             << "\" stroke-opacity=\"0.5\" stroke-width=\"2\" stroke-linecap=\"round\" stroke-linejoin=\"round\"/>\n";
          os << "<path class=\"robot-path\" data-robot=\"" << m.robot << "\" data-phase=\"" << k << "\" d=\"" << d
             << "\" fill=\"none\" stroke=\"" << color(m.robot) << "\" stroke-width=\"0.08\"/>\n";
        } else if (const auto* ld = std::get_if<LinearDisplace>(&m.primitive); ld && ph.kind == PhaseKind::Open) {
          const Point e = ld->anchor + ld->vector;
          os << "<line class=\"displacement\" data-robot=\"" << m.robot << "\" x1=\"" << num(ld->anchor.x) << "\" y1=\""
             << num(ld->anchor.y) << "\" x2=\"" << num(e.x) << "\" y2=\"" << num(e.y)
             << "\" stroke=\"#333\" stroke-width=\"0.06\" marker-end=\"url(#arrow)\"/>\n";
        }
      }
      if (opt.snapshots) {
        const PhaseEvaluator ev(ph, inst.robots());
        for (std::size_t r = 0; r < inst.robots(); ++r) {
          const Point p = ev.position(r, 1.0);
          os << "<circle class=\"snapshot\" data-phase=\"" << k << "\" cx=\"" << num(p.x) << "\" cy=\"" << num(p.y)
             << "\" r=\"1\" fill=\"" << color(r) << "\" fill-opacity=\"0.15\"/>\n";
        }
      }
    }
  }

  for (std::size_t r = 0; r < inst.starts.size(); ++r) {
    const Point s = inst.starts[r];
    os << "<circle class=\"start\" cx=\"" << num(s.x) << "\" cy=\"" << num(s.y) << "\" r=\"1\" fill=\"" << color(r)
       << "\" fill-opacity=\"0.6\" stroke=\"#000\" stroke-width=\"0.03\"/>\n";
  }
  for (std::size_t r = 0; r < inst.targets.size(); ++r) {
    const Point t = inst.targets[r];
    os << "<circle class=\"target\" cx=\"" << num(t.x) << "\" cy=\"" << num(t.y) << "\" r=\"1\" fill=\"none\" stroke=\""
       << (inst.labeled ? color(r) : "#000") << "\" stroke-width=\"0.05\" stroke-dasharray=\"0.15,0.1\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace mrmp
