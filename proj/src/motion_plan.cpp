#include "mrmp/motion_plan.hpp"

#include <algorithm>
#include <limits>

#include "mrmp/errors.hpp"

namespace mrmp {

Separation measure_separation(const Instance& inst) {
  const double inf = std::numeric_limits<double>::infinity();
  Separation s{inf, inf, inf};
  auto mono = [&](const std::vector<Point>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) s.rho_mono = std::min(s.rho_mono, distance(v[i], v[j]));
    }
  };
  mono(inst.starts);
  mono(inst.targets);
  for (const Point& a : inst.starts) {
    for (const Point& b : inst.targets) s.rho_bi = std::min(s.rho_bi, distance(a, b));
  }
  const Workspace w = normalize(inst.workspace);
  for (const auto* set : {&inst.starts, &inst.targets}) {
    for (const Point& p : *set) s.omega = std::min(s.omega, obstacle_distance(w, p));
  }
  return s;
}

Point clearance_position(Point anchor, Point driver) {
  const Point rel = driver - anchor;
  const double r = norm(rel);
  if (r >= 2.0 || r <= 0.0) return anchor;
  return anchor - rel * ((2.0 - r) / r);
}

PhaseEvaluator::PhaseEvaluator(const Phase& phase, std::size_t robots)
    : phase_(&phase), slot_(robots, std::numeric_limits<std::size_t>::max()) {
  for (std::size_t k = 0; k < phase.motions.size(); ++k) {
    const std::size_t r = phase.motions[k].robot;
    if (r >= robots) throw Error(ErrorKind::MalformedPlan, "motion for unknown robot");
    if (slot_[r] != std::numeric_limits<std::size_t>::max()) {
      throw Error(ErrorKind::MalformedPlan, "robot listed twice in a phase");
    }
    slot_[r] = k;
  }
  for (std::size_t r = 0; r < robots; ++r) {
    if (slot_[r] == std::numeric_limits<std::size_t>::max()) {
      throw Error(ErrorKind::MalformedPlan, "robot missing from a phase");
    }
    if (const auto* pc = std::get_if<PolarClearance>(&primitive(r))) {
      if (pc->driver >= robots || !std::holds_alternative<TraversePath>(primitive(pc->driver))) {
        throw Error(ErrorKind::MalformedPlan, "polar clearance without a traversing driver");
      }
    }
  }
}

const Primitive& PhaseEvaluator::primitive(std::size_t robot) const {
  return phase_->motions[slot_[robot]].primitive;
}

Point PhaseEvaluator::position(std::size_t robot, double t) const {
  const Primitive& p = primitive(robot);
  if (const auto* s = std::get_if<Stay>(&p)) return s->anchor;
  if (const auto* tr = std::get_if<TraversePath>(&p)) return tr->path.point_at(t);
  if (const auto* ld = std::get_if<LinearDisplace>(&p)) return ld->anchor + ld->vector * t;
  const auto& pc = std::get<PolarClearance>(p);
  return clearance_position(pc.anchor, position(pc.driver, t));
}

double PhaseEvaluator::speed(std::size_t robot) const {
  const Primitive& p = primitive(robot);
  if (std::holds_alternative<Stay>(p)) return 0.0;
  if (const auto* tr = std::get_if<TraversePath>(&p)) return tr->path.length();
  if (const auto* ld = std::get_if<LinearDisplace>(&p)) return norm(ld->vector);
  // The polar map scales the driver's angular speed by (2 - r) / r.
  const auto& pc = std::get<PolarClearance>(p);
  const double v = speed(pc.driver);
  const double r = min_distance(std::get<TraversePath>(primitive(pc.driver)).path, pc.anchor);
  if (r >= 1.0) return v;
  return r <= 1e-12 ? std::numeric_limits<double>::infinity() : v * (2.0 - r) / r;
}

bool PhaseEvaluator::linear(std::size_t robot) const {
  const Primitive& p = primitive(robot);
  if (std::holds_alternative<Stay>(p) || std::holds_alternative<LinearDisplace>(p)) return true;
  if (const auto* tr = std::get_if<TraversePath>(&p)) {
    const auto& e = tr->path.edges();
    return e.empty() || (e.size() == 1 && std::holds_alternative<Segment>(e.front()));
  }
  return false;
}

}  // namespace mrmp
