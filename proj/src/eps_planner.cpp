#include "mrmp/eps_planner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mrmp/errors.hpp"

namespace mrmp {

namespace {

const double kSqrt3 = std::sqrt(3.0);

}  // namespace

double required_omega_c1(double e) { return std::sqrt((3.0 - kSqrt3 - e) * (3.0 - kSqrt3 - e) + 1.0); }
double required_rho_c2(double e) { return std::sqrt(0.25 + (3.0 - kSqrt3 / 2.0 - e) * (3.0 - kSqrt3 / 2.0 - e)); }
double required_rho_c3(double e) { return 4.0 - 2.0 * e; }
double required_omega_c4(double e) { return 1.0 + e; }
double required_rho_c5(double e) { return 2.0 + e; }
double omega_bound(double e) { return std::max(required_omega_c4(e), required_omega_c1(e)); }
double rho_bound(double e) { return std::max(required_rho_c3(e), required_rho_c5(e)); }

bool ConstraintReport::ok() const {
  return std::all_of(constraints.begin(), constraints.end(), [](const ConstraintCheck& c) { return c.satisfied; });
}

ConstraintReport check_constraints(const Instance& inst, double epsilon, double slack) {
  ConstraintReport r;
  r.epsilon = epsilon;
  r.separation = measure_separation(inst);
  const double omega = r.separation.omega;
  const double rho = r.separation.rho();
  const std::array<std::pair<double, double>, 5> rows{{
      {required_omega_c1(epsilon), omega},
      {required_rho_c2(epsilon), rho},
      {required_rho_c3(epsilon), rho},
      {required_omega_c4(epsilon), omega},
      {required_rho_c5(epsilon), rho},
  }};
  for (std::size_t k = 0; k < rows.size(); ++k) {
    r.constraints[k] = {rows[k].first, rows[k].second, rows[k].second >= rows[k].first - slack};
  }
  return r;
}

EpsilonChoice choose_epsilon(EpsilonGoal goal) {
  double e = 0.0;
  switch (goal) {
    case EpsilonGoal::Monotone: e = 0.0; break;
    case EpsilonGoal::MinOmega: e = (15.0 - 6.0 * kSqrt3) / 13.0; break;
    case EpsilonGoal::MinRho: e = 2.0 / 3.0; break;
  }
  return {goal, e, omega_bound(e), rho_bound(e)};
}

std::size_t find_interrupting_target(const AssignmentPathSet& gamma, double epsilon) {
  const auto& pairs = gamma.pairs;
  std::vector<std::size_t> candidates;
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    const Point t = pairs[a].path.end();
    bool blocks_any = false;
    for (std::size_t b = 0; b < pairs.size() && !blocks_any; ++b) {
      if (a != b && blocks(pairs[b].path, t, epsilon)) blocks_any = true;
    }
    if (!blocks_any) candidates.push_back(pairs[a].target);
  }
  if (candidates.empty()) throw Error(ErrorKind::NoInterruptingTarget, "every target blocks another path");
  return *std::min_element(candidates.begin(), candidates.end());
}

SwitchPaths build_switch_paths(const Path& gamma_i, const Path& gamma_k, Point s_k, double w, double epsilon) {
  const Point x = gamma_i.point_at(w);
  if (distance(s_k, x) >= 2.0 - epsilon) {
    throw Error(ErrorKind::InvalidSwitch, "blocker is not within 2 - eps of the switch point");
  }
  SwitchPaths sw;
  sw.connector = {s_k, x};
  sw.gamma_k = concat(Path(s_k), sw.connector, gamma_i.subpath(w, 1.0));
  sw.gamma_i = concat(gamma_i.subpath(0.0, w), Segment{x, s_k}, gamma_k);
  return sw;
}

std::vector<std::pair<double, double>> proximity_windows(const Path& driver, Point p, double radius) {
  std::vector<std::pair<double, double>> out;
  const double total = driver.length();
  if (total <= 0.0) {
    if (distance(driver.start(), p) < radius) out.emplace_back(0.0, 1.0);
    return out;
  }
  const Circle around{p, radius};
  for (std::size_t k = 0; k < driver.edges().size(); ++k) {
    const Edge& e = driver.edges()[k];
    const double off = driver.edge_offset(k);
    const double len = edge_length(e);
    std::vector<double> cuts{0.0, len};
    if (const auto* s = std::get_if<Segment>(&e)) {
      for (const double t : line_circle_intersections(s->a, s->direction(), around)) {
        if (t > 0.0 && t < len) cuts.push_back(t);
      }
    } else {
      const Arc& a = std::get<Arc>(e);
      for (const Point& q : circle_circle_intersections({a.center, a.radius}, around)) {
        const double o = a.offset_of(angle_of(q - a.center));
        if (o > 0.0 && o < a.sweep) cuts.push_back(o * a.radius);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      if (cuts[c + 1] - cuts[c] <= 1e-15) continue;
      const Point mid = edge_point_at(e, 0.5 * (cuts[c] + cuts[c + 1]));
      if (distance(mid, p) >= radius) continue;
      const double w0 = (off + cuts[c]) / total;
      const double w1 = (off + cuts[c + 1]) / total;
      if (!out.empty() && w0 - out.back().second <= 1e-12) {
        out.back().second = w1;
      } else {
        out.emplace_back(w0, w1);
      }
    }
  }
  return out;
}

ClearancePath build_clearance_path(const Path& driver, Point p, double epsilon) {
  if (blocks(driver, p, epsilon)) throw Error(ErrorKind::NotInterrupting, "position blocks the driver path");
  return {p, proximity_windows(driver, p)};
}

EpsPlanResult plan_eps(const Instance& inst, const PlannerConfig& config) {
  const double eps = config.epsilon;
  if (!(eps >= 0.0 && eps <= 1.0)) throw Error(ErrorKind::ConstraintViolation, "epsilon outside [0, 1]");
  if (inst.starts.size() != inst.targets.size()) {
    throw Error(ErrorKind::InfeasibleInstance, "number of starts and targets differ");
  }
  if (inst.labeled) throw Error(ErrorKind::InfeasibleInstance, "the eps planner solves unlabeled instances");
  const ConstraintReport report = check_constraints(inst, eps, config.constraint_slack);
  if (!report.ok()) {
    std::ostringstream msg;
    msg << "separation constraints violated:";
    for (std::size_t k = 0; k < report.constraints.size(); ++k) {
      const auto& c = report.constraints[k];
      if (!c.satisfied) msg << " C" << k + 1 << " needs " << c.required << " has " << c.measured << ";";
    }
    throw Error(ErrorKind::ConstraintViolation, msg.str());
  }

  Workspace w = normalize(inst.workspace);
  {
    const FreeSpace f = build_free_space(w);
    for (const ComponentCount& c : components_with_counts(f, inst.starts, inst.targets)) {
      if (c.starts != c.targets) throw Error(ErrorKind::InfeasibleInstance, "unbalanced free-space component");
    }
  }

  const std::size_t m = inst.robots();
  EpsPlanResult result;
  result.epsilon = eps;
  std::vector<Point> pos = inst.starts;
  std::vector<char> settled(m, 0);
  std::vector<char> taken(m, 0);

  for (std::size_t it = 0; it < m; ++it) {
    const FreeSpace f = build_free_space(w);
    const GeodesicGraph g(f);
    std::vector<std::size_t> robots;
    std::vector<std::size_t> target_ids;
    std::vector<Point> s_pts;
    std::vector<Point> t_pts;
    for (std::size_t r = 0; r < m; ++r) {
      if (!settled[r]) {
        robots.push_back(r);
        s_pts.push_back(pos[r]);
      }
      if (!taken[r]) {
        target_ids.push_back(r);
        t_pts.push_back(inst.targets[r]);
      }
    }
    const AssignmentPathSet gamma = assignment_path_set(g, s_pts, t_pts);
    if (it == 0) result.first_assignment_total = gamma.total_length;

    const std::size_t tj = find_interrupting_target(gamma, eps);
    const auto pair_it = std::find_if(gamma.pairs.begin(), gamma.pairs.end(),
                                      [&](const AssignedPath& p) { return p.target == tj; });
    const std::size_t il = pair_it->start;
    const Path& gamma_i = pair_it->path;

    std::vector<Point> others;
    std::vector<std::size_t> other_ids;
    for (std::size_t k = 0; k < s_pts.size(); ++k) {
      if (k == il) continue;
      others.push_back(s_pts[k]);
      other_ids.push_back(k);
    }

    IterationInfo info;
    info.target = target_ids[tj];
    info.original = robots[il];
    info.assignment_total = gamma.total_length;
    Path driver_path = gamma_i;
    std::size_t driver = robots[il];
    if (const auto lb = last_blocker(gamma_i, others, eps)) {
      const std::size_t kl = other_ids[lb->index];
      const auto& gamma_k = std::find_if(gamma.pairs.begin(), gamma.pairs.end(),
                                         [&](const AssignedPath& p) { return p.start == kl; })->path;
      const SwitchPaths sw = build_switch_paths(gamma_i, gamma_k, s_pts[kl], lb->w, eps);
      driver_path = sw.gamma_k;
      driver = robots[kl];
      info.switched = true;
      info.connector = sw.connector;
    }
    info.driver = driver;
    info.driver_path = driver_path;

    Phase phase;
    phase.kind = PhaseKind::Eps;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == driver) {
        phase.motions.push_back({r, TraversePath{driver_path}});
        continue;
      }
      if (min_distance(driver_path, pos[r]) < 2.0 - config.tolerance) {
        build_clearance_path(driver_path, pos[r], eps);
        phase.motions.push_back({r, PolarClearance{pos[r], driver}});
        ++info.clearers;
      } else {
        phase.motions.push_back({r, Stay{pos[r]}});
      }
    }
    result.plan.phases.push_back(std::move(phase));
    result.iterations.push_back(std::move(info));

    pos[driver] = inst.targets[target_ids[tj]];
    settled[driver] = 1;
    taken[target_ids[tj]] = 1;
    if (eps < 1.0) w = carve_disk(w, pos[driver], 1.0 - eps);
  }
  return result;
}

}  // namespace mrmp
