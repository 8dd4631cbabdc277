#include "mrmp/validator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mrmp/eps_planner.hpp"
#include "mrmp/errors.hpp"

namespace mrmp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kContinuityTol = 1e-6;

// Minimum of f over [0, 1] for |f'| <= lip, certified to `tol` whenever the
// minimum lies below `cutoff`. Larger minima are only bounded from above.
template <class F>
double lipschitz_min(F&& f, double lip, double cutoff, double tol) {
  const double f0 = f(0.0);
  const double f1 = f(1.0);
  double best = std::min(f0, f1);
  if (!std::isfinite(lip)) {
    const int n = 200000;
    for (int k = 1; k < n; ++k) best = std::min(best, f(static_cast<double>(k) / n));
    return best;
  }
  struct Iv {
    double t0, t1, f0, f1;
  };
  std::vector<Iv> stack{{0.0, 1.0, f0, f1}};
  while (!stack.empty()) {
    const Iv iv = stack.back();
    stack.pop_back();
    const double h = iv.t1 - iv.t0;
    const double lb = 0.5 * (iv.f0 + iv.f1 - lip * h);
    if (lb >= std::min(best, cutoff) - tol || h < 1e-13) continue;
    const double tm = 0.5 * (iv.t0 + iv.t1);
    const double fm = f(tm);
    best = std::min(best, fm);
    stack.push_back({iv.t0, tm, iv.f0, fm});
    stack.push_back({tm, iv.t1, fm, iv.f1});
  }
  return best;
}

double edge_clearance(const FreeSpace& f, const Edge& e) {
  if (edge_length(e) <= 1e-15) return f.clearance(edge_start(e));
  return std::max(0.0, f.edge_margin(e) + 1.0);
}

double obstacle_clearance(const FreeSpace& f, const PhaseEvaluator& ev, std::size_t r, double tol) {
  const Primitive& p = ev.primitive(r);
  if (const auto* s = std::get_if<Stay>(&p)) return f.clearance(s->anchor);
  if (const auto* ld = std::get_if<LinearDisplace>(&p)) {
    return edge_clearance(f, Segment{ld->anchor, ld->anchor + ld->vector});
  }
  if (const auto* tr = std::get_if<TraversePath>(&p)) {
    if (tr->path.edges().empty()) return f.clearance(tr->path.start());
    double best = kInf;
    for (const Edge& e : tr->path.edges()) best = std::min(best, edge_clearance(f, e));
    return best;
  }
  return lipschitz_min([&](double t) { return f.clearance(ev.position(r, t)); }, ev.speed(r), 1.0, tol);
}

ValidationReport validate_impl(const Instance& inst, const MotionPlan& plan, double tol, bool parallel) {
  const std::size_t m = inst.robots();
  if (inst.targets.size() != m) throw Error(ErrorKind::MalformedPlan, "instance has unequal starts and targets");
  const FreeSpace original = build_free_space(inst.workspace);

  std::vector<PhaseEvaluator> evals;
  evals.reserve(plan.phases.size());
  std::vector<Point> cur = inst.starts;
  for (const Phase& ph : plan.phases) {
    evals.emplace_back(ph, m);
    for (std::size_t r = 0; r < m; ++r) {
      if (distance(evals.back().position(r, 0.0), cur[r]) > kContinuityTol) {
        throw Error(ErrorKind::MalformedPlan, "discontinuous robot position at a phase boundary");
      }
      cur[r] = evals.back().position(r, 1.0);
    }
  }

  ValidationReport rep;
  rep.min_robot_robot = kInf;
  rep.min_robot_obstacle = kInf;
  const double bb_tol = std::min(tol, 1e-7);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) pairs.emplace_back(a, b);
  }

  for (std::size_t k = 0; k < evals.size(); ++k) {
    const PhaseEvaluator& ev = evals[k];
    std::vector<double> pair_d(pairs.size());
    std::vector<double> obs_d(m);
    const long np = static_cast<long>(pairs.size());
    const long nm = static_cast<long>(m);
#pragma omp parallel if (parallel)
    {
#pragma omp for schedule(dynamic) nowait
      for (long q = 0; q < np; ++q) {
        const auto [a, b] = pairs[static_cast<std::size_t>(q)];
        pair_d[static_cast<std::size_t>(q)] = min_pair_distance(ev, a, b, bb_tol);
      }
#pragma omp for schedule(dynamic)
      for (long r = 0; r < nm; ++r) {
        obs_d[static_cast<std::size_t>(r)] = obstacle_clearance(original, ev, static_cast<std::size_t>(r), bb_tol);
      }
    }
    PhaseWorst worst;
    worst.phase = k;
    worst.min_robot_robot = kInf;
    worst.min_robot_obstacle = kInf;
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      if (pair_d[q] < worst.min_robot_robot) {
        worst.min_robot_robot = pair_d[q];
        worst.robot_a = pairs[q].first;
        worst.robot_b = pairs[q].second;
      }
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (obs_d[r] < worst.min_robot_obstacle) {
        worst.min_robot_obstacle = obs_d[r];
        worst.robot_obstacle = r;
      }
    }
    rep.min_robot_robot = std::min(rep.min_robot_robot, worst.min_robot_robot);
    rep.min_robot_obstacle = std::min(rep.min_robot_obstacle, worst.min_robot_obstacle);
    rep.phases.push_back(worst);
  }
  if (evals.empty()) {
    for (std::size_t a = 0; a < m; ++a) {
      rep.min_robot_obstacle = std::min(rep.min_robot_obstacle, original.clearance(cur[a]));
      for (std::size_t b = a + 1; b < m; ++b) rep.min_robot_robot = std::min(rep.min_robot_robot, distance(cur[a], cur[b]));
    }
  }

  if (inst.labeled) {
    rep.endpoint_check = true;
    for (std::size_t r = 0; r < m; ++r) {
      if (distance(cur[r], inst.targets[r]) > tol) rep.endpoint_check = false;
    }
  } else {
    std::vector<char> used(m, 0);
    rep.endpoint_check = true;
    for (std::size_t r = 0; r < m && rep.endpoint_check; ++r) {
      bool found = false;
      for (std::size_t t = 0; t < m; ++t) {
        if (!used[t] && distance(cur[r], inst.targets[t]) <= tol) {
          used[t] = 1;
          found = true;
          break;
        }
      }
      rep.endpoint_check = found;
    }
  }
  rep.ok = rep.endpoint_check && rep.min_robot_robot >= 2.0 - tol && rep.min_robot_obstacle >= 1.0 - tol;
  return rep;
}

}  // namespace

double min_pair_distance(const PhaseEvaluator& ev, std::size_t a, std::size_t b, double tol) {
  if (ev.linear(a) && ev.linear(b)) {
    return min_dist_linear_motions(ev.position(a, 0.0), ev.position(a, 1.0), ev.position(b, 0.0),
                                   ev.position(b, 1.0))
        .dmin;
  }
  const Primitive& pa = ev.primitive(a);
  const Primitive& pb = ev.primitive(b);
  // A traversing robot against a static one: exact closest point on the path.
  if (const auto* tr = std::get_if<TraversePath>(&pa); tr && std::holds_alternative<Stay>(pb)) {
    return min_distance(tr->path, std::get<Stay>(pb).anchor);
  }
  if (const auto* tr = std::get_if<TraversePath>(&pb); tr && std::holds_alternative<Stay>(pa)) {
    return min_distance(tr->path, std::get<Stay>(pa).anchor);
  }
  // A driver against its own clearer stays at max(2, r) by construction of the polar map.
  auto driver_vs_clearer = [&](const Primitive& d, std::size_t d_id, const Primitive& c) -> double {
    const auto* tr = std::get_if<TraversePath>(&d);
    const auto* pc = std::get_if<PolarClearance>(&c);
    if (tr == nullptr || pc == nullptr || pc->driver != d_id) return -1.0;
    return std::max(2.0, min_distance(tr->path, pc->anchor));
  };
  if (const double d = driver_vs_clearer(pa, a, pb); d >= 0.0) return d;
  if (const double d = driver_vs_clearer(pb, b, pa); d >= 0.0) return d;
  return lipschitz_min([&](double t) { return distance(ev.position(a, t), ev.position(b, t)); },
                       ev.speed(a) + ev.speed(b), 2.0, tol);
}

ValidationReport validate_plan(const Instance& inst, const MotionPlan& plan, double tol) {
  return validate_impl(inst, plan, tol, true);
}

ValidationReport validate_plan_serial(const Instance& inst, const MotionPlan& plan, double tol) {
  return validate_impl(inst, plan, tol, false);
}

double clearance_curve_length(const Path& driver, Point anchor) {
  const double total = driver.length();
  if (total <= 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& [w0, w1] : proximity_windows(driver, anchor)) {
    // Split at driver joints so each piece is smooth.
    std::vector<double> cuts{w0, w1};
    for (std::size_t k = 1; k < driver.edges().size(); ++k) {
      const double wk = driver.edge_offset(k) / total;
      if (wk > w0 && wk < w1) cuts.push_back(wk);
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double a = cuts[c];
      const double b = cuts[c + 1];
      auto polyline = [&](int n) {
        double len = 0.0;
        Point prev = clearance_position(anchor, driver.point_at(a));
        for (int i = 1; i <= n; ++i) {
          const Point q = clearance_position(anchor, driver.point_at(a + (b - a) * i / n));
          len += distance(prev, q);
          prev = q;
        }
        return len;
      };
      int n = 1000;
      double coarse = polyline(n);
      double fine = polyline(2 * n);
      double est = fine + (fine - coarse) / 3.0;
      while (n < (1 << 20)) {
        n *= 2;
        coarse = fine;
        fine = polyline(2 * n);
        const double next = fine + (fine - coarse) / 3.0;
        const bool done = std::abs(next - est) <= 1e-10 * std::max(1.0, next);
        est = next;
        if (done) break;
      }
      sum += est;
    }
  }
  return sum;
}

PlanLength plan_total_length(const MotionPlan& plan) {
  PlanLength out;
  for (const Phase& ph : plan.phases) {
    for (const Motion& mo : ph.motions) {
      if (const auto* tr = std::get_if<TraversePath>(&mo.primitive)) {
        out.driver += tr->path.length();
      } else if (const auto* ld = std::get_if<LinearDisplace>(&mo.primitive)) {
        out.auxiliary += norm(ld->vector);
      } else if (const auto* pc = std::get_if<PolarClearance>(&mo.primitive)) {
        const auto it = std::find_if(ph.motions.begin(), ph.motions.end(),
                                     [&](const Motion& x) { return x.robot == pc->driver; });
        if (it == ph.motions.end() || !std::holds_alternative<TraversePath>(it->primitive)) {
          throw Error(ErrorKind::MalformedPlan, "polar clearance without a traversing driver");
        }
        out.auxiliary += clearance_curve_length(std::get<TraversePath>(it->primitive).path, pc->anchor);
      }
    }
  }
  out.total = out.driver + out.auxiliary;
  return out;
}

}  // namespace mrmp
