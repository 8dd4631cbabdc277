#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "corpus.hpp"
#include "mrmp/eps_planner.hpp"
#include "mrmp/errors.hpp"
#include "mrmp/validator.hpp"
#include "oracles.hpp"

using namespace mrmp;

namespace {

const double kS3 = std::sqrt(3.0);

Path straight(Point a, Point b) { return Path({Segment{a, b}}); }

Instance room(std::vector<Point> s, std::vector<Point> t, double side = 30.0) {
  Instance inst;
  inst.workspace.outer = {{0, 0}, {side, 0}, {side, side}, {0, side}};
  inst.starts = std::move(s);
  inst.targets = std::move(t);
  return inst;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::MalformedInput;
}

}  // namespace

TEST_CASE("constraint closed forms") {
  CHECK(required_omega_c1(0.0) == doctest::Approx(std::sqrt(13.0 - 6.0 * kS3)).epsilon(1e-12));
  CHECK(required_omega_c1(0.0) == doctest::Approx(1.6139).epsilon(1e-3));
  CHECK(required_omega_c1(1.0) == doctest::Approx(std::sqrt((2.0 - kS3) * (2.0 - kS3) + 1.0)).epsilon(1e-12));
  CHECK(required_omega_c1(1.0) == doctest::Approx(1.03528).epsilon(1e-5));
  CHECK(omega_bound(2.0 / 3.0) == doctest::Approx(5.0 / 3.0));
  CHECK(rho_bound(2.0 / 3.0) == doctest::Approx(8.0 / 3.0));
  CHECK(required_rho_c2(0.0) == doctest::Approx(std::sqrt(0.25 + std::pow(3.0 - kS3 / 2.0, 2))));
  // C2 is implied by C3 and C5 over the whole range.
  for (double e = 0.0; e <= 1.0; e += 0.01) CHECK(required_rho_c2(e) <= rho_bound(e) + 1e-12);
}

TEST_CASE("check_constraints reports each constraint") {
  SUBCASE("comfortable instance passes at eps = 0") {
    const Instance inst = room({{5, 5}, {15, 5}}, {{5, 25}, {15, 25}});
    const ConstraintReport r = check_constraints(inst, 0.0);
    CHECK(r.ok());
    CHECK(r.separation.omega == doctest::Approx(5.0));
    CHECK(r.separation.rho() == doctest::Approx(10.0));
  }
  SUBCASE("rho 3 fails C3 at eps = 0 but passes at eps = 2/3") {
    const Instance inst = room({{5, 5}, {8, 5}}, {{5, 25}, {8, 25}});
    const ConstraintReport r0 = check_constraints(inst, 0.0);
    CHECK_FALSE(r0.ok());
    CHECK_FALSE(r0.constraints[2].satisfied);
    CHECK(r0.constraints[2].required == doctest::Approx(4.0));
    CHECK(r0.constraints[2].measured == doctest::Approx(3.0));
    CHECK(check_constraints(inst, 2.0 / 3.0).ok());
  }
  SUBCASE("omega below C1") {
    const Instance inst = room({{1.5, 10}}, {{20, 20}});
    const ConstraintReport r = check_constraints(inst, 0.0);
    CHECK_FALSE(r.constraints[0].satisfied);
    CHECK(r.constraints[3].satisfied);
  }
}

TEST_CASE("choose_epsilon rows") {
  const EpsilonChoice mono = choose_epsilon(EpsilonGoal::Monotone);
  CHECK(mono.epsilon == 0.0);
  CHECK(mono.omega_bound == doctest::Approx(std::sqrt(13.0 - 6.0 * kS3)));
  CHECK(mono.rho_bound == 4.0);
  const EpsilonChoice mo = choose_epsilon(EpsilonGoal::MinOmega);
  CHECK(mo.epsilon == doctest::Approx((15.0 - 6.0 * kS3) / 13.0));
  CHECK(mo.epsilon == doctest::Approx(0.35444).epsilon(1e-5));
  CHECK(mo.omega_bound == doctest::Approx(1.35444).epsilon(1e-5));
  CHECK(mo.rho_bound == doctest::Approx(3.29112).epsilon(1e-5));
  // At the optimum C1 and C4 meet.
  CHECK(required_omega_c1(mo.epsilon) == doctest::Approx(required_omega_c4(mo.epsilon)).epsilon(1e-12));
  const EpsilonChoice mr = choose_epsilon(EpsilonGoal::MinRho);
  CHECK(mr.epsilon == doctest::Approx(2.0 / 3.0));
  CHECK(mr.omega_bound == doctest::Approx(5.0 / 3.0));
  CHECK(mr.rho_bound == doctest::Approx(8.0 / 3.0));
}

TEST_CASE("interrupting target search") {
  const FreeSpace f = build_free_space(room({}, {}).workspace);
  const GeodesicGraph g(f);
  SUBCASE("single path") {
    const std::vector<Point> s{{5, 5}};
    const std::vector<Point> t{{25, 5}};
    CHECK(find_interrupting_target(assignment_path_set(g, s, t), 0.0) == 0);
  }
  SUBCASE("parallel paths far apart") {
    const std::vector<Point> s{{5, 5}, {5, 15}};
    const std::vector<Point> t{{25, 5}, {25, 15}};
    CHECK(find_interrupting_target(assignment_path_set(g, s, t), 0.0) == 0);
  }
  SUBCASE("target 0 lies next to the other path") {
    const double eps = 0.2;
    // t0 sits 2 - eps - 0.05 above the path s1 -> t1.
    const double gap = 2.0 - eps - 0.05;
    const std::vector<Point> s{{15, 25}, {5, 10}};
    const std::vector<Point> t{{15, 10 + gap}, {25, 10}};
    const AssignmentPathSet gamma = labeled_path_set(g, s, t);
    CHECK(classify_position(gamma.pairs[1].path, t[0], eps).kind == BlockKind::Blocking);
    CHECK(find_interrupting_target(gamma, eps) == 1);
  }
  SUBCASE("mutual blocking has no interrupting target") {
    const std::vector<Point> s{{5, 10}, {25, 11}};
    const std::vector<Point> t{{24, 10}, {6, 11}};
    const AssignmentPathSet gamma = labeled_path_set(g, s, t);
    CHECK(kind_of([&] { find_interrupting_target(gamma, 0.0); }) == ErrorKind::NoInterruptingTarget);
  }
}

TEST_CASE("switch paths") {
  SUBCASE("straight blocked path") {
    const Path gi = straight({0, 0}, {10, 0});
    const Point sk{5, 1.8};
    const Path gk = straight(sk, {5, 10});
    const SwitchPaths sw = build_switch_paths(gi, gk, sk, 0.5, 0.0);
    CHECK(sw.connector.length() == doctest::Approx(1.8));
    CHECK(sw.gamma_i.length() + sw.gamma_k.length() == doctest::Approx(gi.length() + gk.length() + 3.6));
    CHECK(sw.gamma_k.start() == sk);
    CHECK(oracle::dist(sw.gamma_k.end(), {10, 0}) < 1e-12);
    CHECK(oracle::dist(sw.gamma_i.end(), {5, 10}) < 1e-12);
  }
  SUBCASE("blocker on the path") {
    const Path gi = straight({0, 0}, {10, 0});
    const Point sk{4, 0};
    const Path gk = straight(sk, {4, 10});
    const SwitchPaths sw = build_switch_paths(gi, gk, sk, 0.4, 0.0);
    CHECK(sw.connector.length() == doctest::Approx(0.0));
    CHECK(sw.gamma_i.length() + sw.gamma_k.length() == doctest::Approx(gi.length() + gk.length()));
    CHECK(sw.gamma_k.length() == doctest::Approx(6.0));
  }
  SUBCASE("blocker too far") {
    const Path gi = straight({0, 0}, {10, 0});
    const Point sk{5, 1.9};
    const Path gk = straight(sk, {5, 10});
    CHECK(kind_of([&] { build_switch_paths(gi, gk, sk, 0.5, 0.1); }) == ErrorKind::InvalidSwitch);
  }
}

TEST_CASE("clearance path formula") {
  const Path driver = straight({-3, 0}, {3, 0});
  const Point p{0, 1.5};
  const ClearancePath cp = build_clearance_path(driver, p, 0.5);
  REQUIRE(cp.windows.size() == 1);
  const Point q = cp.at(driver, 0.5);
  CHECK(q.x == doctest::Approx(0.0));
  CHECK(q.y == doctest::Approx(2.0));
  CHECK(oracle::dist(q, p) == doctest::Approx(0.5));
  CHECK(oracle::dist(q, driver.point_at(0.5)) == doctest::Approx(2.0));
  // The window is where the driver is within 2 of p: |x| < sqrt(4 - 2.25).
  const double half = std::sqrt(4.0 - 2.25);
  CHECK(cp.windows[0].first == doctest::Approx((3.0 - half) / 6.0));
  CHECK(cp.windows[0].second == doctest::Approx((3.0 + half) / 6.0));
  CHECK(cp.at(driver, 0.0) == p);
  CHECK(cp.at(driver, 1.0) == p);

  SUBCASE("far position never moves") {
    const ClearancePath far = build_clearance_path(driver, {0, 2.5}, 0.5);
    CHECK(far.windows.empty());
    for (int k = 0; k <= 10; ++k) CHECK(far.at(driver, k / 10.0) == Point{0, 2.5});
  }
  SUBCASE("blocking position is rejected") {
    CHECK(kind_of([&] { build_clearance_path(driver, {0, 1.0}, 0.5); }) == ErrorKind::NotInterrupting);
  }
  SUBCASE("windowed clearance length does not exceed the driver's") {
    double windowed = 0.0;
    for (const auto& [a, b] : cp.windows) windowed += driver.length_between(a, b);
    CHECK(clearance_curve_length(driver, p) <= windowed + 1e-9);
  }
}

TEST_CASE("plan_eps small instances") {
  PlannerConfig cfg;
  SUBCASE("one robot") {
    const Instance inst = room({{5, 5}}, {{20, 12}});
    const EpsPlanResult r = plan_eps(inst, cfg);
    REQUIRE(r.plan.phases.size() == 1);
    CHECK(plan_total_length(r.plan).total == doctest::Approx(oracle::dist({5, 5}, {20, 12})));
  }
  SUBCASE("two far pairs") {
    const Instance inst = room({{5, 5}, {5, 25}}, {{25, 5}, {25, 25}});
    const EpsPlanResult r = plan_eps(inst, cfg);
    CHECK(r.plan.phases.size() == 2);
    const PlanLength len = plan_total_length(r.plan);
    CHECK(len.total == doctest::Approx(40.0));
    CHECK(len.auxiliary == 0.0);
    CHECK(validate_plan(inst, r.plan).ok);
  }
  SUBCASE("errors") {
    CHECK(kind_of([&] { plan_eps(room({{1.2, 5}}, {{20, 20}}), cfg); }) == ErrorKind::ConstraintViolation);
    PlannerConfig bad;
    bad.epsilon = 1.5;
    CHECK(kind_of([&] { plan_eps(room({{5, 5}}, {{20, 20}}), bad); }) == ErrorKind::ConstraintViolation);
    // Two rooms joined by a corridor too narrow for a robot.
    Instance split;
    split.workspace.outer = {{0, 0}, {10, 0}, {10, 4}, {11, 4}, {11, 0}, {21, 0}, {21, 10}, {11, 10}, {11, 5.5}, {10, 5.5}, {10, 10}, {0, 10}};
    split.starts = {{3, 3}, {7, 7}};
    split.targets = {{15, 5}, {3, 7.5}};
    CHECK(kind_of([&] { plan_eps(split, cfg); }) == ErrorKind::InfeasibleInstance);
  }
}

TEST_CASE("plan_eps properties on random instances") {
  for (double eps : corpus::kCanonicalEps) {
    for (const Instance& inst : corpus::eps_instances(eps, 8)) {
      PlannerConfig cfg;
      cfg.epsilon = eps;
      const EpsPlanResult r = plan_eps(inst, cfg);
      const std::size_t m = inst.robots();
      CHECK(r.plan.phases.size() == m);
      CHECK(validate_plan(inst, r.plan).ok);
      const PlanLength len = plan_total_length(r.plan);
      CHECK(len.auxiliary <= 6.0 * len.driver + 1e-9);
      if (eps == 0.0) {
        CHECK(len.auxiliary == 0.0);
        CHECK(len.total <= r.first_assignment_total + 4.0 * m + 1e-6);
      }
      std::vector<Point> settled;
      std::vector<Point> anchors = inst.starts;
      for (std::size_t k = 0; k < m; ++k) {
        const Phase& ph = r.plan.phases[k];
        const IterationInfo& it = r.iterations[k];
        const PhaseEvaluator ev(ph, m);
        std::size_t drivers = 0;
        for (std::size_t robot = 0; robot < m; ++robot) {
          if (std::holds_alternative<TraversePath>(ev.primitive(robot))) {
            ++drivers;
            continue;
          }
          // Weak monotonicity: everyone else stays within eps of its anchor.
          for (int s = 0; s <= 100; ++s) CHECK(oracle::dist(ev.position(robot, s / 100.0), anchors[robot]) <= eps + 1e-9);
        }
        CHECK(drivers == 1);
        // The driver path is not blocked by any occupied position at phase start.
        for (std::size_t robot = 0; robot < m; ++robot) {
          if (robot != it.driver) CHECK_FALSE(blocks(it.driver_path, anchors[robot], eps));
        }
        // Settled targets keep their distance from later drivers.
        for (const Point& t : settled) CHECK(min_distance(it.driver_path, t) >= 2.0 - eps - 1e-9);
        anchors[it.driver] = inst.targets[it.target];
        settled.push_back(inst.targets[it.target]);
      }
    }
  }
}
