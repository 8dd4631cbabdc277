#include <doctest.h>

#include <cmath>

#include "mrmp/errors.hpp"
#include "mrmp/eps_planner.hpp"
#include "mrmp/fixtures.hpp"
#include "oracles.hpp"

using namespace mrmp;

namespace {

double min_clearance(const Instance& inst) {
  double w = 1e9;
  for (const Point p : inst.starts) w = std::min(w, oracle::clearance(inst.workspace, p));
  for (const Point p : inst.targets) w = std::min(w, oracle::clearance(inst.workspace, p));
  return w;
}

}  // namespace

TEST_CASE("hourglass") {
  const Instance inst = hourglass(0.05);
  CHECK(inst.robots() == 2);
  CHECK_FALSE(inst.labeled);
  CHECK(min_clearance(inst) == doctest::Approx(1.45).epsilon(1e-9));
  CHECK(measure_separation(inst).omega == doctest::Approx(1.45).epsilon(1e-9));
  const FreeSpace f = build_free_space(inst.workspace);
  const auto comps = components_with_counts(f, inst.starts, inst.targets);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].starts == 2);
  CHECK(comps[0].targets == 2);
}

TEST_CASE("strip") {
  for (const double e : {0.05, 0.1}) {
    const Instance inst = strip(e);
    CHECK(inst.labeled);
    CHECK(min_clearance(inst) == doctest::Approx(2.0 - e).epsilon(1e-12));
    // t1, s2, s1, t2 from left to right.
    CHECK(inst.targets[0].x < inst.starts[1].x);
    CHECK(inst.starts[1].x < inst.starts[0].x);
    CHECK(inst.starts[0].x < inst.targets[1].x);
    for (const double eps : {0.0, 0.3544, 2.0 / 3.0}) CHECK_FALSE(check_constraints(inst, eps).ok());
  }
}

TEST_CASE("monotone lower-bound fixtures") {
  const Instance a = monotone_lb();
  const Instance b = weakly_monotone_lb();
  CHECK(a.robots() == 2);
  CHECK(a.targets[0].y == doctest::Approx(-2.0 + 1e-3));
  CHECK(b.targets[0].y == doctest::Approx(-2.0 + (15.0 - 6.0 * std::sqrt(3.0)) / 13.0));
  for (const Instance* inst : {&a, &b}) {
    for (const Point p : inst->starts) CHECK(oracle::clearance(inst->workspace, p) >= 1.0);
    for (const Point p : inst->targets) CHECK(oracle::clearance(inst->workspace, p) >= 1.0);
  }
}

TEST_CASE("random instances") {
  RandomSpec s;
  s.robots = 4;
  s.rho = 4.0;
  s.omega = 1.7;
  s.seed = 7;
  const Instance inst = random_instance(s);
  CHECK(inst.robots() == 4);
  CHECK(check_constraints(inst, 0.0).ok());
  CHECK(min_clearance(inst) >= 1.7);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i != j) {
        CHECK(oracle::dist(inst.starts[i], inst.starts[j]) >= 4.0);
        CHECK(oracle::dist(inst.targets[i], inst.targets[j]) >= 4.0);
      }
      CHECK(oracle::dist(inst.starts[i], inst.targets[j]) >= 4.0);
    }
  }

  SUBCASE("deterministic in the seed") {
    const Instance again = random_instance(s);
    CHECK(again.workspace.outer == inst.workspace.outer);
    CHECK(again.starts == inst.starts);
    CHECK(again.targets == inst.targets);
    s.seed = 8;
    CHECK(random_instance(s).starts != inst.starts);
  }
  SUBCASE("holes and balanced components") {
    s.holes = 3;
    s.notches = 4;
    const Instance h = random_instance(s);
    CHECK(h.workspace.holes.size() == 3);
    const FreeSpace f = build_free_space(h.workspace);
    for (const ComponentCount& c : components_with_counts(f, h.starts, h.targets)) CHECK(c.starts == c.targets);
  }
  SUBCASE("impossible request") {
    // The box is far too small for six pairs 10 apart.
    s.robots = 6;
    s.rho = 10.0;
    s.density = 0.05;
    s.max_attempts = 3;
    try {
      random_instance(s);
      FAIL("expected GenerationFailed");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::GenerationFailed);
    }
  }
}

TEST_CASE("fixture dispatch") {
  FixtureSpec spec;
  spec.name = "strip";
  spec.eps_fig = 0.1;
  CHECK(gen_fixture(spec).starts == strip(0.1).starts);
  spec.name = "nope";
  CHECK_THROWS_AS(gen_fixture(spec), Error);
}
