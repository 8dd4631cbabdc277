#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "mrmp/assignment.hpp"
#include "mrmp/errors.hpp"
#include "oracles.hpp"

using namespace mrmp;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Workspace square(double s) { return Workspace{{{0, 0}, {s, 0}, {s, s}, {0, s}}, {}, {}}; }

// Lexicographically smallest optimal permutation by enumeration.
std::vector<std::size_t> brute_force_argmin(const CostMatrix& c) {
  std::vector<std::size_t> perm(c.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> best;
  double best_total = kInf;
  do {
    double t = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) t += c[i][perm[i]];
    if (t < best_total) {
      best_total = t;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("cost matrix entries") {
  const FreeSpace f = build_free_space(square(20));
  SUBCASE("single visible pair") {
    const std::vector<Point> s{{3, 3}};
    const std::vector<Point> t{{6, 7}};
    const CostMatrix c = geodesic_cost_matrix(f, s, t);
    REQUIRE(c.size() == 1);
    CHECK(c[0][0] == doctest::Approx(5.0));
  }
  SUBCASE("convex room gives euclidean distances") {
    const std::vector<Point> s{{2, 2}, {10, 3}};
    const std::vector<Point> t{{15, 15}, {4, 12}};
    const CostMatrix c = geodesic_cost_matrix(f, s, t);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) CHECK(c[i][j] == doctest::Approx(oracle::dist(s[i], t[j])));
    }
  }
  SUBCASE("disconnected pair is infinite") {
    // Two rooms joined by a corridor of width 1.5: no unit disk fits through.
    const Workspace w{{{0, 0}, {5, 0}, {5, 2}, {6, 2}, {6, 0}, {11, 0}, {11, 5}, {6, 5}, {6, 3.5}, {5, 3.5}, {5, 5}, {0, 5}},
                      {},
                      {}};
    const FreeSpace g = build_free_space(w);
    const std::vector<Point> s{{2, 2.5}};
    const std::vector<Point> t{{9, 2.5}};
    CHECK(std::isinf(geodesic_cost_matrix(g, s, t)[0][0]));
  }
  SUBCASE("outside the free space") {
    const std::vector<Point> s{{0.5, 5}};
    const std::vector<Point> t{{5, 5}};
    CHECK_THROWS_AS(geodesic_cost_matrix(f, s, t), Error);
  }
}

TEST_CASE("parallel and serial cost matrices agree") {
  const Workspace w{{{0, 0}, {14, 0}, {14, 14}, {0, 14}}, {{{5, 5}, {5, 8}, {8, 8}, {8, 5}}}, {}};
  const FreeSpace f = build_free_space(w);
  const GeodesicGraph g(f);
  const std::vector<Point> s{{2, 2}, {12, 2}, {2, 12}, {12, 12}, {6.5, 2}};
  const std::vector<Point> t{{6.5, 12}, {2, 6.5}, {12, 6.5}, {3, 3}, {11, 11}};
  CHECK(geodesic_cost_matrix(g, s, t) == geodesic_cost_matrix_serial(g, s, t));
}

TEST_CASE("optimal assignment examples") {
  SUBCASE("diagonal") {
    const Matching m = optimal_assignment({{1, 10}, {10, 1}});
    CHECK(m.target_of == std::vector<std::size_t>{0, 1});
    CHECK(m.total == 2.0);
  }
  SUBCASE("tie resolved lexicographically") {
    const Matching m = optimal_assignment({{1, 2}, {3, 4}});
    CHECK(m.total == 5.0);
    CHECK(m.target_of == std::vector<std::size_t>{0, 1});
  }
  SUBCASE("all-equal matrix picks the identity") {
    const Matching m = optimal_assignment(CostMatrix(4, std::vector<double>(4, 3.0)));
    CHECK(m.target_of == std::vector<std::size_t>{0, 1, 2, 3});
  }
  SUBCASE("infinite entries are avoided") {
    const Matching m = optimal_assignment({{kInf, 1}, {1, kInf}});
    CHECK(m.target_of == std::vector<std::size_t>{1, 0});
    CHECK(m.total == 2.0);
  }
  SUBCASE("no finite perfect matching") {
    CHECK_THROWS_AS(optimal_assignment({{1, kInf}, {2, kInf}}), Error);
    try {
      optimal_assignment({{kInf}});
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InfeasibleMatching);
    }
  }
}

TEST_CASE("Hungarian equals brute force on random matrices") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> cost(0, 30);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(trial % 7);
    CostMatrix c(m, std::vector<double>(m));
    for (auto& row : c) {
      for (double& v : row) v = cost(rng);
    }
    const Matching got = optimal_assignment(c);
    CHECK(got.total == oracle::brute_force_assignment(c));
    CHECK(got.target_of == brute_force_argmin(c));
  }
}

TEST_CASE("5x5 integer matrix against all 120 permutations") {
  const CostMatrix c{{7, 3, 9, 4, 8}, {2, 6, 5, 9, 1}, {8, 8, 2, 7, 3}, {5, 1, 6, 3, 9}, {4, 7, 8, 2, 6}};
  CHECK(optimal_assignment(c).total == oracle::brute_force_assignment(c));
}

TEST_CASE("total is invariant under row and column permutations") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> cost(0.0, 10.0);
  const std::size_t m = 6;
  CostMatrix c(m, std::vector<double>(m));
  for (auto& row : c) {
    for (double& v : row) v = cost(rng);
  }
  std::vector<std::size_t> rp(m);
  std::vector<std::size_t> cp(m);
  std::iota(rp.begin(), rp.end(), 0);
  std::iota(cp.begin(), cp.end(), 0);
  std::shuffle(rp.begin(), rp.end(), rng);
  std::shuffle(cp.begin(), cp.end(), rng);
  CostMatrix d(m, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) d[i][j] = c[rp[i]][cp[j]];
  }
  const Matching a = optimal_assignment(c);
  const Matching b = optimal_assignment(d);
  CHECK(a.total == doctest::Approx(b.total).epsilon(1e-12));
  // The permuted matching maps back to the original one.
  for (std::size_t i = 0; i < m; ++i) CHECK(cp[b.target_of[i]] == a.target_of[rp[i]]);
}

TEST_CASE("assignment path sets") {
  const FreeSpace f = build_free_space(square(20));
  const GeodesicGraph g(f);
  const std::vector<Point> s{{3, 3}, {17, 3}};
  const std::vector<Point> t{{17, 6}, {3, 6}};
  const AssignmentPathSet un = assignment_path_set(g, s, t);
  REQUIRE(un.pairs.size() == 2);
  CHECK(un.pairs[0].target == 1);
  CHECK(un.pairs[1].target == 0);
  CHECK(un.total_length == doctest::Approx(6.0));
  double sum = 0.0;
  for (const AssignedPath& p : un.pairs) {
    sum += p.path.length();
    CHECK(p.path.start() == s[p.start]);
    CHECK(oracle::dist(p.path.end(), t[p.target]) < 1e-12);
  }
  CHECK(sum == doctest::Approx(un.total_length));

  const AssignmentPathSet lab = labeled_path_set(g, s, t);
  CHECK(lab.pairs[0].target == 0);
  CHECK(lab.total_length == doctest::Approx(2.0 * std::hypot(14.0, 3.0)));
  CHECK(lab.total_length >= un.total_length);
}
