#pragma once

#include <cstdint>
#include <string>

#include "mrmp/motion_plan.hpp"

namespace mrmp {

/// Two robots above a passage of width `passage_width` between v1 = (-1, 0) and
/// v2 = (1, 0); the upper room is bounded by radius 4 - eps_fig arcs. Unlabeled,
/// obstacle separation 1.5 - eps_fig.
Instance hourglass(double eps_fig, double passage_width = 2.0);

/// Labeled strip of width 4 - eps_fig with t1, s2, s1, t2 in that order, every
/// position at distance 2 - eps_fig from the boundary.
Instance strip(double eps_fig);

/// Tooth tip v1 = (0, 1) with v2, v3 on the radius 2 circle around v1, rotated
/// `delta` radians below (±1, 1 - √3). t1 = (0, -2 + t_offset).
Instance monotone_lb(double delta = 1e-3, double t_offset = 1e-3);
/// monotone_lb with t1 = (0, -2 + ε) for ε = (15 - 6√3) / 13.
Instance weakly_monotone_lb(double delta = 1e-3);

struct RandomSpec {
  std::size_t robots = 4;
  double rho = 4.0;
  double omega = 1.7;
  std::uint64_t seed = 1;
  int holes = 0;       // number of square holes
  int notches = 2;     // rectangular notches cut into the outer boundary
  bool labeled = false;
  double density = 1.15;  // side length factor; smaller packs positions tighter
  int max_attempts = 200;
};

/// Rectangle with notches and optional holes; positions are rejection-sampled
/// until every position has obstacle distance >= omega, pairwise distance >= rho
/// and every free-space component holds as many starts as targets.
/// Deterministic in the seed. Throws GenerationFailed.
Instance random_instance(const RandomSpec& spec);

struct FixtureSpec {
  std::string name = "random";  // hourglass | strip | monotone_lb | weakly_monotone_lb | random
  double eps_fig = 0.05;
  double delta = 1e-3;
  RandomSpec random;
};

/// Dispatches on the fixture name. Throws GenerationFailed for unknown names.
Instance gen_fixture(const FixtureSpec& spec);

}  // namespace mrmp
