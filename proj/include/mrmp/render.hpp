#pragma once

#include <string>

#include "mrmp/motion_plan.hpp"

namespace mrmp {

struct RenderOptions {
  bool snapshots = false;  // robot disks at the end of every phase
  double scale = 20.0;     // pixels per unit
};

/// Deterministic SVG of the workspace, the free-space boundary, start and target
/// disks and, when a plan is given, one path per traversal with its trace, plus
/// displacement arrows for corridor openings.
std::string render_svg(const Instance& inst, const MotionPlan* plan = nullptr, const RenderOptions& opt = {});

}  // namespace mrmp
