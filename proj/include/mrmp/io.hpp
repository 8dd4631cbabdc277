#pragma once

#include <string>

#include "json.hpp"

#include "mrmp/motion_plan.hpp"

namespace mrmp {

using Json = nlohmann::json;

Json to_json(const Instance& inst);
Json to_json(const MotionPlan& plan);
Json to_json(const Path& path);

/// Parsers throw Error(MalformedInput) on schema violations.
Instance instance_from_json(const Json& j);
MotionPlan plan_from_json(const Json& j);
Path path_from_json(const Json& j);

Instance read_instance(const std::string& file);
MotionPlan read_plan(const std::string& file);
void write_json(const std::string& file, const Json& j);

std::string to_string(PhaseKind kind);
PhaseKind phase_kind_from_string(const std::string& s);

}  // namespace mrmp
