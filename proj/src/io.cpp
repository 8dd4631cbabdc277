#include "mrmp/io.hpp"

#include <fstream>

#include "mrmp/errors.hpp"

namespace mrmp {

namespace {

Json pt(Point p) { return Json::array({p.x, p.y}); }

Point get_point(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorKind::MalformedInput, "expected [x, y], got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Point> get_points(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::MalformedInput, "expected a point list");
  std::vector<Point> out;
  for (const Json& p : j) out.push_back(get_point(p));
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::MalformedInput, std::string("missing field ") + key);
  return j.at(key);
}

double get_number(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) throw Error(ErrorKind::MalformedInput, std::string(key) + " is not a number");
  return v.get<double>();
}

Json edge_json(const Edge& e) {
  if (const auto* s = std::get_if<Segment>(&e)) return {{"type", "segment"}, {"a", pt(s->a)}, {"b", pt(s->b)}};
  const Arc& a = std::get<Arc>(e);
  return {{"type", "arc"},
          {"center", pt(a.center)},
          {"radius", a.radius},
          {"start_angle", a.start_angle},
          {"sweep", a.sweep},
          {"orientation", a.orientation == Orientation::CCW ? "ccw" : "cw"}};
}

Edge edge_from(const Json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "segment") return Segment{get_point(field(j, "a")), get_point(field(j, "b"))};
  if (type == "arc") {
    Arc a;
    a.center = get_point(field(j, "center"));
    a.radius = get_number(j, "radius");
    a.start_angle = get_number(j, "start_angle");
    a.sweep = get_number(j, "sweep");
    const std::string o = field(j, "orientation").get<std::string>();
    if (o != "ccw" && o != "cw") throw Error(ErrorKind::MalformedInput, "orientation must be ccw or cw");
    a.orientation = o == "ccw" ? Orientation::CCW : Orientation::CW;
    return a;
  }
  throw Error(ErrorKind::MalformedInput, "unknown edge type " + type);
}

Json primitive_json(const Primitive& p) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Stay>) {
          return {{"tag", "stay"}, {"anchor", pt(v.anchor)}};
        } else if constexpr (std::is_same_v<T, TraversePath>) {
          return {{"tag", "traverse_path"}, {"path", to_json(v.path)}};
        } else if constexpr (std::is_same_v<T, PolarClearance>) {
          return {{"tag", "polar_clearance"}, {"anchor", pt(v.anchor)}, {"driver", v.driver}};
        } else {
          return {{"tag", "linear_displace"}, {"anchor", pt(v.anchor)}, {"vector", pt(v.vector)}};
        }
      },
      p);
}

Primitive primitive_from(const Json& j) {
  const std::string tag = field(j, "tag").get<std::string>();
  if (tag == "stay") return Stay{get_point(field(j, "anchor"))};
  if (tag == "traverse_path") return TraversePath{path_from_json(field(j, "path"))};
  if (tag == "polar_clearance") {
    const Json& d = field(j, "driver");
    if (!d.is_number_unsigned()) throw Error(ErrorKind::MalformedInput, "driver must be a robot index");
    return PolarClearance{get_point(field(j, "anchor")), d.get<std::size_t>()};
  }
  if (tag == "linear_displace") return LinearDisplace{get_point(field(j, "anchor")), get_point(field(j, "vector"))};
  throw Error(ErrorKind::MalformedInput, "unknown primitive tag " + tag);
}

}  // namespace

std::string to_string(PhaseKind kind) {
  switch (kind) {
    case PhaseKind::Eps: return "eps";
    case PhaseKind::Open: return "open";
    case PhaseKind::Traverse: return "traverse";
    case PhaseKind::Close: return "close";
  }
  return "eps";
}

PhaseKind phase_kind_from_string(const std::string& s) {
  if (s == "eps") return PhaseKind::Eps;
  if (s == "open") return PhaseKind::Open;
  if (s == "traverse") return PhaseKind::Traverse;
  if (s == "close") return PhaseKind::Close;
  throw Error(ErrorKind::MalformedInput, "unknown phase kind " + s);
}

Json to_json(const Instance& inst) {
  Json holes = Json::array();
  for (const Polygon& h : inst.workspace.holes) {
    Json ring = Json::array();
    for (Point p : h) ring.push_back(pt(p));
    holes.push_back(ring);
  }
  Json disks = Json::array();
  for (const Circle& c : inst.workspace.carved_disks) disks.push_back({{"center", pt(c.center)}, {"radius", c.radius}});
  Json outer = Json::array();
  for (Point p : inst.workspace.outer) outer.push_back(pt(p));
  Json starts = Json::array();
  for (Point p : inst.starts) starts.push_back(pt(p));
  Json targets = Json::array();
  for (Point p : inst.targets) targets.push_back(pt(p));
  return {{"workspace", {{"outer", outer}, {"holes", holes}, {"carved_disks", disks}}},
          {"starts", starts},
          {"targets", targets},
          {"labeled", inst.labeled}};
}

Instance instance_from_json(const Json& j) {
  Instance inst;
  const Json& w = field(j, "workspace");
  inst.workspace.outer = get_points(field(w, "outer"));
  if (w.contains("holes")) {
    for (const Json& h : w.at("holes")) inst.workspace.holes.push_back(get_points(h));
  }
  if (w.contains("carved_disks")) {
    for (const Json& d : w.at("carved_disks")) inst.workspace.carved_disks.push_back({get_point(field(d, "center")), get_number(d, "radius")});
  }
  inst.starts = get_points(field(j, "starts"));
  inst.targets = get_points(field(j, "targets"));
  if (j.contains("labeled")) {
    if (!j.at("labeled").is_boolean()) throw Error(ErrorKind::MalformedInput, "labeled must be a boolean");
    inst.labeled = j.at("labeled").get<bool>();
  }
  if (inst.starts.size() != inst.targets.size()) {
    throw Error(ErrorKind::MalformedInput, "starts and targets differ in number");
  }
  if (inst.workspace.outer.size() < 3) throw Error(ErrorKind::MalformedInput, "outer boundary needs three vertices");
  return inst;
}

Json to_json(const Path& path) {
  Json edges = Json::array();
  for (const Edge& e : path.edges()) edges.push_back(edge_json(e));
  return {{"start", pt(path.start())}, {"edges", edges}};
}

Path path_from_json(const Json& j) {
  const Point start = get_point(field(j, "start"));
  std::vector<Edge> edges;
  for (const Json& e : field(j, "edges")) edges.push_back(edge_from(e));
  if (edges.empty()) return Path(start);
  return Path(std::move(edges));
}

Json to_json(const MotionPlan& plan) {
  Json phases = Json::array();
  for (const Phase& ph : plan.phases) {
    Json motions = Json::array();
    for (const Motion& m : ph.motions) motions.push_back({{"robot", m.robot}, {"primitive", primitive_json(m.primitive)}});
    phases.push_back({{"kind", to_string(ph.kind)}, {"motions", motions}});
  }
  return {{"phases", phases}};
}

MotionPlan plan_from_json(const Json& j) {
  MotionPlan plan;
  for (const Json& ph : field(j, "phases")) {
    Phase phase;
    phase.kind = phase_kind_from_string(field(ph, "kind").get<std::string>());
    for (const Json& m : field(ph, "motions")) {
      const Json& r = field(m, "robot");
      if (!r.is_number_unsigned()) throw Error(ErrorKind::MalformedInput, "robot must be a non-negative index");
      phase.motions.push_back({r.get<std::size_t>(), primitive_from(field(m, "primitive"))});
    }
    plan.phases.push_back(std::move(phase));
  }
  return plan;
}

namespace {

Json read_json(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot open " + file);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::MalformedInput, file + ": " + e.what());
  }
}

}  // namespace

Instance read_instance(const std::string& file) {
  try {
    return instance_from_json(read_json(file));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::MalformedInput, file + ": " + e.what());
  }
}

MotionPlan read_plan(const std::string& file) {
  try {
    return plan_from_json(read_json(file));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::MalformedInput, file + ": " + e.what());
  }
}

void write_json(const std::string& file, const Json& j) {
  std::ofstream out(file);
  if (!out) throw Error(ErrorKind::MalformedInput, "cannot write " + file);
  out << j.dump(2) << '\n';
}

}  // namespace mrmp
