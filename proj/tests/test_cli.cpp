#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mrmp/io.hpp"

using namespace mrmp;
namespace fs = std::filesystem;

namespace {

const fs::path& tmp() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "mrmp_test_cli";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string file(const std::string& name) { return (tmp() / name).string(); }

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& f) {
  std::ifstream in(f);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const std::string err_file = file("stderr.txt");
  const std::string cmd = std::string(MRMP_CLI) + " " + args + " 2>" + err_file;
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p) != nullptr) r.out += buf;
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_file);
  return r;
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

Json seg(Point a, Point b) { return {{"type", "segment"}, {"a", {a.x, a.y}}, {"b", {b.x, b.y}}}; }

Json traverse(Point a, Point b) {
  return {{"tag", "traverse_path"}, {"path", {{"start", {a.x, a.y}}, {"edges", Json::array({seg(a, b)})}}}};
}

Json square_instance(const std::vector<Point>& s, const std::vector<Point>& t, bool labeled,
                     const Json& holes = Json::array()) {
  Json starts = Json::array();
  Json targets = Json::array();
  for (const Point p : s) starts.push_back({p.x, p.y});
  for (const Point p : t) targets.push_back({p.x, p.y});
  return {{"workspace", {{"outer", {{0, 0}, {20, 0}, {20, 20}, {0, 20}}}, {"holes", holes}, {"carved_disks", Json::array()}}},
          {"starts", starts},
          {"targets", targets},
          {"labeled", labeled}};
}

}  // namespace

TEST_CASE("generate, check, plan, validate") {
  const std::string inst = file("r.json");
  const std::string plan = file("p.json");
  REQUIRE(run("gen --fixture random --m 3 --rho 4 --omega 1.7 --seed 5 --out " + inst).code == 0);

  const Run chk = run("check --in " + inst + " --auto min-omega");
  CHECK(chk.code == 0);
  CHECK(chk.err.find("epsilon=0.354438") != std::string::npos);

  const Run pl = run("plan --in " + inst + " --out " + plan + " --algo eps --epsilon 0");
  CHECK(pl.code == 0);
  CHECK(pl.out.find("status=ok") != std::string::npos);
  CHECK(pl.out.find("phases=3") != std::string::npos);

  const Run val = run("validate --in " + inst + " --plan " + plan);
  CHECK(val.code == 0);
  CHECK(val.out.find("status=ok") != std::string::npos);
}

TEST_CASE("exit codes") {
  SUBCASE("missing input file") { CHECK(run("plan --in " + file("none.json") + " --out " + file("x.json")).code == 1); }
  SUBCASE("unknown subcommand") { CHECK(run("teleport").code == 1); }
  SUBCASE("malformed json") {
    std::ofstream(file("bad.json")) << "{\"workspace\": 3";
    CHECK(run("check --in " + file("bad.json") + " --epsilon 0").code == 1);
  }
  SUBCASE("strip violates the constraints") {
    REQUIRE(run("gen --fixture strip --eps-fig 0.1 --out " + file("strip.json")).code == 0);
    CHECK(run("check --in " + file("strip.json") + " --auto monotone").code == 2);
    CHECK(run("plan --in " + file("strip.json") + " --out " + file("x.json") + " --algo eps --auto monotone").code ==
          2);
  }
  SUBCASE("exodus refuses holes") {
    const Json hole = Json::array({Json::array({{9, 9}, {11, 9}, {11, 11}, {9, 11}})});
    write_json(file("holes.json"), square_instance({{4, 4}}, {{16, 16}}, false, hole));
    const Run r = run("plan --in " + file("holes.json") + " --out " + file("x.json") + " --algo exodus");
    CHECK(r.code == 2);
    CHECK(r.err.find("NotSimplePolygon") != std::string::npos);
  }
  SUBCASE("colliding plan fails validation") {
    write_json(file("cross.json"), square_instance({{5, 10}, {10, 5}}, {{15, 10}, {10, 15}}, true));
    const Json phase{{"kind", "eps"},
                     {"motions",
                      {{{"robot", 0}, {"primitive", traverse({5, 10}, {15, 10})}},
                       {{"robot", 1}, {"primitive", traverse({10, 5}, {10, 15})}}}}};
    write_json(file("cross_plan.json"), Json{{"phases", {phase}}});
    const Run r = run("validate --in " + file("cross.json") + " --plan " + file("cross_plan.json"));
    CHECK(r.code == 2);
    CHECK(r.out.find("status=invalid") != std::string::npos);
  }
  SUBCASE("plan missing a robot is malformed") {
    write_json(file("cross.json"), square_instance({{5, 10}, {10, 5}}, {{15, 10}, {10, 15}}, true));
    const Json phase{{"kind", "eps"}, {"motions", {{{"robot", 0}, {"primitive", traverse({5, 10}, {15, 10})}}}}};
    write_json(file("short_plan.json"), Json{{"phases", {phase}}});
    CHECK(run("validate --in " + file("cross.json") + " --plan " + file("short_plan.json")).code == 1);
  }
}

TEST_CASE("render") {
  write_json(file("one.json"), square_instance({{4, 4}}, {{16, 16}}, false));
  SUBCASE("empty plan draws no robot paths") {
    write_json(file("empty_plan.json"), Json{{"phases", Json::array()}});
    REQUIRE(run("render --in " + file("one.json") + " --plan " + file("empty_plan.json") + " --out " + file("e.svg"))
                .code == 0);
    const std::string svg = slurp(file("e.svg"));
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(count(svg, "class=\"robot-path\"") == 0);
    CHECK(count(svg, "class=\"start\"") == 1);
  }
  SUBCASE("one robot, one path") {
    REQUIRE(run("plan --in " + file("one.json") + " --out " + file("one_plan.json") + " --epsilon 0").code == 0);
    REQUIRE(run("render --in " + file("one.json") + " --plan " + file("one_plan.json") + " --out " + file("o.svg"))
                .code == 0);
    CHECK(count(slurp(file("o.svg")), "class=\"robot-path\"") == 1);
  }
  SUBCASE("open phases draw displacement arrows") {
    write_json(file("two.json"), square_instance({{4, 10}, {10, 10}}, {{16, 4}, {16, 16}}, false));
    REQUIRE(run("plan --in " + file("two.json") + " --out " + file("two_plan.json") + " --algo exodus").code == 0);
    REQUIRE(run("render --in " + file("two.json") + " --plan " + file("two_plan.json") + " --out " + file("t.svg") +
                " --snapshots")
                .code == 0);
    const std::string svg = slurp(file("t.svg"));
    CHECK(count(svg, "class=\"displacement\"") == 2);
    CHECK(count(svg, "class=\"snapshot\"") > 0);
  }
}
