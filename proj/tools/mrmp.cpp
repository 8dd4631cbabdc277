// Command-line front end: fixture generation, constraint checks, planning,
// validation and rendering. Exit codes: 0 success, 2 infeasible or invalid,
// 1 malformed input.
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mrmp/eps_planner.hpp"
#include "mrmp/errors.hpp"
#include "mrmp/exodus_planner.hpp"
#include "mrmp/fixtures.hpp"
#include "mrmp/io.hpp"
#include "mrmp/render.hpp"
#include "mrmp/validator.hpp"

namespace {

using namespace mrmp;

constexpr int kExitOk = 0;
constexpr int kExitMalformed = 1;
constexpr int kExitInfeasible = 2;

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::MalformedInput:
    case ErrorKind::MalformedPlan:
    case ErrorKind::InvalidWorkspace:
      return kExitMalformed;
    default:
      return kExitInfeasible;
  }
}

void summary(const std::string& status, double length, double aux, std::size_t phases) {
  std::printf("status=%s length=%.9g aux=%.9g phases=%zu\n", status.c_str(), length, aux, phases);
}

struct EpsilonArgs {
  std::optional<double> epsilon;
  std::string goal;

  double resolve() const {
    if (epsilon) return *epsilon;
    if (goal == "min-omega") return choose_epsilon(EpsilonGoal::MinOmega).epsilon;
    if (goal == "min-rho") return choose_epsilon(EpsilonGoal::MinRho).epsilon;
    if (goal == "monotone" || goal.empty()) return choose_epsilon(EpsilonGoal::Monotone).epsilon;
    throw Error(ErrorKind::MalformedInput, "unknown --auto goal " + goal);
  }
};

void add_epsilon_options(CLI::App* cmd, EpsilonArgs& e) {
  auto* eps = cmd->add_option("--epsilon", e.epsilon, "overlap parameter in [0, 1]");
  auto* aut = cmd->add_option("--auto", e.goal, "choose epsilon: min-omega | min-rho | monotone")
                  ->check(CLI::IsMember({"min-omega", "min-rho", "monotone"}));
  eps->excludes(aut);
}

int run_check(const std::string& in, const EpsilonArgs& e) {
  const Instance inst = read_instance(in);
  const double eps = e.resolve();
  const ConstraintReport r = check_constraints(inst, eps);
  std::cerr << "epsilon=" << eps << " omega=" << r.separation.omega << " rho=" << r.separation.rho() << '\n';
  for (std::size_t k = 0; k < r.constraints.size(); ++k) {
    const auto& c = r.constraints[k];
    std::cerr << "C" << k + 1 << " required=" << c.required << " measured=" << c.measured
              << (c.satisfied ? " ok" : " violated") << '\n';
  }
  summary(r.ok() ? "ok" : "infeasible", 0.0, 0.0, 0);
  return r.ok() ? kExitOk : kExitInfeasible;
}

int run_plan(const std::string& in, const std::string& out, const std::string& algo, const EpsilonArgs& e, double tol) {
  const Instance inst = read_instance(in);
  MotionPlan plan;
  if (algo == "eps") {
    PlannerConfig cfg;
    cfg.epsilon = e.resolve();
    std::cerr << "epsilon=" << std::setprecision(9) << cfg.epsilon << '\n';
    plan = plan_eps(inst, cfg).plan;
  } else {
    plan = plan_exodus(inst, inst.labeled).plan;
  }
  const ValidationReport rep = validate_plan(inst, plan, tol);
  const PlanLength len = plan_total_length(plan);
  if (!out.empty()) write_json(out, to_json(plan));
  std::cerr << "min_robot_robot=" << rep.min_robot_robot << " min_robot_obstacle=" << rep.min_robot_obstacle
            << " endpoints=" << (rep.endpoint_check ? "ok" : "wrong") << '\n';
  summary(rep.ok ? "ok" : "invalid", len.total, len.auxiliary, plan.phases.size());
  return rep.ok ? kExitOk : kExitInfeasible;
}

int run_validate(const std::string& in, const std::string& plan_file, double tol) {
  const Instance inst = read_instance(in);
  const MotionPlan plan = read_plan(plan_file);
  const ValidationReport rep = validate_plan(inst, plan, tol);
  const PlanLength len = plan_total_length(plan);
  std::cerr << "min_robot_robot=" << rep.min_robot_robot << " min_robot_obstacle=" << rep.min_robot_obstacle
            << " endpoints=" << (rep.endpoint_check ? "ok" : "wrong") << '\n';
  for (const PhaseWorst& w : rep.phases) {
    if (w.min_robot_robot < 2.0 - tol || w.min_robot_obstacle < 1.0 - tol) {
      std::cerr << "phase " << w.phase << ": robots " << w.robot_a << "," << w.robot_b << " at " << w.min_robot_robot
                << "; robot " << w.robot_obstacle << " at " << w.min_robot_obstacle << " from obstacles\n";
    }
  }
  summary(rep.ok ? "ok" : "invalid", len.total, len.auxiliary, plan.phases.size());
  return rep.ok ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-robot motion planning for unit-disk robots"};
  app.require_subcommand(1);

  std::string in;
  std::string out;
  std::string plan_file;
  std::string algo = "eps";
  double tol = 1e-6;
  EpsilonArgs eps_args;
  FixtureSpec fixture;
  bool snapshots = false;

  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--fixture", fixture.name, "hourglass | strip | monotone_lb | weakly_monotone_lb | random")
      ->check(CLI::IsMember({"hourglass", "strip", "monotone_lb", "weakly_monotone_lb", "random"}));
  gen->add_option("--eps-fig", fixture.eps_fig, "epsilon parameter of the hourglass and strip");
  gen->add_option("--delta", fixture.delta, "perturbation of the lower-bound fixtures");
  gen->add_option("--m", fixture.random.robots, "robots of a random instance");
  gen->add_option("--rho", fixture.random.rho, "minimum distance between positions");
  gen->add_option("--omega", fixture.random.omega, "minimum distance from positions to obstacles");
  gen->add_option("--seed", fixture.random.seed, "random seed");
  gen->add_option("--holes", fixture.random.holes, "number of holes");
  gen->add_option("--notches", fixture.random.notches, "number of boundary notches");
  gen->add_flag("--labeled", fixture.random.labeled, "labeled random instance");
  gen->add_option("--out", out, "instance file (stdout if omitted)");

  auto* check = app.add_subcommand("check", "check the separation constraints");
  check->add_option("--in", in, "instance file")->required();
  add_epsilon_options(check, eps_args);

  auto* plan = app.add_subcommand("plan", "compute and validate a motion plan");
  plan->add_option("--in", in, "instance file")->required();
  plan->add_option("--out", out, "plan file");
  plan->add_option("--algo", algo, "eps | exodus")->check(CLI::IsMember({"eps", "exodus"}));
  plan->add_option("--tol", tol, "validation tolerance");
  add_epsilon_options(plan, eps_args);

  auto* validate = app.add_subcommand("validate", "validate a motion plan");
  validate->add_option("--in", in, "instance file")->required();
  validate->add_option("--plan", plan_file, "plan file")->required();
  validate->add_option("--tol", tol, "validation tolerance");

  auto* render = app.add_subcommand("render", "render an instance and optional plan as SVG");
  render->add_option("--in", in, "instance file")->required();
  render->add_option("--plan", plan_file, "plan file");
  render->add_option("--out", out, "SVG file (stdout if omitted)");
  render->add_flag("--snapshots", snapshots, "draw robots at the end of every phase");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitMalformed;
  }

  try {
    if (*gen) {
      const Json j = to_json(gen_fixture(fixture));
      if (out.empty()) {
        std::cout << j.dump(2) << '\n';
      } else {
        write_json(out, j);
      }
      return kExitOk;
    }
    if (*check) return run_check(in, eps_args);
    if (*plan) return run_plan(in, out, algo, eps_args, tol);
    if (*validate) return run_validate(in, plan_file, tol);
    if (*render) {
      const Instance inst = read_instance(in);
      std::optional<MotionPlan> p;
      if (!plan_file.empty()) p = read_plan(plan_file);
      RenderOptions opt;
      opt.snapshots = snapshots;
      const std::string svg = render_svg(inst, p ? &*p : nullptr, opt);
      if (out.empty()) {
        std::cout << svg;
      } else {
        std::ofstream(out) << svg;
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    const int code = exit_code_for(e.kind());
    summary(code == kExitMalformed ? "invalid" : "infeasible", 0.0, 0.0, 0);
    return code;
  }
  return kExitMalformed;
}
