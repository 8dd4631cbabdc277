// Serial vs OpenMP timings for the cost-matrix and validation kernels.
#include <chrono>
#include <cstdio>
#include <omp.h>

#include "mrmp/assignment.hpp"
#include "mrmp/eps_planner.hpp"
#include "mrmp/fixtures.hpp"
#include "mrmp/validator.hpp"

namespace {

template <class F>
double seconds(F&& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < reps; ++k) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
  using namespace mrmp;
  std::printf("threads=%d\n", omp_get_max_threads());

  RandomSpec spec;
  spec.robots = 6;
  spec.rho = 4.0;
  spec.omega = 1.7;
  spec.holes = 2;
  spec.seed = 11;
  const Instance inst = random_instance(spec);
  const FreeSpace f = build_free_space(inst.workspace);
  const GeodesicGraph g(f);

  const double serial_cm = seconds([&] { (void)geodesic_cost_matrix_serial(g, inst.starts, inst.targets); }, 5);
  const double par_cm = seconds([&] { (void)geodesic_cost_matrix(g, inst.starts, inst.targets); }, 5);
  std::printf("cost_matrix  serial=%.6fs parallel=%.6fs speedup=%.2f\n", serial_cm, par_cm, serial_cm / par_cm);

  PlannerConfig cfg;
  cfg.epsilon = 0.0;
  const MotionPlan plan = plan_eps(inst, cfg).plan;
  const double serial_v = seconds([&] { (void)validate_plan_serial(inst, plan); }, 3);
  const double par_v = seconds([&] { (void)validate_plan(inst, plan); }, 3);
  std::printf("validator    serial=%.6fs parallel=%.6fs speedup=%.2f\n", serial_v, par_v, serial_v / par_v);
  return 0;
}
