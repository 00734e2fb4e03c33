// Serial against OpenMP variants of the three data-parallel kernels. Each
// benchmark first checks that both variants agree and aborts otherwise.

#include <benchmark/benchmark.h>

#include <cstdio>
#include <cstdlib>

#include "ermakov/dynamics/simulate.hpp"
#include "ermakov/expr/parse.hpp"
#include "ermakov/kernels/sampling.hpp"
#include "ermakov/kernels/sweep.hpp"

using namespace ermakov;

namespace {

void require(bool ok, const char* what) {
  if (!ok) {
    std::fprintf(stderr, "serial/parallel mismatch: %s\n", what);
    std::abort();
  }
}

models::KEParams integrable() {
  models::KEParams p;
  p.f = models::UnaryFunction::closed("f", "u", "1 + u^2/3");
  p.g = models::UnaryFunction::closed("g", "u", "1");
  p.C = expr::sym("C");
  p.C0 = expr::sym("C0");
  p.with_integrable_h();
  return p;
}

// x'' of the model, compiled over (t, x, y, xdot, ydot, C, C0).
expr::CompiledExpr model_rhs() {
  auto p = integrable();
  auto sys = models::build_system(p);
  return expr::CompiledExpr(sys.rhs[0], {"t", "x", "y", "xdot", "ydot", "C", "C0"}, sys.functions);
}

kernels::PointSet points(std::size_t n) {
  return kernels::sample_box({{0, 1}, {0.5, 2}, {0.5, 2}, {-1, 1}, {-1, 1}, {0.1, 1}, {0.1, 0.5}}, n, 42);
}

void BM_sampling(benchmark::State& state, bool parallel) {
  auto f = model_rhs();
  auto pts = points(static_cast<std::size_t>(state.range(0)));
  require(kernels::evaluate_serial(f, pts) == kernels::evaluate_parallel(f, pts), "sampling");
  for (auto _ : state) {
    auto v = parallel ? kernels::evaluate_parallel(f, pts) : kernels::evaluate_serial(f, pts);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

dynamics::Trajectory& trajectory() {
  static dynamics::Trajectory traj = [] {
    dynamics::SimulationOptions o;
    o.integrate.samples = 20001;
    o.energy = false;
    return dynamics::simulate(integrable(), expr::Bindings{}.set("C", 0.5).set("C0", 0.2), {1, 1, 0, 0.5}, 0, 50, o)
        .trajectory;
  }();
  return traj;
}

void BM_monitor(benchmark::State& state, bool parallel) {
  auto p = integrable();
  dynamics::ErmakovLewis el(p.f, p.g);
  std::vector<dynamics::NamedInvariant> inv{dynamics::ermakov_lewis_invariant(el)};
  const auto& traj = trajectory();
  require(dynamics::monitor_serial(traj, inv)[0].values == dynamics::monitor_parallel(traj, inv)[0].values, "monitor");
  for (auto _ : state) {
    auto r = dynamics::monitor(traj, inv, parallel);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(traj.size()));
}

void BM_sweep(benchmark::State& state, bool parallel) {
  std::vector<kernels::SweepCase> cases;
  for (std::size_t i = 0; i < static_cast<std::size_t>(state.range(0)); ++i)
    cases.push_back({i, expr::Bindings{}.set("C", 0.2 + 0.05 * static_cast<double>(i)).set("C0", 0.2), {1, 1, 0, 0.5}});
  dynamics::SimulationOptions o;
  o.integrate.samples = 101;
  auto p = integrable();
  auto s = kernels::sweep_serial(p, cases, 0, 10, o);
  auto q = kernels::sweep_parallel(p, cases, 0, 10, o);
  for (std::size_t i = 0; i < s.size(); ++i)
    require(s[i].final_state.x == q[i].final_state.x && s[i].el_drift == q[i].el_drift, "sweep");
  for (auto _ : state) {
    auto r = parallel ? kernels::sweep_parallel(p, cases, 0, 10, o) : kernels::sweep_serial(p, cases, 0, 10, o);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_sampling, serial, false)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK_CAPTURE(BM_sampling, parallel, true)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK_CAPTURE(BM_monitor, serial, false);
BENCHMARK_CAPTURE(BM_monitor, parallel, true);
BENCHMARK_CAPTURE(BM_sweep, serial, false)->Arg(16);
BENCHMARK_CAPTURE(BM_sweep, parallel, true)->Arg(16);

BENCHMARK_MAIN();
