#include <benchmark/benchmark.h>

#include <vector>

#include "areosync/constants.hpp"
#include "areosync/sim_engine.hpp"

using namespace areosync;

namespace {

Scenario scenario_with(int n_sats, bool moons) {
  Scenario s = mars_example_scenario();
  s.n_sats = n_sats;
  s.moons_enabled = moons;
  s.link_output_fn.theta_rel_d = 2.0 * 3.14159265358979323846 / n_sats;
  return s;
}

std::vector<double> packed_state(const Scenario& s, const Topology& topo) {
  const StateLayout layout{s.n_sats, topo.n_links};
  const auto initial = sample_initial_conditions(s.ic, s.n_sats, s.seed, s.sat_mass);
  std::vector<double> x(layout.size(), 0.0);
  for (int i = 0; i < s.n_sats; ++i) {
    x[layout.r(i)] = initial[i].r;
    x[layout.v(i)] = initial[i].v;
    x[layout.omega(i)] = initial[i].omega;
    x[layout.theta(i)] = initial[i].theta;
  }
  for (int l = 0; l < topo.n_links; ++l) {
    x[layout.theta_rel(l)] = initial[l].theta - initial[l + 1].theta;
  }
  return x;
}

void SystemDerivative(benchmark::State& state) {
  const Scenario s = scenario_with(static_cast<int>(state.range(0)), true);
  const Topology topo = build_path_incidence(s.n_sats);
  std::vector<double> x = packed_state(s, topo);
  std::vector<double> dxdt(x.size(), 0.0);
  ControlWorkspace ws(s.n_sats, topo.n_links);
  double t = 0.0;
  for (auto _ : state) {
    system_derivative(s, topo, t, x, std::span<double>(dxdt), ws);
    benchmark::DoNotOptimize(dxdt.data());
    t += 10.0;
  }
  state.SetItemsProcessed(state.iterations() * s.n_sats);
}
BENCHMARK(SystemDerivative)->Arg(10)->Arg(40)->Arg(160);

void MoonPerturbation(benchmark::State& state) {
  const Scenario s = scenario_with(10, true);
  const SatelliteTruthState sat{s.desired.r_d, 0.0, s.desired.omega_d, 0.3,
                                s.sat_mass};
  double t = 0.0;
  for (auto _ : state) {
    PerturbationAccel a = total_perturbation(sat, s.moons, t);
    benchmark::DoNotOptimize(a);
    t += 10.0;
  }
}
BENCHMARK(MoonPerturbation);

void Rk4FullStep(benchmark::State& state) {
  const Scenario s = scenario_with(static_cast<int>(state.range(0)), true);
  const Topology topo = build_path_incidence(s.n_sats);
  std::vector<double> x = packed_state(s, topo);
  ControlWorkspace ws(s.n_sats, topo.n_links);
  Rk4Workspace rk(x.size());
  auto f = [&](double t, std::span<const double> xs, std::span<double> dxdt) {
    system_derivative(s, topo, t, xs, dxdt, ws);
  };
  double t = 0.0;
  for (auto _ : state) {
    rk4_step(f, std::span<double>(x), t, 10.0, rk);
    t += 10.0;
  }
  // steps per second tells how fast a mission horizon integrates
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(Rk4FullStep)->Arg(10)->Arg(40);

void ShortAcquisitionRun(benchmark::State& state) {
  Scenario s = scenario_with(10, true);
  s.horizon = constants::sols_to_seconds(0.5);
  for (auto _ : state) {
    RunResult res = run(s);
    benchmark::DoNotOptimize(res.report);
  }
}
BENCHMARK(ShortAcquisitionRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
