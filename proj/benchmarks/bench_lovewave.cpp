#include <benchmark/benchmark.h>

#include <vector>

#include "lovewave/limiting.hpp"
#include "lovewave/modes.hpp"
#include "lovewave/riccati.hpp"
#include "lovewave/secular.hpp"
#include "lovewave/solver.hpp"

using namespace lovewave;

namespace {

MaterialParams foam_tables(double J) {
  MaterialParams p;
  p.mu_e = 104;
  p.mu_c = 4.3331;
  p.a1 = 79.9552;
  p.a2 = 10.6496;
  p.a3 = -53.3035;
  p.J = J;
  p.rho = 0.34;
  return p;
}

RiccatiSystem<3> foam_system(double J = 10.0, double k = 0.5) {
  return build_scaled_triple(make_wave_context(foam_tables(J), k), CurvatureCoupling::Linear)
      .system();
}

SolveOptions linear_coupling() {
  SolveOptions o;
  o.coupling = CurvatureCoupling::Linear;
  o.secular.workers = 1;
  return o;
}

void BM_LimitingSpeed(benchmark::State& state) {
  const auto sys = foam_system();
  LimitingSpeedOptions o;
  o.theta_samples = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(limiting_speed(sys, o).v_hat);
}
BENCHMARK(BM_LimitingSpeed)->Arg(256)->Arg(2048)->Arg(16384);

// Impedance at a fraction of v_hat given in parts per million.
void BM_Impedance(benchmark::State& state) {
  const auto sys = foam_system();
  const double v_hat = limiting_speed(sys).v_hat;
  const double v = v_hat * static_cast<double>(state.range(0)) * 1e-6;
  int panels = 0;
  for (auto _ : state) {
    const auto r = impedance_matrix(sys, v, {}, v_hat);
    panels = r.panels;
    benchmark::DoNotOptimize(r.M);
  }
  state.counters["panels"] = panels;
}
BENCHMARK(BM_Impedance)->Arg(0)->Arg(500000)->Arg(999000)->Arg(999999);

void BM_SecularSolve(benchmark::State& state) {
  const auto sys = foam_system();
  const double v_hat = limiting_speed(sys).v_hat;
  SecularOptions o;
  o.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_secular(sys, v_hat, o).v0);
}
BENCHMARK(BM_SecularSolve)->Unit(benchmark::kMillisecond);

void BM_FullSolve(benchmark::State& state) {
  const auto ctx = make_wave_context(foam_tables(10), 0.5);
  const auto o = linear_coupling();
  for (auto _ : state) benchmark::DoNotOptimize(solve_love_wave(ctx, o).secular.v0);
}
BENCHMARK(BM_FullSolve)->Unit(benchmark::kMillisecond);

void BM_DepthProfile(benchmark::State& state) {
  const auto sol = solve_love_wave(make_wave_context(foam_tables(10), 0.5), linear_coupling()).solution;
  std::vector<double> depths;
  for (int i = 0; i < state.range(0); ++i) depths.push_back(40.0 * i / state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(depth_profile(sol, depths).y_values.back());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DepthProfile)->Arg(400)->Arg(4000);

void BM_TableSweep(benchmark::State& state) {
  const auto o = linear_coupling();
  for (auto _ : state) {
    for (double J : {0.1, 1.0, 10.0}) {
      benchmark::DoNotOptimize(solve_love_wave(make_wave_context(foam_tables(J), 0.5), o).secular.v0);
    }
  }
}
BENCHMARK(BM_TableSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
