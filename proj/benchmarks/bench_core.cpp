#include <benchmark/benchmark.h>

#include <vector>

#include "dimersim/dynamics.hpp"
#include "dimersim/liouvillian.hpp"
#include "dimersim/model.hpp"
#include "dimersim/stationary.hpp"

namespace {

dimersim::SystemParams driven_params() {
  dimersim::SystemParams p;
  p.gamma_star = 0.5;
  p.laser_detuning = 1.0;
  p.delta = 5.0;
  p.set_rabi(4.0);
  return p;
}

void BM_BuildLiouvillian(benchmark::State& state) {
  const auto p = driven_params();
  for (auto _ : state)
    benchmark::DoNotOptimize(dimersim::build_liouvillian(p).m);
}
BENCHMARK(BM_BuildLiouvillian);

void BM_SteadyState(benchmark::State& state) {
  const auto L = dimersim::build_liouvillian(driven_params());
  for (auto _ : state)
    benchmark::DoNotOptimize(dimersim::steady_state(L));
}
BENCHMARK(BM_SteadyState);

void BM_SpectralDecompose(benchmark::State& state) {
  const auto L = dimersim::build_liouvillian(driven_params());
  for (auto _ : state)
    benchmark::DoNotOptimize(dimersim::spectral_decompose(L).condition);
}
BENCHMARK(BM_SpectralDecompose);

void BM_PropagateOde(benchmark::State& state) {
  const auto L = dimersim::build_liouvillian(driven_params());
  const auto rho0 = dimersim::named_state(dimersim::NamedState::G);
  const std::vector<double> times = {1.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(dimersim::propagate_ode(L, rho0, times));
}
BENCHMARK(BM_PropagateOde);

void BM_TwoTimeCorrelation(benchmark::State& state) {
  dimersim::SystemParams p;
  p.gamma_star = 2.0;
  const auto dec = dimersim::spectral_decompose(dimersim::build_liouvillian(p));
  const auto rho0 = dimersim::named_state(dimersim::NamedState::A);
  const auto D = dimersim::detection_operator(dimersim::DetectionGeometry{});
  const dimersim::Matrix4 Dd = D.adjoint();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        dimersim::two_time_correlation(dec, rho0, Dd, D, 0.5, 1.0));
}
BENCHMARK(BM_TwoTimeCorrelation);

void BM_G1SpectrumResolvent(benchmark::State& state) {
  dimersim::SystemParams p;
  p.gamma_star = 2.0;
  const auto rho0 = dimersim::named_state(dimersim::NamedState::A);
  std::vector<double> omegas;
  for (int i = 0; i <= 240; ++i) omegas.push_back(-30.0 + 0.25 * i);
  const std::vector<double> times = {0.0, 1.0, 2.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        dimersim::g1_spectrum(p, rho0, dimersim::DetectionGeometry{}, times,
                              omegas, dimersim::SpectrumMethod::kResolvent)
            .values.sum());
}
BENCHMARK(BM_G1SpectrumResolvent);

void BM_SpectrumRow(benchmark::State& state) {
  auto p = driven_params();
  p.gamma_star = 0.1;
  std::vector<double> detunings;
  for (int i = 0; i < 200; ++i)
    detunings.push_back(-30.0 + 60.0 * i / 199.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        dimersim::excitation_spectrum(p, detunings, 1).values.back());
}
BENCHMARK(BM_SpectrumRow);

}  // namespace

BENCHMARK_MAIN();
