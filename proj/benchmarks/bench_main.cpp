// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include <benchmark/benchmark.h>

#include <tweezercp/constants.hpp>
#include <tweezercp/evolve.hpp>
#include <tweezercp/spectral.hpp>
#include <tweezercp/trainer.hpp>

namespace {

using namespace tweezercp;
using constants::kPi;

void BM_SegmentPropagator(benchmark::State& state) {
  double delta = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(segment_propagator({6.2e6, 1.0e5}, delta, 5e-9));
    delta += 1.0;
  }
}
BENCHMARK(BM_SegmentPropagator);

void BM_EvolveSingleAtom(benchmark::State& state) {
  const MotionContext m = MotionContext::reference();
  const CompositePulse cp = bb1(kPi, 0.0, HardwareLimits::reference());
  std::mt19937_64 rng = stream_rng(1, 4);
  const AtomSample atom = sample_thermal(m.trap, rng, 1).front();
  const SegmentGrid grid = align_segments(cp, static_cast<int>(state.range(0)));
  const auto eps = [&](double t) { return m.epsilon(atom, t); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(cp, eps, grid));
  }
}
BENCHMARK(BM_EvolveSingleAtom)->Arg(20)->Arg(100)->Arg(200);

void BM_EnsembleFidelity(benchmark::State& state) {
  const MotionContext m = MotionContext::reference();
  const CompositePulse cp = rect(kPi, 0.0, HardwareLimits::reference());
  const Unitary2 target = su2_from_rotation({kPi, kPi / 2, 0.0});
  std::mt19937_64 rng = stream_rng(1, 4);
  const auto atoms = sample_thermal(m.trap, rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ensemble_fidelity(cp, target, atoms, m, 100).fidelity);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EnsembleFidelity)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Gradient(benchmark::State& state) {
  const TrainConfig c = TrainConfig::desk();
  std::mt19937_64 data_rng = stream_rng(c.seed, 0);
  const Datasets d = make_datasets(c, data_rng);
  std::mt19937_64 init_rng = stream_rng(c.seed, 1);
  const PulseNet net = init_network(c, init_rng);
  const std::vector<TargetPoint> batch(d.train.targets.begin(),
                                       d.train.targets.begin() + c.batch_size);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gradient(net, batch, d.train.atoms, c.motion, c.m_segments).loss);
  }
}
BENCHMARK(BM_Gradient)->Unit(benchmark::kMillisecond);

void BM_PowerSpectrum(benchmark::State& state) {
  const MotionContext m = MotionContext::reference();
  std::mt19937_64 rng = stream_rng(1, 4);
  const auto atoms = sample_thermal(m.trap, rng, 200);
  const auto series = error_realizations(atoms, m, 100e-9, 4000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(power_spectrum(series, 100e-9).S.data());
  }
}
BENCHMARK(BM_PowerSpectrum)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
