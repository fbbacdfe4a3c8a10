// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <tweezercp/constants.hpp>
#include <tweezercp/errors.hpp>
#include <tweezercp/evolve.hpp>
#include <tweezercp/parallel.hpp>

namespace tweezercp {
namespace {

using constants::kPi;

const HardwareLimits kLim = HardwareLimits::reference();

TEST(Align, PinsNearestBoundaries) {
  const double T = 2e-6;
  const SegmentGrid g = align_segments({0.0, 0.62 * T, 0.91 * T}, T, 10);
  ASSERT_EQ(g.segments(), 10);
  EXPECT_EQ(g.pinned, (std::vector<int>{0, 6, 9, 10}));
  EXPECT_DOUBLE_EQ(g.boundaries[6], 0.62 * T);
  EXPECT_DOUBLE_EQ(g.boundaries[9], 0.91 * T);
  EXPECT_DOUBLE_EQ(g.boundaries[5], 0.5 * T);
  EXPECT_DOUBLE_EQ(g.boundaries[10], T);
  for (int k = 0; k < 10; ++k) {
    EXPECT_LT(g.boundaries[k], g.boundaries[k + 1]);
  }
}

TEST(Align, CollisionIsAmbiguous) {
  EXPECT_THROW(align_segments({0.0, 0.61, 0.64}, 1.0, 10), AmbiguousMapping);
  EXPECT_THROW(align_segments({0.0, 0.03}, 1.0, 10), AmbiguousMapping);
  EXPECT_NO_THROW(align_segments({0.0, 0.61, 0.64}, 1.0, 40));
}

TEST(Align, SequenceOverload) {
  const CompositePulse cp = sk1(kPi, 0.0, kLim);
  const SegmentGrid g = align_segments(cp, 20);
  const auto starts = cp.start_times();
  for (std::size_t k = 0; k < starts.size(); ++k) {
    EXPECT_DOUBLE_EQ(g.boundaries[static_cast<std::size_t>(g.pinned[k])], starts[k]);
  }
  EXPECT_DOUBLE_EQ(g.total(), cp.total_duration());
}

TEST(Evolve, NoErrorGivesIdeal) {
  for (const CompositePulse& cp : {rect(kPi, 0.2, kLim), sk1(kPi, 0.0, kLim), bb1(1.0, 0.5, kLim)}) {
    const Unitary2 u = evolve(cp, [](double) { return 0.0; }, align_segments(cp, 20));
    EXPECT_LT((u.matrix() - cp.ideal().matrix()).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Evolve, LatestSegmentActsLast) {
  const CompositePulse cp = bb1(kPi, 0.0, kLim);
  const SegmentGrid g = align_segments(cp, 30);
  const auto eps = [](double t) { return 0.05 * std::sin(3e6 * t); };
  const Unitary2 full = evolve(cp, eps, g);
  const Unitary2 split = evolve(cp, eps, g, 11, 30) * evolve(cp, eps, g, 0, 11);
  EXPECT_LT((full.matrix() - split.matrix()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Evolve, StaticErrorIsExact) {
  // A static amplitude error only rescales each pulse, so any m is exact.
  const CompositePulse cp = sk1(kPi, 0.0, kLim);
  const auto eps = [](double) { return 0.03; };
  const Unitary2 a = evolve(cp, eps, align_segments(cp, 20));
  const Unitary2 b = evolve(cp, eps, align_segments(cp, 400));
  EXPECT_LT((a.matrix() - b.matrix()).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Evolve, MidpointConvergesQuadratically) {
  const CompositePulse cp = rect(kPi, 0.0, kLim);
  const Unitary2 target = su2_from_rotation({kPi, kPi / 2, 0.0});
  const auto eps = [](double t) { return 0.2 * std::cos(4e6 * t); };
  const double ref = gate_infidelity(target, evolve(cp, eps, align_segments(cp, 4000)));
  const double e10 = std::abs(gate_infidelity(target, evolve(cp, eps, align_segments(cp, 10))) - ref);
  const double e20 = std::abs(gate_infidelity(target, evolve(cp, eps, align_segments(cp, 20))) - ref);
  EXPECT_NEAR(e10 / e20, 4.0, 0.4);
}

TEST(Evolve, GridMustCoverSequence) {
  const CompositePulse cp = rect(kPi, 0.0, kLim);
  const SegmentGrid g = align_segments({0.0}, 2.0 * cp.total_duration(), 10);
  EXPECT_THROW(evolve(cp, [](double) { return 0.0; }, g), GridMismatch);
}

TEST(Ensemble, ThreadCountDoesNotChangeBits) {
  const MotionContext m = MotionContext::reference();
  std::mt19937_64 rng(8);
  const auto atoms = sample_thermal(m.trap, rng, 300);
  const CompositePulse cp = sk1(kPi, 0.0, kLim);
  const Unitary2 target = su2_from_rotation({kPi, kPi / 2, 0.0});
  const unsigned saved = thread_count();
  set_thread_count(1);
  const EnsembleResult a = ensemble_fidelity(cp, target, atoms, m, 20);
  set_thread_count(5);
  const EnsembleResult b = ensemble_fidelity(cp, target, atoms, m, 20);
  set_thread_count(saved);
  EXPECT_EQ(a.fidelity, b.fidelity);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(a.per_sample, b.per_sample);
}

TEST(Ensemble, MeanAndStandardError) {
  const MotionContext m = MotionContext::reference();
  std::mt19937_64 rng(2);
  const auto atoms = sample_thermal(m.trap, rng, 50);
  const CompositePulse cp = rect(kPi, 0.0, kLim);
  const Unitary2 target = su2_from_rotation({kPi, kPi / 2, 0.0});
  const EnsembleResult r = ensemble_fidelity(cp, target, atoms, m, 20);
  double mean = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double f = gate_infidelity(
        target, evolve(cp, [&](double t) { return m.epsilon(atoms[i], t); },
                       align_segments(cp, 20)));
    EXPECT_EQ(1.0 - f, r.per_sample[i]);
    mean += f / 50.0;
  }
  EXPECT_NEAR(r.infidelity(), mean, 1e-15);
  double var = 0.0;
  for (double f : r.per_sample) {
    var += (1.0 - f - mean) * (1.0 - f - mean);
  }
  EXPECT_NEAR(r.std_error, std::sqrt(var / 49.0 / 50.0), 1e-15);
}

TEST(Ensemble, ColdAtomAtCenterIsPerfect) {
  const MotionContext m = MotionContext::reference();
  const CompositePulse cp = bb1(kPi, 0.0, kLim);
  const Unitary2 target = su2_from_rotation({kPi, kPi / 2, 0.0});
  EXPECT_LT(ensemble_fidelity(cp, target, {AtomSample{}}, m, 100).infidelity(), 1e-15);
}

}  // namespace
}  // namespace tweezercp
