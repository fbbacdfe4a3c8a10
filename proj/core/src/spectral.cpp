// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include "tweezercp/spectral.hpp"

#include <cmath>

#include <fftw3.h>

#include "tweezercp/constants.hpp"
#include "tweezercp/errors.hpp"
#include "tweezercp/parallel.hpp"

namespace tweezercp {

namespace {

Vec3 frame_vector(const Unitary2& uc, const Pulse& p) {
  const Mat2c h_perp =
      0.5 * (p.omega.real() * pauli(0) + p.omega.imag() * pauli(1));
  const Mat2c rotated = uc.matrix().adjoint() * h_perp * uc.matrix();
  Vec3 h;
  for (int a = 0; a < 3; ++a) {
    h[a] = (pauli(a) * rotated).trace().real();
  }
  return h;
}

}  // namespace

double ErrorSpectrum::bin_width() const { return constants::kTwoPi / window; }

FrameSignal frame_signal(const CompositePulse& cp, double dt) {
  FrameSignal sig;
  sig.t.push_back(0.0);
  sig.h_left.push_back(Vec3::Zero());
  sig.h_right.push_back(Vec3::Zero());
  Unitary2 uc;
  double t0 = 0.0;
  for (const auto& p : cp.pulses) {
    const int steps = std::max(1, static_cast<int>(std::ceil(p.tau / dt - 1e-9)));
    const double step = p.tau / steps;
    sig.h_right.back() = frame_vector(uc, p);
    for (int j = 1; j <= steps; ++j) {
      const Unitary2 u = segment_propagator(p.omega, p.delta, step * j) * uc;
      sig.t.push_back(j == steps ? t0 + p.tau : t0 + step * j);
      sig.h_left.push_back(frame_vector(u, p));
      sig.h_right.push_back(sig.h_left.back());
      if (j == steps) {
        uc = u;
      }
    }
    t0 += p.tau;
  }
  sig.h_right.back() = Vec3::Zero();
  return sig;
}

Vec3c filter_amplitude_at(const FrameSignal& sig, double omega) {
  Vec3c r = Vec3c::Zero();
  for (std::size_t j = 0; j + 1 < sig.size(); ++j) {
    const double w = 0.25 * (sig.t[j + 1] - sig.t[j]);
    const Complex e0 = std::polar(w, -omega * sig.t[j]);
    const Complex e1 = std::polar(w, -omega * sig.t[j + 1]);
    r += sig.h_right[j].cast<Complex>() * e0 + sig.h_left[j + 1].cast<Complex>() * e1;
  }
  return r;
}

FilterFunction filter_amplitude(const FrameSignal& sig, const std::vector<double>& omega) {
  FilterFunction ff;
  ff.omega = omega;
  ff.r.resize(omega.size());
  parallel_for(omega.size(), [&](std::size_t k) { ff.r[k] = filter_amplitude_at(sig, omega[k]); });
  return ff;
}

RotationVector displacement(const Unitary2& target, const CompositePulse& cp) {
  RotationVector d = su2_log_axis(target.adjoint() * cp.ideal());
  d.a = -d.a;
  return d;
}

RotationVector first_order_a(const std::vector<double>& eps, const FrameSignal& sig) {
  if (eps.size() != sig.size()) {
    throw GridMismatch("error samples do not match the frame grid");
  }
  RotationVector a;
  for (std::size_t j = 0; j + 1 < sig.size(); ++j) {
    const double w = 0.25 * (sig.t[j + 1] - sig.t[j]);
    a.a += w * (eps[j] * sig.h_right[j] + eps[j + 1] * sig.h_left[j + 1]);
  }
  return a;
}

double residual_bias(double mean_eps, const Vec3& r0, const RotationVector& D) {
  return (mean_eps * r0 - D.a).squaredNorm();
}

double residual_bias(double mean_eps, const FilterFunction& ff, const RotationVector& D) {
  for (std::size_t k = 0; k < ff.omega.size(); ++k) {
    if (ff.omega[k] == 0.0) {
      return residual_bias(mean_eps, Vec3(ff.r[k].real()), D);
    }
  }
  throw GridMismatch("filter grid has no zero-frequency bin");
}

ErrorSpectrum power_spectrum(const std::vector<std::vector<double>>& realizations, double dt) {
  if (realizations.empty() || realizations.front().empty()) {
    throw ConfigError("power_spectrum needs at least one non-empty realization");
  }
  const std::size_t n = realizations.front().size();
  double sum = 0.0;
  for (const auto& r : realizations) {
    if (r.size() != n) {
      throw GridMismatch("realizations have different lengths");
    }
    for (double x : r) {
      sum += x;
    }
  }
  ErrorSpectrum spec;
  spec.mean_eps = sum / static_cast<double>(n * realizations.size());
  spec.window = dt * static_cast<double>(n);

  const std::size_t half = n / 2 + 1;
  std::vector<double> power(half, 0.0);
  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(half);
  const fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
  for (const auto& r : realizations) {
    for (std::size_t j = 0; j < n; ++j) {
      in[j] = r[j] - spec.mean_eps;
    }
    fftw_execute(plan);
    for (std::size_t k = 0; k < half; ++k) {
      power[k] += out[k][0] * out[k][0] + out[k][1] * out[k][1];
    }
  }
  fftw_destroy_plan(plan);
  fftw_free(out);
  fftw_free(in);

  const double scale = dt * dt / spec.window / static_cast<double>(realizations.size());
  const auto neg = static_cast<long>((n - 1) / 2);
  const auto pos = static_cast<long>(n / 2);
  const double dw = spec.bin_width();
  for (long k = -neg; k <= pos; ++k) {
    spec.omega.push_back(dw * static_cast<double>(k));
    spec.S.push_back(scale * power[static_cast<std::size_t>(std::labs(k))]);
  }
  return spec;
}

std::vector<std::vector<double>> error_realizations(const std::vector<AtomSample>& samples,
                                                    const MotionContext& motion, double dt,
                                                    std::size_t n) {
  std::vector<std::vector<double>> out(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    out[i].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      out[i][j] = motion.epsilon(samples[i], dt * static_cast<double>(j));
    }
  });
  return out;
}

double leading_order_infidelity(double G, const FilterFunction& ff, const ErrorSpectrum& spec) {
  if (ff.omega.size() != spec.omega.size()) {
    throw GridMismatch("filter and spectrum grids differ");
  }
  const double dw = spec.bin_width();
  double sum = 0.0;
  for (std::size_t k = 0; k < spec.omega.size(); ++k) {
    if (std::abs(ff.omega[k] - spec.omega[k]) > 1e-9 * dw) {
      throw GridMismatch("filter and spectrum grids differ");
    }
    sum += ff.r2(k) * spec.S[k];
  }
  return G + sum * dw / constants::kTwoPi;
}

}  // namespace tweezercp
