#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "qramph/errors.h"
#include "qramph/wavepacket.h"

using namespace qramph;
using std::numbers::pi;

namespace {

WavePacket amplitude_packet(PulseShape shape) {
  return WavePacket{shape, Duration::ns(50.0), Duration::ns(0.0), FwhmConvention::Amplitude};
}

// Trapezoid transform of envelope_time; the envelopes decay exponentially so
// a wide uniform grid converges spectrally.
std::complex<double> numeric_transform(const WavePacket& p, double omega, double half_span,
                                       double dt) {
  std::complex<double> acc = 0.0;
  const auto steps = static_cast<long>(2 * half_span / dt);
  for (long i = 0; i <= steps; ++i) {
    const double t = -half_span + i * dt;
    const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
    acc += w * envelope_time(p, t) * std::exp(std::complex<double>(0.0, omega * t));
  }
  return acc * dt / std::sqrt(2 * pi);
}

double trapezoid(auto f, double lo, double hi, int steps) {
  const double h = (hi - lo) / steps;
  double acc = 0.5 * (f(lo) + f(hi));
  for (int i = 1; i < steps; ++i) acc += f(lo + i * h);
  return acc * h;
}

}  // namespace

TEST(Envelope, GaussianPeak) {
  const double k = 2 * std::sqrt(std::log(2.0)) / 50.0;
  const double expected = std::pow(2 * k * k / pi, 0.25);
  EXPECT_NEAR(std::abs(envelope_time(amplitude_packet(PulseShape::Gaussian), 0.0)), expected, 1e-14);
}

TEST(Envelope, HalfAmplitudeAtHalfWidth) {
  for (PulseShape s : {PulseShape::Gaussian, PulseShape::HyperbolicSecant}) {
    WavePacket p = amplitude_packet(s);
    p.center = Duration::ns(17.0);
    const double peak = std::abs(envelope_time(p, 17.0));
    EXPECT_NEAR(std::abs(envelope_time(p, 17.0 + 25.0)), peak / 2, 1e-12);
    EXPECT_NEAR(std::abs(envelope_time(p, 17.0 - 25.0)), peak / 2, 1e-12);
  }
}

TEST(Envelope, HalfIntensityAtHalfWidth) {
  for (PulseShape s : {PulseShape::Gaussian, PulseShape::HyperbolicSecant}) {
    const WavePacket p{s, Duration::ns(50.0)};
    const double peak = std::norm(envelope_time(p, 0.0));
    EXPECT_NEAR(std::norm(envelope_time(p, 25.0)), peak / 2, 1e-12);
  }
}

TEST(Envelope, SechMatchesDirectFormula) {
  const double tau = 50.0 / (2 * std::acosh(2.0));
  const double oracle = 1.0 / std::cosh(100.0 / tau) / std::sqrt(2 * tau);
  EXPECT_NEAR(std::abs(envelope_time(amplitude_packet(PulseShape::HyperbolicSecant), 100.0)), oracle,
              1e-15);
}

TEST(Envelope, UnitNormInTime) {
  for (PulseShape s : {PulseShape::Gaussian, PulseShape::HyperbolicSecant}) {
    const WavePacket p{s, Duration::ns(50.0)};
    const double n = trapezoid([&](double t) { return std::norm(envelope_time(p, t)); }, -2000, 2000,
                               40000);
    EXPECT_NEAR(n, 1.0, 1e-10);
    EXPECT_NEAR(norm_within(p, 2000.0), 1.0, 1e-12);
  }
}

TEST(Envelope, RejectsNonPositiveFwhm) {
  WavePacket p;
  p.fwhm = Duration::ns(0.0);
  EXPECT_THROW(envelope_time(p, 0.0), InvalidParameter);
  p.fwhm = Duration::ns(-3.0);
  EXPECT_THROW(envelope_freq(p, 0.0), InvalidParameter);
}

TEST(Spectrum, GaussianParseval) {
  const WavePacket p = amplitude_packet(PulseShape::Gaussian);
  const double n = trapezoid([&](double w) { return std::norm(envelope_freq(p, w)); }, -2.0, 2.0,
                             20000);
  EXPECT_NEAR(n, 1.0, 1e-9);
}

TEST(Spectrum, GaussianHalfPowerPoint) {
  const WavePacket p = amplitude_packet(PulseShape::Gaussian);
  const double k = 2 * std::sqrt(std::log(2.0)) / 50.0;
  const double w_half = k * std::sqrt(2 * std::log(2.0));
  EXPECT_NEAR(std::norm(envelope_freq(p, w_half)) / std::norm(envelope_freq(p, 0.0)), 0.5, 1e-9);
}

TEST(Spectrum, SechMatchesNumericTransform) {
  const WavePacket p = amplitude_packet(PulseShape::HyperbolicSecant);
  const double w = 2 * pi * 0.01;
  const auto numeric = numeric_transform(p, w, 1500.0, 0.05);
  EXPECT_NEAR(std::abs(envelope_freq(p, w) - numeric), 0.0, 1e-6);
}

TEST(Spectrum, MatchesNumericTransformOnGrid) {
  for (PulseShape s : {PulseShape::Gaussian, PulseShape::HyperbolicSecant}) {
    const WavePacket p{s, Duration::ns(50.0), Duration::ns(30.0)};
    for (double w = -0.3; w <= 0.3; w += 0.025) {
      EXPECT_NEAR(std::abs(envelope_freq(p, w) - numeric_transform(p, w, 1500.0, 0.1)), 0.0, 1e-6)
          << to_string(s) << " w=" << w;
    }
  }
}

TEST(Reflection, ResonanceAndLimits) {
  const ReflectionResponse r{AngularRate::two_pi_mhz(200.0)};
  const double k = r.kappa_max.in_rad_per_ns();
  EXPECT_NEAR(std::abs(reflection_transfer(r, 0.0) - std::complex<double>(-1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(reflection_transfer(r, 1e9) - std::complex<double>(1.0, 0.0)), 0.0, 1e-8);
  // (i + 1) / (i - 1) = -i
  EXPECT_NEAR(std::abs(reflection_transfer(r, k / 2) - std::complex<double>(0.0, -1.0)), 0.0, 1e-15);
}

TEST(Reflection, UnitModulus) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> kappa(0.01, 10.0);
  std::cauchy_distribution<double> omega(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const ReflectionResponse r{AngularRate::rad_per_s(kappa(rng) * 1e9)};
    EXPECT_NEAR(std::abs(reflection_transfer(r, omega(rng))), 1.0, 1e-12);
  }
}

TEST(Distortion, LargeKappaLimit) {
  for (PulseShape s : {PulseShape::Gaussian, PulseShape::HyperbolicSecant}) {
    const WavePacket p{s};
    const ReflectionResponse r{AngularRate::rad_per_s(1e6 * spectral_std(p) * 1e9)};
    EXPECT_NEAR(distortion_fidelity(p, r), 1.0, 1e-6);
  }
}

TEST(Distortion, SmallKappaLimit) {
  for (PulseShape s : {PulseShape::Gaussian, PulseShape::HyperbolicSecant}) {
    const WavePacket p{s};
    const ReflectionResponse r{AngularRate::rad_per_s(1e-7 * spectral_std(p) * 1e9)};
    EXPECT_NEAR(distortion_fidelity(p, r), 0.25, 1e-6);
  }
}

TEST(Distortion, OperatingPointValues) {
  const ReflectionResponse r{AngularRate::two_pi_mhz(200.0)};
  // Frozen from the time-domain oracle (long window, see test_router).
  EXPECT_NEAR(1 - distortion_fidelity(WavePacket{PulseShape::Gaussian}, r), 1.39824e-3, 1e-8);
  EXPECT_NEAR(1 - distortion_fidelity(WavePacket{PulseShape::HyperbolicSecant}, r), 1.04459e-3, 1e-8);
  const double amp = 1 - distortion_fidelity(amplitude_packet(PulseShape::Gaussian), r);
  EXPECT_GT(amp, 1e-3);
  EXPECT_LT(amp, 3e-3);
}

TEST(Distortion, InfidelityStrictlyDecreasingInKappa) {
  for (PulseShape s : {PulseShape::Gaussian, PulseShape::HyperbolicSecant}) {
    double prev = 1.0;
    for (int i = 0; i <= 40; ++i) {
      const double mhz = 10.0 * std::pow(100.0, i / 40.0);
      const double inf = 1 - distortion_fidelity(WavePacket{s}, {AngularRate::two_pi_mhz(mhz)});
      EXPECT_LT(inf, prev) << mhz;
      prev = inf;
    }
  }
}

// At equal FWHM the sech spectrum has the smaller second moment, so its
// infinite-window infidelity is lower over this kappa range.
TEST(Distortion, SechBelowGaussianAtInfiniteWindow) {
  for (FwhmConvention c : {FwhmConvention::Intensity, FwhmConvention::Amplitude}) {
    for (int i = 0; i <= 20; ++i) {
      const double mhz = 10.0 * std::pow(100.0, i / 20.0);
      const ReflectionResponse r{AngularRate::two_pi_mhz(mhz)};
      const WavePacket g{PulseShape::Gaussian, Duration::ns(50), Duration::ns(0), c};
      const WavePacket h{PulseShape::HyperbolicSecant, Duration::ns(50), Duration::ns(0), c};
      EXPECT_LE(1 - distortion_fidelity(h, r), 1 - distortion_fidelity(g, r)) << mhz;
    }
  }
}

TEST(Distortion, FidelityInRange) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lg(-1.0, 4.0);
  std::uniform_real_distribution<double> fw(5.0, 500.0);
  for (int i = 0; i < 200; ++i) {
    const WavePacket p{i % 2 ? PulseShape::Gaussian : PulseShape::HyperbolicSecant,
                       Duration::ns(fw(rng))};
    const double f = distortion_fidelity(p, {AngularRate::two_pi_mhz(std::pow(10.0, lg(rng)))});
    EXPECT_GE(f, 0.25 - 1e-12);
    EXPECT_LE(f, 1.0);
  }
}
