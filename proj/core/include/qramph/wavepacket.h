#pragma once

// Single-phonon wavepacket envelopes and the reflection response of a
// transmon scatterer.
//
// Units used throughout: time in ns, angular frequency in rad/ns.
// Fourier convention: u(w) = (2 pi)^(-1/2) * integral u(t) exp(+i w t) dt,
// with synthesis u(t) = (2 pi)^(-1/2) * integral u(w) exp(-i w t) dw. Under
// this convention the input-output ODE  c' = -(k/2) c + sqrt(k) b_in,
// b_out = b_in - sqrt(k) c  has transfer function (i w + k/2) / (i w - k/2),
// which is -1 on resonance.

#include <complex>
#include <string_view>

#include "qramph/units.h"

namespace qramph {

enum class PulseShape { Gaussian, HyperbolicSecant };

/// Which envelope the FWHM is measured on.
///   Gaussian  u ~ exp(-(k t)^2):  amplitude k = 2 sqrt(ln 2)/FWHM,
///                                 intensity k = sqrt(2 ln 2)/FWHM
///   sech      u ~ sech(t / tau):  amplitude tau = FWHM / (2 acosh 2),
///                                 intensity tau = FWHM / (2 acosh sqrt 2)
enum class FwhmConvention { Intensity, Amplitude };

struct WavePacket {
  PulseShape shape = PulseShape::Gaussian;
  Duration fwhm = Duration::ns(50.0);
  Duration center = Duration::ns(0.0);
  FwhmConvention convention = FwhmConvention::Intensity;
};

std::string_view to_string(PulseShape shape);
PulseShape parse_pulse_shape(std::string_view name);
std::string_view to_string(FwhmConvention c);
FwhmConvention parse_fwhm_convention(std::string_view name);

/// Gaussian: the rate k (1/ns) in exp(-(k t)^2). sech: the time scale tau (ns).
double shape_parameter(const WavePacket& packet);

/// Standard deviation of |u(w)|^2 in rad/ns.
double spectral_std(const WavePacket& packet);

/// Normalized time-domain envelope u(t), t in ns.
std::complex<double> envelope_time(const WavePacket& packet, double t_ns);

/// Analytic Fourier transform of envelope_time, w in rad/ns.
std::complex<double> envelope_freq(const WavePacket& packet, double omega);

/// Closed-form integral of |u(t)|^2 over [center - half_width, center + half_width].
double norm_within(const WavePacket& packet, double half_width_ns);

struct ReflectionResponse {
  AngularRate kappa_max;
};

/// r(w) = (i w + k/2) / (i w - k/2), w in rad/ns.
std::complex<double> reflection_transfer(const ReflectionResponse& resp, double omega);

struct DistortionIntegral {
  double fidelity = 1.0;
  /// integral |u(w)|^2 w^2 / (k^2 + 4 w^2) dw
  double integral = 0.0;
  double error_estimate = 0.0;
};

/// Infinite-window routing fidelity (1 - 2 I)^2 for a symmetric packet.
/// Throws NumericalFailure if the quadrature misses 1e-8 relative accuracy.
DistortionIntegral distortion_integral(const WavePacket& packet, const ReflectionResponse& resp);

inline double distortion_fidelity(const WavePacket& packet, const ReflectionResponse& resp) {
  return distortion_integral(packet, resp).fidelity;
}

}  // namespace qramph
