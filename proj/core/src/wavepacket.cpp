#include "qramph/wavepacket.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qramph/errors.h"

namespace qramph {

namespace {

using std::numbers::pi;

void validate(const WavePacket& p) {
  if (!(p.fwhm.in_ns() > 0.0) || p.fwhm.is_infinite()) {
    throw InvalidParameter("wavepacket fwhm must be positive and finite");
  }
}

double sech(double x) {
  const double ax = std::abs(x);
  // 2 e^-|x| / (1 + e^-2|x|) stays finite for large |x|.
  const double e = std::exp(-ax);
  return 2.0 * e / (1.0 + e * e);
}

}  // namespace

std::string_view to_string(PulseShape shape) {
  return shape == PulseShape::Gaussian ? "gaussian" : "sech";
}

PulseShape parse_pulse_shape(std::string_view name) {
  if (name == "gaussian") return PulseShape::Gaussian;
  if (name == "sech" || name == "hyperbolic_secant") return PulseShape::HyperbolicSecant;
  throw InvalidParameter("unknown pulse shape '" + std::string(name) + "'");
}

std::string_view to_string(FwhmConvention c) {
  return c == FwhmConvention::Intensity ? "intensity" : "amplitude";
}

FwhmConvention parse_fwhm_convention(std::string_view name) {
  if (name == "intensity") return FwhmConvention::Intensity;
  if (name == "amplitude") return FwhmConvention::Amplitude;
  throw InvalidParameter("unknown FWHM convention '" + std::string(name) + "'");
}

double shape_parameter(const WavePacket& p) {
  validate(p);
  const double fwhm = p.fwhm.in_ns();
  const bool amp = p.convention == FwhmConvention::Amplitude;
  if (p.shape == PulseShape::Gaussian) {
    return (amp ? 2.0 * std::sqrt(std::log(2.0)) : std::sqrt(2.0 * std::log(2.0))) / fwhm;
  }
  return fwhm / (2.0 * (amp ? std::acosh(2.0) : std::acosh(std::numbers::sqrt2)));
}

double spectral_std(const WavePacket& p) {
  const double s = shape_parameter(p);
  if (p.shape == PulseShape::Gaussian) return s;
  return 1.0 / (std::sqrt(3.0) * s);
}

std::complex<double> envelope_time(const WavePacket& p, double t_ns) {
  const double s = shape_parameter(p);
  const double t = t_ns - p.center.in_ns();
  if (p.shape == PulseShape::Gaussian) {
    return std::pow(2.0 * s * s / pi, 0.25) * std::exp(-(s * t) * (s * t));
  }
  return sech(t / s) / std::sqrt(2.0 * s);
}

std::complex<double> envelope_freq(const WavePacket& p, double omega) {
  const double s = shape_parameter(p);
  double mag = 0.0;
  if (p.shape == PulseShape::Gaussian) {
    mag = std::pow(2.0 * pi * s * s, -0.25) * std::exp(-omega * omega / (4.0 * s * s));
  } else {
    mag = 0.5 * std::sqrt(pi * s) * sech(0.5 * pi * omega * s);
  }
  // A delay by `center` multiplies the transform by exp(+i w center).
  return std::polar(mag, omega * p.center.in_ns());
}

double norm_within(const WavePacket& p, double half_width_ns) {
  const double s = shape_parameter(p);
  if (half_width_ns <= 0.0) return 0.0;
  if (p.shape == PulseShape::Gaussian) {
    return std::erf(std::numbers::sqrt2 * s * half_width_ns);
  }
  return std::tanh(half_width_ns / s);
}

std::complex<double> reflection_transfer(const ReflectionResponse& resp, double omega) {
  const double k = resp.kappa_max.in_rad_per_ns();
  if (!(k > 0.0)) throw InvalidParameter("kappa_max must be positive");
  const std::complex<double> iw(0.0, omega);
  return (iw + 0.5 * k) / (iw - 0.5 * k);
}

DistortionIntegral distortion_integral(const WavePacket& packet, const ReflectionResponse& resp) {
  validate(packet);
  const double k = resp.kappa_max.in_rad_per_ns();
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidParameter("kappa_max must be positive");

  WavePacket centered = packet;
  centered.center = Duration::ns(0.0);
  const double sigma = spectral_std(centered);
  const double upper = 50.0 * sigma;

  auto integrand = [&](double w) {
    const double u = std::abs(envelope_freq(centered, w));
    return u * u * w * w / (k * k + 4.0 * w * w);
  };

  // Breakpoints at the scatterer half-width and the packet scale help the
  // adaptive rule when the two are far apart.
  std::vector<double> cuts = {0.0, upper};
  for (double c : {0.5 * k, sigma, 5.0 * sigma}) {
    if (c > 0.0 && c < upper) cuts.push_back(c);
  }
  // Decade cuts between the two scales keep the subdivision depth bounded.
  for (double c = 5.0 * k; c < sigma; c *= 10.0) cuts.push_back(c);
  for (double c = 0.05 * k; c > 1e-4 * sigma; c *= 0.1) cuts.push_back(c);
  for (int i = 1; i < 50; ++i) cuts.push_back(i * sigma);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Error estimate: disagreement between two adaptive Kronrod orders.
  using boost::math::quadrature::gauss_kronrod;
  double half = 0.0;
  double half_low = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    half += gauss_kronrod<double, 61>::integrate(integrand, cuts[i], cuts[i + 1], 4, 1e-11);
    half_low += gauss_kronrod<double, 31>::integrate(integrand, cuts[i], cuts[i + 1], 4, 1e-11);
  }
  const double err = std::abs(half - half_low);

  // |integrand| <= |u(w)|^2 / 4 beyond the cutoff.
  double tail = 0.0;
  if (centered.shape == PulseShape::Gaussian) {
    tail = 0.125 * std::erfc(upper / (std::numbers::sqrt2 * sigma));
  } else {
    const double tau = shape_parameter(centered);
    tail = 0.25 * (1.0 - std::tanh(0.5 * pi * upper * tau)) / 2.0;
  }

  DistortionIntegral out;
  out.integral = 2.0 * half;
  out.error_estimate = 2.0 * (err + tail);
  if (!std::isfinite(out.integral) ||
      out.error_estimate > std::max(1e-8 * out.integral, 1e-15)) {
    throw NumericalFailure("distortion integral did not converge: value " +
                           std::to_string(out.integral) + ", error estimate " +
                           std::to_string(out.error_estimate));
  }
  const double amp = 1.0 - 2.0 * out.integral;
  out.fidelity = amp * amp;
  return out;
}

}  // namespace qramph
