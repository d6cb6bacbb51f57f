#pragma once

// Time-domain model of one conditional phonon routing operation: beam
// splitter, control-conditioned reflection, beam splitter, capture.
//
// The emitted field is injected directly as the packet envelope u(t) inside
// the routing window (emission start to capture end). Capture into Q_L / Q_R
// is the overlap with the window-normalized packet mode. The control qubit is
// an ideal three-level scatterer: |g> leaves its arm untouched, |e> reflects
// it through the Lorentzian kernel of ReflectionResponse.

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qramph/units.h"
#include "qramph/wavepacket.h"

namespace qramph {

using cdouble = std::complex<double>;

enum class SourceQubit { Left, Right };

struct RouterSimConfig {
  WavePacket packet;
  AngularRate kappa_max = AngularRate::two_pi_mhz(200.0);
  Duration window = Duration::ns(350.0);
  /// Defaults to min(0.05 / kappa_max, fwhm / 200, window / 1000).
  std::optional<Duration> dt;
  /// Amplitudes of the control qubit on |g>, |e>.
  std::array<cdouble, 2> control_init = {cdouble(std::numbers::sqrt2 / 2), cdouble(std::numbers::sqrt2 / 2)};
  SourceQubit source = SourceQubit::Left;
  /// Keep every n-th grid point in the population traces.
  std::size_t trace_stride = 20;
};

struct PopulationSample {
  double t_ns = 0.0;
  double q_left = 0.0;
  double q_right = 0.0;
  double q_control = 0.0;    ///< control in |e> or |f>
  double q_control_f = 0.0;  ///< control transiently in |f> while scattering
};

struct RouterSimResult {
  /// Keys are "LRC" basis labels (Q_L, Q_R in {0,1}; Q_C in {0,1,2}).
  std::map<std::string, cdouble> final_state;
  double fidelity = 0.0;
  double captured = 0.0;
  double leakage = 0.0;
  /// |captured + leakage - 1|, the integrator's norm bookkeeping error.
  double norm_error = 0.0;
  double dt_ns = 0.0;
  std::size_t steps = 0;
  std::vector<PopulationSample> traces;
};

/// 50/50 beam splitter [[-1, 1], [1, 1]] / sqrt 2 acting on (left, right).
std::pair<cdouble, cdouble> beam_splitter(cdouble left, cdouble right);

struct ScatterOutput {
  std::vector<cdouble> field;
  /// Scatterer amplitude c(t) on the same grid.
  std::vector<cdouble> stored;
};

/// Passes a uniformly sampled field through the reflection kernel by
/// integrating c' = -(k/2) c + sqrt(k) b_in with classical RK4 (midpoint
/// inputs from cubic interpolation); b_out = b_in - sqrt(k) c.
/// Throws ResolutionError when dt * kappa > 0.1.
ScatterOutput scatter_arm_detailed(std::span<const cdouble> field, double dt_ns,
                                   const ReflectionResponse& resp);

inline std::vector<cdouble> scatter_arm(std::span<const cdouble> field, double dt_ns,
                                        const ReflectionResponse& resp) {
  return scatter_arm_detailed(field, dt_ns, resp).field;
}

/// Step size used when RouterSimConfig::dt is unset.
Duration default_step(const RouterSimConfig& config);

RouterSimResult simulate_routing(const RouterSimConfig& config);

struct SweepRow {
  double param = 0.0;
  PulseShape shape = PulseShape::Gaussian;
  double infidelity = 0.0;
  /// Time-domain infidelity when requested, NaN otherwise.
  double infidelity_timedomain = 0.0;
};

/// Infinite-window infidelity (closed form) over a kappa grid given in
/// units of 2*pi*MHz; optionally also the long-window time-domain value.
std::vector<SweepRow> sweep_kappa(std::span<const WavePacket> packets,
                                  std::span<const double> kappa_two_pi_mhz,
                                  std::optional<Duration> timedomain_window, unsigned workers);

/// Time-domain infidelity over a routing-window grid (ns) at fixed kappa.
std::vector<SweepRow> sweep_window(std::span<const WavePacket> packets,
                                   std::span<const double> windows_ns, AngularRate kappa_max,
                                   unsigned workers);

}  // namespace qramph
