#include "qramph/router.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qramph/errors.h"
#include "qramph/parallel.h"

namespace qramph {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

// Cubic Lagrange estimate of the field halfway between samples i and i+1.
cdouble midpoint(std::span<const cdouble> f, std::size_t i) {
  const std::size_t n = f.size();
  if (n < 4) return 0.5 * (f[i] + f[i + 1]);
  if (i == 0) return (5.0 * f[0] + 15.0 * f[1] - 5.0 * f[2] + f[3]) / 16.0;
  if (i + 2 >= n) {
    return (f[n - 4] - 5.0 * f[n - 3] + 15.0 * f[n - 2] + 5.0 * f[n - 1]) / 16.0;
  }
  return (-f[i - 1] + 9.0 * f[i] + 9.0 * f[i + 1] - f[i + 2]) / 16.0;
}

struct Branch {
  std::vector<cdouble> left;
  std::vector<cdouble> right;
  std::vector<cdouble> stored;  // empty unless the left arm was scattered
};

void validate(const RouterSimConfig& c) {
  if (!(c.window.in_ns() > 0.0) || c.window.is_infinite()) {
    throw InvalidParameter("routing window must be positive and finite");
  }
  if (!(c.kappa_max.in_rad_per_ns() > 0.0)) throw InvalidParameter("kappa_max must be positive");
  const double norm = std::norm(c.control_init[0]) + std::norm(c.control_init[1]);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw InvalidParameter("control_init must be normalized (|g|^2 + |e|^2 = 1)");
  }
  if (c.dt && !(c.dt->in_ns() > 0.0)) throw InvalidParameter("dt must be positive");
  if (c.trace_stride == 0) throw InvalidParameter("trace_stride must be at least 1");
}

}  // namespace

std::pair<cdouble, cdouble> beam_splitter(cdouble left, cdouble right) {
  return {kInvSqrt2 * (-left + right), kInvSqrt2 * (left + right)};
}

ScatterOutput scatter_arm_detailed(std::span<const cdouble> field, double dt_ns,
                                   const ReflectionResponse& resp) {
  const double k = resp.kappa_max.in_rad_per_ns();
  if (!(k >= 0.0)) throw InvalidParameter("kappa_max must be non-negative");
  if (!(dt_ns > 0.0)) throw InvalidParameter("dt must be positive");
  if (dt_ns * k > 0.1) {
    throw ResolutionError("grid too coarse for the scatterer: dt * kappa = " +
                          std::to_string(dt_ns * k) + " > 0.1");
  }

  ScatterOutput out;
  out.field.resize(field.size());
  out.stored.resize(field.size());
  if (field.empty()) return out;

  const double rk = std::sqrt(k);
  auto rhs = [&](cdouble c, cdouble b) { return -0.5 * k * c + rk * b; };

  cdouble c = 0.0;
  out.stored[0] = c;
  out.field[0] = field[0];
  for (std::size_t i = 0; i + 1 < field.size(); ++i) {
    const cdouble b0 = field[i];
    const cdouble bm = midpoint(field, i);
    const cdouble b1 = field[i + 1];
    const cdouble k1 = rhs(c, b0);
    const cdouble k2 = rhs(c + 0.5 * dt_ns * k1, bm);
    const cdouble k3 = rhs(c + 0.5 * dt_ns * k2, bm);
    const cdouble k4 = rhs(c + dt_ns * k3, b1);
    c += dt_ns / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.stored[i + 1] = c;
    out.field[i + 1] = b1 - rk * c;
  }
  return out;
}

Duration default_step(const RouterSimConfig& config) {
  const double k = config.kappa_max.in_rad_per_ns();
  double dt = std::min(0.05 / k, config.packet.fwhm.in_ns() / 200.0);
  dt = std::min(dt, config.window.in_ns() / 1000.0);
  return Duration::ns(dt);
}

RouterSimResult simulate_routing(const RouterSimConfig& config) {
  validate(config);
  const double window = config.window.in_ns();
  const double dt_req = config.dt ? config.dt->in_ns() : default_step(config).in_ns();
  const auto steps = static_cast<std::size_t>(std::ceil(window / dt_req - 1e-9));
  if (steps < 1000) {
    throw ResolutionError("dt must not exceed window / 1000");
  }
  const double dt = window / static_cast<double>(steps);
  const std::size_t n = steps + 1;

  WavePacket packet = config.packet;
  packet.center = Duration::ns(0.5 * window);

  std::vector<cdouble> u(n);
  std::vector<double> w(n, dt);
  w.front() = w.back() = 0.5 * dt;
  double emitted = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = envelope_time(packet, dt * static_cast<double>(i));
    emitted += w[i] * std::norm(u[i]);
  }
  const double mode_norm = std::sqrt(emitted);

  // Arms after the first beam splitter.
  const bool from_left = config.source == SourceQubit::Left;
  const auto [l_coef, r_coef] = from_left ? beam_splitter(1.0, 0.0) : beam_splitter(0.0, 1.0);

  ReflectionResponse resp{config.kappa_max};
  auto run_branch = [&](bool scatter) {
    Branch b;
    std::vector<cdouble> arm_l(n), arm_r(n);
    for (std::size_t i = 0; i < n; ++i) {
      arm_l[i] = l_coef * u[i];
      arm_r[i] = r_coef * u[i];
    }
    if (scatter) {
      ScatterOutput s = scatter_arm_detailed(arm_l, dt, resp);
      arm_l = std::move(s.field);
      b.stored = std::move(s.stored);
    }
    b.left.resize(n);
    b.right.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::tie(b.left[i], b.right[i]) = beam_splitter(arm_l[i], arm_r[i]);
    }
    return b;
  };

  const Branch branch[2] = {run_branch(false), run_branch(true)};
  const std::array<cdouble, 2>& ctrl = config.control_init;

  RouterSimResult res;
  res.dt_ns = dt;
  res.steps = steps;

  double leak_total = 0.0;
  for (int c = 0; c < 2; ++c) {
    const Branch& b = branch[c];
    cdouble a_l = 0.0, a_r = 0.0;
    double out_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      a_l += w[i] * std::conj(u[i]) * b.left[i];
      a_r += w[i] * std::conj(u[i]) * b.right[i];
      out_norm += w[i] * (std::norm(b.left[i]) + std::norm(b.right[i]));
    }
    a_l /= mode_norm;
    a_r /= mode_norm;
    const double captured = std::norm(a_l) + std::norm(a_r);
    const double stored_end = b.stored.empty() ? 0.0 : std::norm(b.stored.back());
    const double leak = (1.0 - emitted) + (out_norm - captured) + stored_end;

    const double weight = std::norm(ctrl[c]);
    res.captured += weight * captured;
    leak_total += weight * leak;
    const char q = c == 0 ? '0' : '1';
    res.final_state[std::string("10") + q] += ctrl[c] * a_l;
    res.final_state[std::string("01") + q] += ctrl[c] * a_r;
  }
  res.leakage = leak_total;
  res.norm_error = std::abs(res.captured + res.leakage - 1.0);

  // Ideal CSWAP: the excitation changes side only when the control is excited.
  std::map<std::string, cdouble> ideal;
  if (from_left) {
    ideal["100"] = ctrl[0];
    ideal["011"] = ctrl[1];
  } else {
    ideal["010"] = ctrl[0];
    ideal["101"] = ctrl[1];
  }
  cdouble overlap = 0.0;
  for (const auto& [key, amp] : ideal) {
    auto it = res.final_state.find(key);
    if (it != res.final_state.end()) overlap += std::conj(amp) * it->second;
  }
  res.fidelity = std::clamp(std::norm(overlap), 0.0, 1.0);

  // Population traces: source depletes with the emitted norm, targets fill
  // with the running matched-filter overlap.
  cdouble run_l[2] = {0.0, 0.0}, run_r[2] = {0.0, 0.0};
  double run_emit = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    run_emit += w[i] * std::norm(u[i]);
    for (int c = 0; c < 2; ++c) {
      run_l[c] += w[i] * std::conj(u[i]) * branch[c].left[i] / mode_norm;
      run_r[c] += w[i] * std::conj(u[i]) * branch[c].right[i] / mode_norm;
    }
    if (i % config.trace_stride != 0 && i + 1 != n) continue;
    PopulationSample s;
    s.t_ns = dt * static_cast<double>(i);
    const double source_left = std::max(0.0, 1.0 - run_emit);
    for (int c = 0; c < 2; ++c) {
      const double wgt = std::norm(ctrl[c]);
      s.q_left += wgt * ((from_left ? source_left : 0.0) + std::norm(run_l[c]));
      s.q_right += wgt * ((from_left ? 0.0 : source_left) + std::norm(run_r[c]));
    }
    s.q_control = std::norm(ctrl[1]);
    s.q_control_f = std::norm(ctrl[1]) * std::norm(branch[1].stored[i]);
    res.traces.push_back(s);
  }
  return res;
}

std::vector<SweepRow> sweep_kappa(std::span<const WavePacket> packets,
                                  std::span<const double> kappa_two_pi_mhz,
                                  std::optional<Duration> timedomain_window, unsigned workers) {
  if (packets.empty() || kappa_two_pi_mhz.empty()) {
    throw InvalidParameter("sweep grids must be non-empty");
  }
  const std::size_t nk = kappa_two_pi_mhz.size();
  return parallel_map(packets.size() * nk, workers, [&](std::size_t idx) {
    const WavePacket& p = packets[idx / nk];
    const double mhz = kappa_two_pi_mhz[idx % nk];
    if (!(mhz > 0.0)) throw InvalidParameter("kappa grid values must be positive");
    SweepRow row;
    row.param = mhz;
    row.shape = p.shape;
    const ReflectionResponse resp{AngularRate::two_pi_mhz(mhz)};
    row.infidelity = 1.0 - distortion_fidelity(p, resp);
    row.infidelity_timedomain = std::numeric_limits<double>::quiet_NaN();
    if (timedomain_window) {
      RouterSimConfig cfg;
      cfg.packet = p;
      cfg.kappa_max = resp.kappa_max;
      cfg.window = *timedomain_window;
      cfg.trace_stride = std::numeric_limits<std::size_t>::max();
      row.infidelity_timedomain = 1.0 - simulate_routing(cfg).fidelity;
    }
    return row;
  });
}

std::vector<SweepRow> sweep_window(std::span<const WavePacket> packets,
                                   std::span<const double> windows_ns, AngularRate kappa_max,
                                   unsigned workers) {
  if (packets.empty() || windows_ns.empty()) {
    throw InvalidParameter("sweep grids must be non-empty");
  }
  const std::size_t nw = windows_ns.size();
  return parallel_map(packets.size() * nw, workers, [&](std::size_t idx) {
    const WavePacket& p = packets[idx / nw];
    RouterSimConfig cfg;
    cfg.packet = p;
    cfg.kappa_max = kappa_max;
    cfg.window = Duration::ns(windows_ns[idx % nw]);
    cfg.trace_stride = std::numeric_limits<std::size_t>::max();
    SweepRow row;
    row.param = windows_ns[idx % nw];
    row.shape = p.shape;
    row.infidelity = 1.0 - simulate_routing(cfg).fidelity;
    row.infidelity_timedomain = row.infidelity;
    return row;
  });
}

}  // namespace qramph
