#include "qramph/analytics.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qramph/errors.h"

namespace qramph {

namespace {

void check_n(int n) {
  if (n < 1 || n > 62) throw InvalidParameter("n must be in 1..62, got " + std::to_string(n));
}

void check_positive(Duration d, const char* what) {
  if (!(d.in_ns() > 0.0)) throw InvalidParameter(std::string(what) + " must be positive");
}

void check_non_negative(Duration d, const char* what) {
  if (!(d.in_ns() >= 0.0) || d.is_infinite())
    throw InvalidParameter(std::string(what) + " must be finite and non-negative");
}

// Survival over `span` at lifetime `life`; infinite lifetime never decays.
double survive(Duration span, Duration life) {
  if (life.is_infinite()) return 1.0;
  return std::exp(-(span / life));
}

double inv(Duration life) { return life.is_infinite() ? 0.0 : 1.0 / life.in_ns(); }

}  // namespace

Duration query_time(int n, Duration t, Encoding encoding) {
  check_n(n);
  check_non_negative(t, "routing step t");
  const double steps = is_standard_dual_rail(encoding) ? 2.0 * (3 * n - 1) : 2.0 * (2 * n - 1);
  return t * steps;
}

SuccessEstimate success_prob_hybrid(int n, Duration t, Duration t1_q, Duration t1_m) {
  check_n(n);
  check_non_negative(t, "routing step t");
  check_positive(t1_q, "T1_q");
  check_positive(t1_m, "T1_m");
  const Duration T = query_time(n, t, Encoding::HybridDualRail);
  SuccessEstimate out;
  double log_p = 0.0;
  for (int k = 0; k <= n; ++k) {
    const Duration routed = t * (2.0 * k);
    const double branch = 0.5 * (survive(routed, t1_m) + survive(routed, t1_q));
    log_p += std::log(branch) - (T - routed).in_ns() * inv(t1_q);
  }
  out.p = std::exp(log_p);
  const double nt = n * t.in_ns();
  const double fast = std::max(inv(t1_q), inv(t1_m));
  const double slow = std::min(inv(t1_q), inv(t1_m));
  const double base = T.in_ns() * inv(t1_q) - nt * inv(t1_q);
  out.p_min = std::exp(-(n + 1) * (base + nt * fast));
  out.p_max = std::exp(-(n + 1) * (base + nt * slow));
  return out;
}

double success_prob_standard_vacuum(int n, Duration t, Duration t1_q, Duration t1_m) {
  check_n(n);
  check_non_negative(t, "routing step t");
  check_positive(t1_q, "T1_q");
  check_positive(t1_m, "T1_m");
  const Duration T = query_time(n, t, Encoding::StandardDualRailVacuum);
  const double nt = n * t.in_ns();
  return std::exp(-(n + 1) * (T.in_ns() * inv(t1_q) - nt * inv(t1_q) + nt * inv(t1_m)));
}

double success_prob_standard_logical(int n, Duration t, Duration t1_q) {
  check_n(n);
  check_non_negative(t, "routing step t");
  check_positive(t1_q, "T1_q");
  const Duration T = query_time(n, t, Encoding::StandardDualRailLogical);
  return std::exp(-std::ldexp(1.0, n) * T.in_ns() * inv(t1_q));
}

HeraldingReport heralding_rate(const HeraldingInputs& in) {
  HeraldingReport r;
  r.n = in.n;
  r.N = 1LL << std::clamp(in.n, 0, 62);
  r.scenario = in.encoding;
  r.T = query_time(in.n, in.t, in.encoding);
  switch (in.encoding) {
    case Encoding::SingleRail:
      throw InvalidParameter("single-rail encoding has no heralding");
    case Encoding::HybridDualRail: {
      auto s = success_prob_hybrid(in.n, in.t, in.t1_q, in.t1_m);
      r.p_no_error = s.p;
      r.p_min = s.p_min;
      r.p_max = s.p_max;
      break;
    }
    case Encoding::StandardDualRailVacuum:
      r.p_no_error = r.p_min = r.p_max =
          success_prob_standard_vacuum(in.n, in.t, in.t1_q, in.t1_m);
      break;
    case Encoding::StandardDualRailLogical:
      r.p_no_error = r.p_min = r.p_max = success_prob_standard_logical(in.n, in.t, in.t1_q);
      r.approximate = true;
      break;
  }
  check_positive(r.T, "query time");
  r.rate_hz = r.p_no_error / r.T.in_s();
  return r;
}

double no_dephasing_prob(Duration t, Duration t2) {
  check_non_negative(t, "time");
  check_positive(t2, "T2");
  return 0.5 * (1.0 + survive(t, t2));
}

DephasingEstimate dephasing_no_error_prob(int n, Duration t, Duration t2_q, Duration t2_m) {
  check_n(n);
  check_non_negative(t, "routing step t");
  check_positive(t2_q, "T2_q");
  check_positive(t2_m, "T2_m");
  const Duration T = query_time(n, t, Encoding::HybridDualRail);
  DephasingEstimate out;
  double log_p = 0.0;
  for (int k = 0; k <= n; ++k) {
    const Duration routed = t * (2.0 * k);
    const double branch = 0.5 * (no_dephasing_prob(routed, t2_m) + no_dephasing_prob(routed, t2_q));
    log_p += std::log(branch) + std::log(no_dephasing_prob(T - routed, t2_q));
  }
  out.p = std::exp(log_p);
  out.approx_infidelity = 2.0 * n * n * t.in_ns() * inv(t2_q);
  return out;
}

double thermal_infidelity_bound(int n, Duration t, Duration t1, double n_thermal) {
  check_n(n);
  check_positive(t1, "T1");
  if (!(n_thermal >= 0.0)) throw InvalidParameter("thermal occupation must be non-negative");
  const Duration T = query_time(n, t, Encoding::HybridDualRail);
  return 4.0 * n_thermal * n * (n + 1) * T.in_ns() * inv(t1);
}

double distortion_query_infidelity(int n, double eps) {
  check_n(n);
  if (!(eps >= 0.0)) throw InvalidParameter("distortion infidelity must be non-negative");
  return eps * n * (n - 1);
}

double f_decay_correction(int n, Duration t_f, Duration t1_q) {
  check_n(n);
  check_non_negative(t_f, "t_f");
  check_positive(t1_q, "T1_q");
  return std::exp(-n * t_f.in_ns() * inv(t1_q));
}

}  // namespace qramph
