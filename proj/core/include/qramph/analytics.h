#pragma once

// Closed-form query-time, heralding and infidelity estimates.

#include <string>

#include "qramph/encoding.h"
#include "qramph/units.h"

namespace qramph {

/// 2(2n-1)t for single-rail and hybrid, 2(3n-1)t for standard dual-rail.
Duration query_time(int n, Duration t, Encoding encoding);

struct SuccessEstimate {
  double p = 1.0;
  double p_min = 1.0;
  double p_max = 1.0;
};

/// Product over excitations k = 0..n of the average survival with the
/// routed 2kt split evenly between the tree and register branches.
SuccessEstimate success_prob_hybrid(int n, Duration t, Duration t1_q, Duration t1_m);

/// Exact for vacuum-initialised routers; bounds coincide with the value.
double success_prob_standard_vacuum(int n, Duration t, Duration t1_q, Duration t1_m);

/// Order-of-magnitude scaling exp(-2^n T / T1_q) for routers initialised in
/// the logical subspace.
double success_prob_standard_logical(int n, Duration t, Duration t1_q);

struct HeraldingInputs {
  int n = 1;
  Encoding encoding = Encoding::HybridDualRail;
  Duration t = Duration::ns(350);
  Duration t1_q = Duration::us(100);
  Duration t1_m = Duration::us(2);
};

struct HeraldingReport {
  int n = 0;
  long long N = 0;
  Encoding scenario = Encoding::HybridDualRail;
  Duration T;
  double p_no_error = 1.0;
  double p_min = 1.0;
  double p_max = 1.0;
  double rate_hz = 0.0;
  /// True when the probability is a scaling estimate rather than exact.
  bool approximate = false;
};

/// Rejects SingleRail, which has no error detection to herald on.
HeraldingReport heralding_rate(const HeraldingInputs& in);

/// (1 + exp(-t/T2)) / 2.
double no_dephasing_prob(Duration t, Duration t2);

struct DephasingEstimate {
  double p = 1.0;
  /// Small-error approximation of 1 - p, 2 n^2 t / T2_q.
  double approx_infidelity = 0.0;
};

DephasingEstimate dephasing_no_error_prob(int n, Duration t, Duration t2_q,
                                          Duration t2_m = Duration::infinite());

/// 4 n_th n (n+1) T / T1 with the hybrid query time.
double thermal_infidelity_bound(int n, Duration t, Duration t1, double n_thermal);

/// eps * n (n-1): one distortion per conditional routing step.
double distortion_query_infidelity(int n, double eps);

/// exp(-n t_f / T1_q).
double f_decay_correction(int n, Duration t_f, Duration t1_q);

}  // namespace qramph
