#pragma once

// Monte Carlo loss, dephasing and thermal events on query trajectories.
// Excitation clocks run over the schedule's residence intervals; losses are
// propagated through the gate-level query and the end-of-query measurement
// decides whether the error was flagged.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qramph/qram.h"
#include "qramph/scheduler.h"
#include "qramph/units.h"

namespace qramph {

struct NoiseModel {
  Duration t1_q = Duration::us(100);
  Duration t1_m = Duration::us(2);
  Duration t2_q = Duration::infinite();
  Duration t2_m = Duration::infinite();
  double n_thermal = 0.0;
  /// Extra clock of length t_f per address qubit for |f> -> |e> decay
  /// during the hybrid release.
  bool f_decay = false;
};

void validate(const NoiseModel& noise);

enum class EventKind { Loss, FDecay, Dephase, Thermal };
std::string_view to_string(EventKind k);

struct NoiseEvent {
  double time_t = 0.0;  ///< units of t
  int excitation = 0;
  int rail = 0;
  Medium medium = Medium::Transmon;
  EventKind kind = EventKind::Loss;
  /// Slot the jump acted on; empty when the excitation had no support.
  std::string location;
};

struct TrajectoryVerdict {
  std::uint64_t seed = 0;
  std::vector<NoiseEvent> events;
  bool detected = false;
  /// Flagging register ("a2:f", "bus:00", ...); empty when not detected.
  std::string detection_basis;
  /// Overlap of the final state with the noiseless final state.
  double fidelity = 1.0;
};

/// Query input used for trajectories. Defaults to the uniform address
/// superposition and all-zero classical data.
struct TrajectoryInput {
  std::vector<cdouble> address;
  std::optional<DataRegister> data;
};

/// Samples clocks, propagates losses and measures. Accepts the hybrid and
/// standard vacuum encodings.
TrajectoryVerdict sample_trajectory(const QramConfig& cfg, const NoiseModel& noise, std::uint64_t seed,
                                    const TrajectoryInput& input = {});

/// Runs the query with the given events only. Loss and FDecay events act on
/// the state; other kinds are recorded.
TrajectoryVerdict run_with_events(const QramConfig& cfg, std::vector<NoiseEvent> events,
                                  const TrajectoryInput& input = {});

struct SuccessSample {
  double p = 0.0;
  double stderr_ = 0.0;
  long trials = 0;
};

/// Fraction of trajectories with no loss (clocks only, no propagation).
SuccessSample estimate_success_prob(const QramConfig& cfg, const NoiseModel& noise, long trials,
                                    std::uint64_t seed, int workers = 1);

/// Loss clocks alone, shared by the two entry points above.
std::vector<NoiseEvent> sample_events(const QramConfig& cfg, const NoiseModel& noise,
                                      std::mt19937_64& rng);

/// Independent stream for trajectory `index`.
std::mt19937_64 trajectory_rng(std::uint64_t seed, std::uint64_t index);
std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t index);

std::string verdict_json(const TrajectoryVerdict& v);

}  // namespace qramph
