#pragma once

// Pipelined routing schedule for one QRAM query, in units of the routing
// step t. Excitation k in 0..n-1 is address qubit a_k, k = n is the bus.
// A flight at level j moves a payload across the waveguide of a level-j
// node (ancilla at level j to ancilla at level j+1, or to the data register
// for j = n-1). Transmon gate times are zero.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qramph/encoding.h"

namespace qramph {

enum class Direction { In, Out };
enum class Medium { Transmon, Waveguide };

std::string_view to_string(Direction d);
std::string_view to_string(Medium m);

/// One excitation (rail) occupying one time slot [slot, slot + 1).
/// `level` is the flight level for waveguide slots and the resting place for
/// transmon slots (-1 = register, n = data register side).
struct ScheduleEntry {
  int excitation = 0;
  int rail = 0;
  int level = 0;
  long slot = 0;
  Direction direction = Direction::In;
  Medium medium = Medium::Transmon;
};

struct Schedule {
  int n = 0;
  Encoding encoding = Encoding::HybridDualRail;
  long makespan_slots = 0;
  /// Every (excitation, rail, slot) appears exactly once.
  std::vector<ScheduleEntry> entries;

  int rails() const { return rails_per_qubit(encoding); }
  /// Start slot of the flight of (excitation, rail) at `level`, if any.
  std::optional<long> flight_slot(int excitation, int rail, int level, Direction dir) const;
};

/// ASAP pipelined schedule. Makespan is 2(2n-1) slots for single-rail and
/// hybrid encodings and 2(3n-1) for standard dual-rail.
Schedule build_schedule(int n, Encoding encoding);

struct ResidenceInterval {
  double start = 0.0;  ///< units of t
  double end = 0.0;
  Medium medium = Medium::Transmon;
  int level = 0;
};

/// Partition of [0, makespan] for one excitation rail, merged into maximal
/// runs of equal (medium, level). Throws InvalidParameter for unknown ids.
std::vector<ResidenceInterval> residence_intervals(const Schedule& schedule, int excitation,
                                                   int rail = 0);

double waveguide_time(const Schedule& schedule, int excitation, int rail = 0);

struct ScheduleReport {
  bool makespan_matches = false;
  bool residence_matches = false;
  std::vector<std::string> conflicts;

  bool ok() const { return makespan_matches && residence_matches && conflicts.empty(); }
};

/// Checks makespan against the closed-form query time, waveguide exclusivity
/// per level and slot, flight dependencies, and 2k waveguide slots per
/// excitation rail.
ScheduleReport validate_schedule(const Schedule& schedule);

std::string schedule_csv(const Schedule& schedule);
/// Gantt-ready JSON: per-excitation lanes of merged residence segments plus
/// the raw flight list.
std::string schedule_json(const Schedule& schedule);

}  // namespace qramph
