#pragma once

// Sparse amplitude map over slot configurations. A configuration stores one
// 16-bit value per slot: register slots hold a transmon level (0 = g, 1 = e,
// 2 = f), all other slots hold 0 for vacuum or the tag of the excitation
// occupying them. Every gate is a permutation or a local unitary, so the
// gate set is tag-agnostic except for Exchange, which names the tag it
// creates.

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

namespace qramph {

using cdouble = std::complex<double>;
using Config = std::u16string;

enum class GateKind {
  Swap,      ///< exchange the contents of slots[0] and slots[1]
  Route,     ///< slots[0] occupied ? swap(slots[1], slots[3]) : swap(slots[1], slots[2])
  Exchange,  ///< register slots[0] at e with slots[1] empty <-> register g with slots[1] = tag
  CZ,        ///< phase -1 when slots[0] and slots[1] are both occupied
  Local,     ///< 3x3 unitary on the level of register slots[0]
  Pair,      ///< 2x2 unitary on {|10>, |01>} of register slots (slots[0], slots[1])
};

std::string_view to_string(GateKind k);

struct Gate {
  GateKind kind = GateKind::Swap;
  std::array<int, 4> slots{-1, -1, -1, -1};
  std::uint16_t tag = 0;
  /// Row-major; Local uses 3x3, Pair the leading 2x2 block.
  std::array<cdouble, 9> u{};
  double time = 0.0;  ///< units of the routing step t
  long seq = 0;
  std::string label;
  int excitation = -1;
  int rail = 0;
  int level = -1;
  bool outbound = false;
};

Gate make_swap(int a, int b, std::string label = "swap");
Gate make_route(int control, int source, int left, int right, std::string label = "route");
Gate make_exchange(int reg, int slot, std::uint16_t tag, std::string label = "exchange");
Gate make_cz(int a, int b, std::string label = "cz");
Gate make_local(int reg, const std::array<cdouble, 9>& u, std::string label);
Gate make_pair(int reg0, int reg1, const std::array<cdouble, 4>& u, std::string label);

/// Inverse gate (conjugate transpose for Local and Pair; the others are
/// involutions).
Gate inverse(const Gate& g);

class SparseState {
 public:
  SparseState() = default;
  explicit SparseState(int slot_count) : slots_(slot_count) {}

  int slot_count() const { return slots_; }
  const std::unordered_map<Config, cdouble>& amplitudes() const { return amps_; }
  std::size_t support() const { return amps_.size(); }

  void add(const Config& c, cdouble a);
  cdouble amplitude(const Config& c) const;
  Config ground() const { return Config(static_cast<std::size_t>(slots_), u'\0'); }

  /// In strict mode a Swap, Route or Exchange that would merge two
  /// occupied slots throws InvariantViolation.
  void apply(const Gate& g, bool strict = false);

  double norm() const;
  void normalize();
  /// Probability that `slot` is non-empty.
  double occupation(int slot) const;

  /// Removes one quantum from `slot` in every configuration where it is
  /// occupied (register level drops by one, other slots become vacuum) and
  /// discards the rest. A non-zero `only` restricts the jump to that tag.
  /// Returns the norm before renormalization.
  double annihilate(int slot, bool register_slot, std::uint16_t only = 0);
  /// Probability that `slot` holds `value`.
  double probability_of(int slot, std::uint16_t value) const;

  /// Draws a configuration with probability |amplitude|^2.
  Config sample(std::mt19937_64& rng) const;

  cdouble inner(const SparseState& other) const;

 private:
  void prune();

  int slots_ = 0;
  std::unordered_map<Config, cdouble> amps_;
};

}  // namespace qramph
