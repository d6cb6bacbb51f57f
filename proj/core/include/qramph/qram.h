#pragma once

// Gate-level bucket-brigade query over a binary tree of depth n. Tree nodes
// use heap numbering (root 1, children 2m and 2m+1); leaves are 0..N-1.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qramph/encoding.h"
#include "qramph/scheduler.h"
#include "qramph/sparse_state.h"
#include "qramph/units.h"

namespace qramph {

struct QramConfig {
  int n = 1;
  Duration t = Duration::ns(350);
  /// Time the register spends in |f> during a hybrid release.
  Duration t_f = Duration::ns(0);
  Encoding encoding = Encoding::HybridDualRail;
};

void validate(const QramConfig& cfg);

enum class DataMode { Classical, Quantum };

struct DataRegister {
  DataMode mode = DataMode::Classical;
  std::vector<int> bits;
  /// Amplitudes (|0>, |1>) of each quantum data qubit.
  std::vector<std::array<cdouble, 2>> qubits;

  static DataRegister classical(std::vector<int> bits);
  static DataRegister quantum(std::vector<std::array<cdouble, 2>> qubits);
  std::size_t size() const { return mode == DataMode::Classical ? bits.size() : qubits.size(); }
};

enum class SlotKind {
  Register,     ///< address qubits k < n and the bus k = n
  Output,       ///< bus output for quantum reads
  Control,
  Ancilla,
  Phonon,       ///< node waveguide
  Spare,        ///< parking for displaced control excitations
  LeafAncilla,  ///< bus landing site; controls the data read
  Data,
  DataPhonon,
  DataHold,     ///< queried data on its way up
};

struct SlotInfo {
  SlotKind kind;
  int index = 0;  ///< excitation, node or leaf
  int rail = 0;
  std::string name;
};

class QramLayout {
 public:
  QramLayout(int n, Encoding encoding);

  int n() const { return n_; }
  long long leaves() const { return 1LL << n_; }
  int rails() const { return rails_; }
  Encoding encoding() const { return encoding_; }
  int slot_count() const { return static_cast<int>(slots_.size()); }
  const SlotInfo& info(int slot) const { return slots_.at(slot); }

  int reg(int k, int rail = 0) const;
  int out(int rail = 0) const;
  int ctrl(int node, int rail = 0) const;
  int anc(int node, int rail = 0) const;
  int phon(int node) const;
  int spare(int node) const;
  int lanc(int leaf, int rail = 0) const;
  int data(int leaf, int rail = 0) const;
  int dph(int leaf) const;
  int dhold(int leaf, int rail = 0) const;

  bool is_register(int slot) const;
  bool is_waveguide(int slot) const;
  bool is_tree(int slot) const;

  /// Leaf reached by address j. Hybrid routes right on an occupied control,
  /// which holds the excitation for bit 0, so the leaf is N-1-j.
  long long leaf_of(long long address) const;

  static std::uint16_t address_tag(int k, int rail) { return static_cast<std::uint16_t>(1 + 2 * k + rail); }
  static std::uint16_t data_tag(int leaf, int rail) { return static_cast<std::uint16_t>(256 + 2 * leaf + rail); }
  static std::uint16_t init_tag(int node) { return static_cast<std::uint16_t>(1024 + node); }

 private:
  int add(SlotKind kind, int index, int rail, std::string name);

  int n_;
  Encoding encoding_;
  int rails_;
  std::vector<SlotInfo> slots_;
  std::vector<int> reg_, ctrl_, anc_, phon_, spare_, lanc_, data_, dph_, dhold_;
  std::array<int, 2> out_{};
};

/// Stateful protocol runner. Each step emits its gates with schedule
/// timestamps, applies them immediately and appends them to the trace.
class QramMachine {
 public:
  QramMachine(const QramConfig& cfg, const DataRegister& data, const std::vector<cdouble>& address,
              bool strict = true);

  const QramConfig& config() const { return cfg_; }
  const QramLayout& layout() const { return layout_; }
  const Schedule& schedule() const { return schedule_; }
  const SparseState& state() const { return state_; }
  const std::vector<Gate>& trace() const { return trace_; }
  std::size_t max_support() const { return max_support_; }

  /// Moves excitation k from its register into the root ancilla.
  void release(int k);
  /// Hybrid release through the |f> ladder; needs an empty root.
  void hybrid_release(int k);
  /// One routing step of payload k from level `level` to level + 1.
  void route_address(int k, int level);
  /// Payload k, waiting in the level-k ancillas, becomes the level-k control.
  void set_address(int k);
  void read_classical();
  void read_quantum();
  /// Replays every gate so far in reverse with mirrored timestamps.
  void route_out();
  /// Maps the bus back to the computational basis (classical reads).
  void decode_bus();

  /// Full route-in, read, route-out and decode.
  void run();

 private:
  void emit(Gate g);
  double flight_time(int k, int rail, int level) const;
  double arrival_time(int k, int rail) const;
  double release_time(int k, int rail) const;
  void require(bool ok, const std::string& what) const;

  QramConfig cfg_;
  QramLayout layout_;
  Schedule schedule_;
  DataRegister data_;
  bool strict_;
  SparseState state_;
  std::vector<Gate> trace_;
  long seq_ = 0;
  std::size_t max_support_ = 0;
  std::vector<std::vector<std::vector<long>>> flights_;
  std::vector<bool> released_;
  std::vector<int> reached_;
  std::vector<bool> set_;
  std::size_t route_in_end_ = 0;
  bool read_done_ = false;
  bool routed_out_ = false;
  double read_span_ = 0.0;
};

struct QueryResult {
  SparseState final_state;
  std::vector<Gate> trace;
  /// Classical reads: amplitude of |j>_a |b>_bus at index 2j + b, read off
  /// configurations whose tree and data slots are in their initial values.
  /// Quantum reads: amplitude of |j>_a |b>_out at 2j + b with data slot j
  /// vacated and all other data restored.
  std::vector<cdouble> logical;
  /// Population outside the configurations counted in `logical`.
  double leaked = 0.0;
  /// Largest occupation of any control, ancilla, phonon or spare slot.
  double tree_residual = 0.0;
  /// Purity of the reduced address-and-bus state; NaN for quantum reads.
  double purity = 0.0;
  double norm_error = 0.0;
  std::size_t max_support = 0;
  /// Trace length in units of t.
  double duration_t = 0.0;
};

QueryResult query(const QramConfig& cfg, const std::vector<cdouble>& address,
                  const DataRegister& data);

/// Sorts gates by (time, seq), the order the hardware executes them in.
std::vector<Gate> time_ordered(std::vector<Gate> gates);

/// {"gates": [{"seq", "time_t", "kind", "label", "slots", ...}]}
std::string trace_json(const QramLayout& layout, const std::vector<Gate>& gates);

}  // namespace qramph
