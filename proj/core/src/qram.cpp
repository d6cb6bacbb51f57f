#include "qramph/qram.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include <json.hpp>

#include "qramph/errors.h"

namespace qramph {

namespace {

constexpr double kS = std::numbers::sqrt2 / 2.0;

const std::array<cdouble, 9> kCyclic = {0, 0, 1, 1, 0, 0, 0, 1, 0};
const std::array<cdouble, 9> kXef = {1, 0, 0, 0, 0, 1, 0, 1, 0};
const std::array<cdouble, 9> kXge = {0, 1, 0, 1, 0, 0, 0, 0, 1};
const std::array<cdouble, 9> kHge = {kS, kS, 0, kS, -kS, 0, 0, 0, 1};
const std::array<cdouble, 4> kHpair = {kS, kS, kS, -kS};

constexpr int kMaxDepth = 8;

bool logical_init(Encoding e) { return e == Encoding::StandardDualRailLogical; }

int address_bit(long long j, int k, int n) { return static_cast<int>((j >> (n - 1 - k)) & 1); }

// Register value of logical bit v on rail r.
char16_t register_value(Encoding e, int v, int r) {
  if (is_standard_dual_rail(e)) return static_cast<char16_t>(r == v ? 1 : 0);
  return static_cast<char16_t>(v);
}

// Bus value routed into the tree as the quantum-read marker.
int marker_value(Encoding e) { return e == Encoding::HybridDualRail ? 0 : 1; }

// Decodes a register-held logical bit; -1 when the slots hold no valid code.
int decode_register(const QramLayout& L, const Config& c, int k) {
  if (L.rails() == 2) {
    char16_t a = c[L.reg(k, 0)], b = c[L.reg(k, 1)];
    if (a == 1 && b == 0) return 0;
    if (a == 0 && b == 1) return 1;
    return -1;
  }
  char16_t v = c[L.reg(k, 0)];
  return v <= 1 ? v : -1;
}

}  // namespace

void validate(const QramConfig& cfg) {
  if (cfg.n < 1 || cfg.n > kMaxDepth)
    throw InvalidParameter("tree depth n must be in 1.." + std::to_string(kMaxDepth));
  if (!(cfg.t.in_ns() > 0.0) || cfg.t.is_infinite())
    throw InvalidParameter("routing step t must be positive and finite");
  if (!(cfg.t_f.in_ns() >= 0.0) || cfg.t_f.is_infinite())
    throw InvalidParameter("t_f must be non-negative and finite");
}

DataRegister DataRegister::classical(std::vector<int> bits) {
  for (int b : bits)
    if (b != 0 && b != 1) throw InvalidParameter("classical data bits must be 0 or 1");
  DataRegister d;
  d.mode = DataMode::Classical;
  d.bits = std::move(bits);
  return d;
}

DataRegister DataRegister::quantum(std::vector<std::array<cdouble, 2>> qubits) {
  for (const auto& q : qubits) {
    if (std::abs(std::norm(q[0]) + std::norm(q[1]) - 1.0) > 1e-10)
      throw InvalidParameter("quantum data qubits must be normalized");
  }
  DataRegister d;
  d.mode = DataMode::Quantum;
  d.qubits = std::move(qubits);
  return d;
}

// ---------------------------------------------------------------- layout

QramLayout::QramLayout(int n, Encoding encoding)
    : n_(n), encoding_(encoding), rails_(rails_per_qubit(encoding)) {
  if (n < 1 || n > kMaxDepth)
    throw InvalidParameter("tree depth n must be in 1.." + std::to_string(kMaxDepth));
  const int R = rails_;
  const int nodes = (1 << n);
  const int leaves = 1 << n;
  auto rail_name = [R](int r) { return R == 2 ? "." + std::to_string(r) : std::string(); };

  reg_.assign((n + 1) * R, -1);
  for (int k = 0; k <= n; ++k)
    for (int r = 0; r < R; ++r)
      reg_[k * R + r] = add(SlotKind::Register, k, r,
                            (k == n ? "bus" : "a" + std::to_string(k)) + rail_name(r));
  for (int r = 0; r < R; ++r) out_[r] = add(SlotKind::Output, 0, r, "out" + rail_name(r));

  ctrl_.assign(nodes * R, -1);
  anc_.assign(nodes * R, -1);
  phon_.assign(nodes, -1);
  spare_.assign(nodes, -1);
  for (int m = 1; m < nodes; ++m) {
    const std::string id = std::to_string(m);
    for (int r = 0; r < R; ++r) ctrl_[m * R + r] = add(SlotKind::Control, m, r, "c" + id + rail_name(r));
    for (int r = 0; r < R; ++r) anc_[m * R + r] = add(SlotKind::Ancilla, m, r, "q" + id + rail_name(r));
    phon_[m] = add(SlotKind::Phonon, m, 0, "w" + id);
    if (logical_init(encoding)) spare_[m] = add(SlotKind::Spare, m, 0, "s" + id);
  }

  lanc_.assign(leaves * R, -1);
  data_.assign(leaves * R, -1);
  dph_.assign(leaves, -1);
  dhold_.assign(leaves * R, -1);
  for (int j = 0; j < leaves; ++j) {
    const std::string id = std::to_string(j);
    for (int r = 0; r < R; ++r) lanc_[j * R + r] = add(SlotKind::LeafAncilla, j, r, "l" + id + rail_name(r));
    for (int r = 0; r < R; ++r) data_[j * R + r] = add(SlotKind::Data, j, r, "d" + id + rail_name(r));
    dph_[j] = add(SlotKind::DataPhonon, j, 0, "dw" + id);
    for (int r = 0; r < R; ++r) dhold_[j * R + r] = add(SlotKind::DataHold, j, r, "dh" + id + rail_name(r));
  }
}

int QramLayout::add(SlotKind kind, int index, int rail, std::string name) {
  slots_.push_back({kind, index, rail, std::move(name)});
  return static_cast<int>(slots_.size()) - 1;
}

namespace {
int pick(const std::vector<int>& v, long long i, const char* what) {
  if (i < 0 || i >= static_cast<long long>(v.size()) || v[i] < 0)
    throw InvalidParameter(std::string("no ") + what + " slot at index " + std::to_string(i));
  return v[i];
}
}  // namespace

int QramLayout::reg(int k, int rail) const { return pick(reg_, static_cast<long long>(k) * rails_ + rail, "register"); }
int QramLayout::out(int rail) const {
  if (rail < 0 || rail >= rails_) throw InvalidParameter("no output rail " + std::to_string(rail));
  return out_[rail];
}
int QramLayout::ctrl(int node, int rail) const { return pick(ctrl_, static_cast<long long>(node) * rails_ + rail, "control"); }
int QramLayout::anc(int node, int rail) const { return pick(anc_, static_cast<long long>(node) * rails_ + rail, "ancilla"); }
int QramLayout::phon(int node) const { return pick(phon_, node, "waveguide"); }
int QramLayout::spare(int node) const { return pick(spare_, node, "spare"); }
int QramLayout::lanc(int leaf, int rail) const { return pick(lanc_, static_cast<long long>(leaf) * rails_ + rail, "leaf ancilla"); }
int QramLayout::data(int leaf, int rail) const { return pick(data_, static_cast<long long>(leaf) * rails_ + rail, "data"); }
int QramLayout::dph(int leaf) const { return pick(dph_, leaf, "data waveguide"); }
int QramLayout::dhold(int leaf, int rail) const { return pick(dhold_, static_cast<long long>(leaf) * rails_ + rail, "data hold"); }

bool QramLayout::is_register(int slot) const {
  auto k = info(slot).kind;
  return k == SlotKind::Register;
}

bool QramLayout::is_waveguide(int slot) const {
  auto k = info(slot).kind;
  return k == SlotKind::Phonon || k == SlotKind::DataPhonon;
}

bool QramLayout::is_tree(int slot) const {
  switch (info(slot).kind) {
    case SlotKind::Control:
    case SlotKind::Ancilla:
    case SlotKind::Phonon:
    case SlotKind::Spare:
    case SlotKind::LeafAncilla:
    case SlotKind::DataPhonon:
    case SlotKind::DataHold:
      return true;
    default:
      return false;
  }
}

long long QramLayout::leaf_of(long long address) const {
  if (address < 0 || address >= leaves()) throw InvalidParameter("address out of range");
  return encoding_ == Encoding::HybridDualRail ? leaves() - 1 - address : address;
}

// --------------------------------------------------------------- machine

QramMachine::QramMachine(const QramConfig& cfg, const DataRegister& data,
                         const std::vector<cdouble>& address, bool strict)
    : cfg_(cfg),
      layout_(cfg.n, cfg.encoding),
      schedule_(build_schedule(cfg.n, cfg.encoding)),
      data_(data),
      strict_(strict),
      state_(layout_.slot_count()),
      released_(cfg.n + 1, false),
      reached_(cfg.n + 1, 0),
      set_(cfg.n, false) {
  validate(cfg);
  const int n = cfg.n;
  const int R = layout_.rails();
  const long long N = layout_.leaves();
  if (static_cast<long long>(data.size()) != N)
    throw InvalidParameter("data register has " + std::to_string(data.size()) + " entries, expected " +
                           std::to_string(N));
  if (static_cast<long long>(address.size()) != N)
    throw InvalidParameter("address state has " + std::to_string(address.size()) +
                           " amplitudes, expected " + std::to_string(N));
  double norm2 = 0.0;
  for (auto a : address) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > 1e-10) throw InvalidParameter("address state must be normalized");

  flights_.assign(n + 1, std::vector<std::vector<long>>(R, std::vector<long>(n, -1)));
  for (const auto& e : schedule_.entries) {
    if (e.medium == Medium::Waveguide && e.direction == Direction::In)
      flights_[e.excitation][e.rail][e.level] = e.slot;
  }

  // Environment shared by every branch: tree in its idle state, data loaded.
  std::vector<std::pair<Config, cdouble>> env = {{state_.ground(), 1.0}};
  if (logical_init(cfg.encoding)) {
    for (int m = 1; m < N; ++m) env[0].first[layout_.ctrl(m, 0)] = QramLayout::init_tag(m);
  }
  for (long long j = 0; j < N; ++j) {
    const int leaf = static_cast<int>(layout_.leaf_of(j));
    if (data.mode == DataMode::Classical) {
      if (data.bits[j]) for (auto& [c, a] : env) c[layout_.data(leaf, 0)] = QramLayout::data_tag(leaf, 0);
      continue;
    }
    std::vector<std::pair<Config, cdouble>> grown;
    for (int v = 0; v < 2; ++v) {
      cdouble q = data.qubits[j][v];
      if (q == cdouble{}) continue;
      for (auto [c, a] : env) {
        if (R == 2) {
          c[layout_.data(leaf, v)] = QramLayout::data_tag(leaf, v);
        } else if (v == 1) {
          c[layout_.data(leaf, 0)] = QramLayout::data_tag(leaf, 0);
        }
        grown.emplace_back(c, a * q);
      }
    }
    env = std::move(grown);
    if (env.size() > (1u << 20)) throw InvalidParameter("quantum data register too large to track");
  }

  std::vector<std::pair<int, cdouble>> bus;
  if (data.mode == DataMode::Classical) {
    bus = {{0, kS}, {1, kS}};
  } else {
    bus = {{marker_value(cfg.encoding), 1.0}};
  }

  for (long long j = 0; j < N; ++j) {
    if (address[j] == cdouble{}) continue;
    for (const auto& [bv, ba] : bus) {
      for (const auto& [c0, ea] : env) {
        Config c = c0;
        for (int k = 0; k < n; ++k)
          for (int r = 0; r < R; ++r)
            c[layout_.reg(k, r)] = register_value(cfg.encoding, address_bit(j, k, n), r);
        for (int r = 0; r < R; ++r) c[layout_.reg(n, r)] = register_value(cfg.encoding, bv, r);
        state_.add(c, address[j] * ba * ea);
      }
    }
  }
  max_support_ = state_.support();
}

void QramMachine::require(bool ok, const std::string& what) const {
  if (!ok) throw ProtocolOrderError(what);
}

double QramMachine::flight_time(int k, int rail, int level) const {
  return static_cast<double>(flights_.at(k).at(rail).at(level));
}

double QramMachine::arrival_time(int k, int rail) const {
  return k == 0 ? 0.0 : flight_time(k, rail, k - 1) + 1.0;
}

double QramMachine::release_time(int k, int rail) const {
  return k == 0 ? 0.0 : flight_time(k, rail, 0);
}

void QramMachine::emit(Gate g) {
  g.seq = seq_++;
  state_.apply(g, strict_);
  max_support_ = std::max(max_support_, state_.support());
  trace_.push_back(std::move(g));
}

void QramMachine::release(int k) {
  if (cfg_.encoding == Encoding::HybridDualRail) {
    hybrid_release(k);
    return;
  }
  require(k >= 0 && k <= cfg_.n, "no excitation " + std::to_string(k));
  require(!released_[k], "excitation " + std::to_string(k) + " already released");
  require(k == 0 || (k == 1 ? set_[0] : reached_[k - 1] >= 1),
          "root ancilla still holds the previous payload");
  for (int r = 0; r < layout_.rails(); ++r) {
    Gate g = make_exchange(layout_.reg(k, r), layout_.anc(1, r), QramLayout::address_tag(k, r), "release");
    g.time = release_time(k, r);
    g.excitation = k;
    g.rail = r;
    emit(std::move(g));
  }
  released_[k] = true;
}

void QramMachine::hybrid_release(int k) {
  if (cfg_.encoding != Encoding::HybridDualRail)
    throw InvalidParameter("hybrid release needs the hybrid encoding");
  require(k >= 0 && k <= cfg_.n, "no excitation " + std::to_string(k));
  require(!released_[k], "excitation " + std::to_string(k) + " already released");
  require(state_.occupation(layout_.anc(1)) < 1e-12, "root is not in its ground state");
  const int reg = layout_.reg(k);
  const double t = release_time(k, 0);
  Gate shelve = make_local(reg, kCyclic, "ladder_shelve");
  Gate give = make_exchange(reg, layout_.anc(1), QramLayout::address_tag(k, 0), "ladder_exchange");
  Gate unshelve = make_local(reg, kXef, "ladder_unshelve");
  for (Gate* g : {&shelve, &give, &unshelve}) {
    g->time = t;
    g->excitation = k;
    emit(std::move(*g));
  }
  released_[k] = true;
}

void QramMachine::route_address(int k, int level) {
  const int n = cfg_.n;
  require(k >= 1 && k <= n, "excitation " + std::to_string(k) + " is never routed");
  require(level >= 0 && level < n, "cannot route past level " + std::to_string(n - 1));
  require(level < k, "excitation " + std::to_string(k) + " stops at level " + std::to_string(k));
  require(released_[k], "excitation " + std::to_string(k) + " not released");
  require(reached_[k] == level, "excitation " + std::to_string(k) + " is not at level " + std::to_string(level));
  require(set_[level], "controls at level " + std::to_string(level) + " not set");
  const int R = layout_.rails();
  const int first = 1 << level;
  for (int r = 0; r < R; ++r) {
    const double s = flight_time(k, r, level);
    for (int m = first; m < 2 * first; ++m) {
      Gate e = make_swap(layout_.anc(m, r), layout_.phon(m), "emit");
      e.time = s;
      e.excitation = k;
      e.rail = r;
      e.level = level;
      emit(std::move(e));
    }
    for (int m = first; m < 2 * first; ++m) {
      int left, right;
      if (level + 1 < n) {
        left = layout_.anc(2 * m, r);
        right = layout_.anc(2 * m + 1, r);
      } else {
        const int base = 2 * (m - first);
        left = layout_.lanc(base, r);
        right = layout_.lanc(base + 1, r);
      }
      Gate g = make_route(layout_.ctrl(m, R - 1), layout_.phon(m), left, right, "route");
      g.time = s + 1.0;
      g.excitation = k;
      g.rail = r;
      g.level = level;
      emit(std::move(g));
    }
  }
  reached_[k] = level + 1;
}

void QramMachine::set_address(int k) {
  require(k >= 0 && k < cfg_.n, "excitation " + std::to_string(k) + " is not an address");
  require(released_[k] && reached_[k] == k, "address " + std::to_string(k) + " has not reached level " +
                                                std::to_string(k));
  require(!set_[k], "level " + std::to_string(k) + " already set");
  const int first = 1 << k;
  for (int r = 0; r < layout_.rails(); ++r) {
    for (int m = first; m < 2 * first; ++m) {
      if (logical_init(cfg_.encoding) && r == 0) {
        Gate p = make_swap(layout_.ctrl(m, 0), layout_.spare(m), "park");
        p.time = arrival_time(k, r);
        p.excitation = k;
        p.level = k;
        emit(std::move(p));
      }
      Gate g = make_swap(layout_.anc(m, r), layout_.ctrl(m, r), "set");
      g.time = arrival_time(k, r);
      g.excitation = k;
      g.rail = r;
      g.level = k;
      emit(std::move(g));
    }
  }
  set_[k] = true;
}

void QramMachine::read_classical() {
  if (data_.mode != DataMode::Classical) throw InvalidParameter("data register is not classical");
  require(reached_[cfg_.n] == cfg_.n, "bus has not reached the leaves");
  require(!read_done_, "data already read");
  route_in_end_ = trace_.size();
  const double t = static_cast<double>(schedule_.makespan_slots) / 2.0;
  const int R = layout_.rails();
  for (int leaf = 0; leaf < layout_.leaves(); ++leaf) {
    Gate g = make_cz(layout_.data(leaf, 0), layout_.lanc(leaf, R - 1), "read");
    g.time = t;
    emit(std::move(g));
  }
  read_span_ = 0.0;
  read_done_ = true;
}

void QramMachine::read_quantum() {
  if (data_.mode != DataMode::Quantum) throw InvalidParameter("data register is not quantum");
  require(reached_[cfg_.n] == cfg_.n, "bus has not reached the leaves");
  require(!read_done_, "data already read");
  route_in_end_ = trace_.size();
  const int n = cfg_.n;
  const int R = layout_.rails();
  const int N = static_cast<int>(layout_.leaves());
  const double t0 = static_cast<double>(schedule_.makespan_slots) / 2.0;

  for (int r = 0; r < R; ++r) {
    for (int leaf = 0; leaf < N; ++leaf) {
      Gate e = make_swap(layout_.data(leaf, r), layout_.dph(leaf), "data_emit");
      e.time = t0 + r;
      e.rail = r;
      e.level = n;
      emit(std::move(e));
    }
    for (int leaf = 0; leaf < N; ++leaf) {
      Gate g = make_route(layout_.lanc(leaf, R - 1), layout_.dph(leaf), layout_.data(leaf, r),
                          layout_.dhold(leaf, r), "data_route");
      g.time = t0 + r + 1;
      g.rail = r;
      g.level = n;
      emit(std::move(g));
    }
  }

  double tau = t0 + R;
  for (int r = 0; r < R; ++r) {
    for (int level = n - 1; level >= 0; --level) {
      const int first = 1 << level;
      const double at = tau + (n - 1 - level);
      for (int m = first; m < 2 * first; ++m) {
        int left, right;
        if (level + 1 < n) {
          left = layout_.anc(2 * m, r);
          right = layout_.anc(2 * m + 1, r);
        } else {
          const int base = 2 * (m - first);
          left = layout_.dhold(base, r);
          right = layout_.dhold(base + 1, r);
        }
        Gate g = make_route(layout_.ctrl(m, R - 1), layout_.phon(m), left, right, "data_up");
        g.time = at;
        g.rail = r;
        g.level = level;
        g.outbound = true;
        emit(std::move(g));
      }
      for (int m = first; m < 2 * first; ++m) {
        Gate a = make_swap(layout_.phon(m), layout_.anc(m, r), "data_absorb");
        a.time = at + 1.0;
        a.rail = r;
        a.level = level;
        a.outbound = true;
        emit(std::move(a));
      }
    }
    Gate o = make_swap(layout_.anc(1, r), layout_.out(r), "data_out");
    o.time = tau + n;
    o.rail = r;
    o.outbound = true;
    emit(std::move(o));
    tau += n + 1;
  }
  read_span_ = tau - t0;
  read_done_ = true;
}

void QramMachine::route_out() {
  require(read_done_, "route-out before the data read");
  require(!routed_out_, "already routed out");
  const double end = static_cast<double>(schedule_.makespan_slots) + read_span_;
  std::vector<Gate> back(trace_.begin(), trace_.begin() + static_cast<long>(route_in_end_));
  for (auto it = back.rbegin(); it != back.rend(); ++it) {
    Gate g = inverse(*it);
    g.time = end - it->time;
    g.outbound = true;
    emit(std::move(g));
  }
  routed_out_ = true;
}

void QramMachine::decode_bus() {
  require(routed_out_, "bus decode before route-out");
  if (data_.mode != DataMode::Classical) return;
  const double t = static_cast<double>(schedule_.makespan_slots) + read_span_;
  const int n = cfg_.n;
  std::vector<Gate> gates;
  switch (cfg_.encoding) {
    case Encoding::SingleRail:
      gates.push_back(make_local(layout_.reg(n), kHge, "decode_h"));
      break;
    case Encoding::HybridDualRail:
      gates.push_back(make_local(layout_.reg(n), kXge, "decode_x"));
      gates.push_back(make_local(layout_.reg(n), kHge, "decode_h"));
      break;
    default:
      gates.push_back(make_pair(layout_.reg(n, 0), layout_.reg(n, 1), kHpair, "decode_h"));
      break;
  }
  for (auto& g : gates) {
    g.time = t;
    g.excitation = n;
    emit(std::move(g));
  }
}

void QramMachine::run() {
  const int n = cfg_.n;
  for (int k = 0; k <= n; ++k) {
    release(k);
    for (int level = 0; level < k; ++level) route_address(k, level);
    if (k < n) set_address(k);
  }
  if (data_.mode == DataMode::Classical) {
    read_classical();
  } else {
    read_quantum();
  }
  route_out();
  decode_bus();
}

// ----------------------------------------------------------------- query

namespace {

double reduced_purity(const QramLayout& L, const SparseState& s) {
  std::vector<int> regs;
  for (int k = 0; k <= L.n(); ++k)
    for (int r = 0; r < L.rails(); ++r) regs.push_back(L.reg(k, r));
  std::map<Config, std::map<Config, cdouble>> by_env;
  for (const auto& [c, a] : s.amplitudes()) {
    Config env = c, sys;
    for (int slot : regs) {
      sys.push_back(c[slot]);
      env[slot] = 0;
    }
    by_env[env][sys] += a;
  }
  std::vector<const std::map<Config, cdouble>*> vecs;
  for (const auto& [e, v] : by_env) vecs.push_back(&v);
  double purity = 0.0;
  for (const auto* a : vecs) {
    for (const auto* b : vecs) {
      cdouble ov{};
      for (const auto& [sys, x] : *a) {
        auto it = b->find(sys);
        if (it != b->end()) ov += std::conj(x) * it->second;
      }
      purity += std::norm(ov);
    }
  }
  const double n2 = s.norm() * s.norm();
  return n2 > 0.0 ? purity / (n2 * n2) : 0.0;
}

}  // namespace

QueryResult query(const QramConfig& cfg, const std::vector<cdouble>& address,
                  const DataRegister& data) {
  QramMachine m(cfg, data, address);
  const QramLayout& L = m.layout();
  // Tree and data slots as prepared, read from any initial configuration.
  Config idle = m.state().amplitudes().begin()->first;
  m.run();

  QueryResult res;
  res.final_state = m.state();
  res.trace = m.trace();
  res.max_support = m.max_support();
  res.norm_error = std::abs(res.final_state.norm() - 1.0);
  for (const auto& g : res.trace) res.duration_t = std::max(res.duration_t, g.time);

  const int n = cfg.n;
  const int R = L.rails();
  const long long N = L.leaves();
  const bool quantum = data.mode == DataMode::Quantum;

  for (int slot = 0; slot < L.slot_count(); ++slot) {
    auto kind = L.info(slot).kind;
    if (kind != SlotKind::Control && kind != SlotKind::Ancilla && kind != SlotKind::Phonon &&
        kind != SlotKind::Spare && kind != SlotKind::LeafAncilla && kind != SlotKind::DataPhonon &&
        kind != SlotKind::DataHold)
      continue;
    double off = 0.0;
    for (const auto& [c, a] : res.final_state.amplitudes())
      if (c[slot] != idle[slot]) off += std::norm(a);
    res.tree_residual = std::max(res.tree_residual, off);
  }

  res.logical.assign(static_cast<std::size_t>(2 * N), cdouble{});
  for (const auto& [c, a] : res.final_state.amplitudes()) {
    long long j = 0;
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      int b = decode_register(L, c, k);
      ok = b >= 0;
      j = (j << 1) | std::max(b, 0);
    }
    int bus = ok ? decode_register(L, c, n) : -1;
    ok = ok && bus >= 0;
    for (int slot = 0; slot < L.slot_count() && ok; ++slot)
      if (L.is_tree(slot) && c[slot] != idle[slot]) ok = false;
    if (!ok) continue;

    cdouble weight = 1.0;
    int bit = bus;
    if (!quantum) {
      for (int r = 0; r < R && ok; ++r) ok = c[L.out(r)] == 0;
      for (long long i = 0; i < N && ok; ++i) {
        int leaf = static_cast<int>(L.leaf_of(i));
        for (int r = 0; r < R; ++r) ok = ok && c[L.data(leaf, r)] == idle[L.data(leaf, r)];
      }
    } else {
      ok = bus == marker_value(cfg.encoding);
      if (R == 2) {
        bool o0 = c[L.out(0)] != 0, o1 = c[L.out(1)] != 0;
        bit = (o0 != o1) ? (o1 ? 1 : 0) : -1;
      } else {
        bit = c[L.out(0)] != 0 ? 1 : 0;
      }
      ok = ok && bit >= 0;
      for (long long i = 0; i < N && ok; ++i) {
        int leaf = static_cast<int>(L.leaf_of(i));
        int v;
        if (R == 2) {
          bool d0 = c[L.data(leaf, 0)] != 0, d1 = c[L.data(leaf, 1)] != 0;
          v = (!d0 && !d1) ? -1 : (d0 != d1 ? (d1 ? 1 : 0) : -2);
        } else {
          v = c[L.data(leaf, 0)] != 0 ? 1 : 0;
        }
        if (i == j) {
          ok = R == 2 ? v == -1 : v == 0;
        } else {
          ok = v >= 0;
          if (ok) weight *= std::conj(data.qubits[i][v]);
        }
      }
    }
    if (!ok) continue;
    res.logical[2 * j + bit] += weight * a;
  }
  double captured = 0.0;
  for (auto x : res.logical) captured += std::norm(x);
  res.leaked = std::max(0.0, 1.0 - captured);
  res.purity = quantum ? std::numeric_limits<double>::quiet_NaN() : reduced_purity(L, res.final_state);
  return res;
}

std::vector<Gate> time_ordered(std::vector<Gate> gates) {
  std::stable_sort(gates.begin(), gates.end(), [](const Gate& a, const Gate& b) {
    return a.time != b.time ? a.time < b.time : a.seq < b.seq;
  });
  return gates;
}

std::string trace_json(const QramLayout& layout, const std::vector<Gate>& gates) {
  using nlohmann::json;
  json list = json::array();
  for (const auto& g : gates) {
    json slots = json::array();
    for (int s : g.slots)
      if (s >= 0) slots.push_back(layout.info(s).name);
    json item = {{"seq", g.seq},      {"time_t", g.time},       {"kind", to_string(g.kind)},
                 {"label", g.label},  {"slots", slots},         {"direction", g.outbound ? "out" : "in"}};
    if (g.excitation >= 0) item["k"] = g.excitation;
    if (g.level >= 0) item["level"] = g.level;
    if (layout.rails() == 2) item["rail"] = g.rail;
    list.push_back(std::move(item));
  }
  return json{{"n", layout.n()}, {"encoding", to_string(layout.encoding())}, {"gates", list}}.dump(2);
}

}  // namespace qramph
