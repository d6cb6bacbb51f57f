#include "qramph/sparse_state.h"

#include <cmath>
#include <utility>

#include "qramph/errors.h"

namespace qramph {

namespace {

constexpr double kPruneProbability = 1e-30;

void check_slot(int slot, int count) {
  if (slot < 0 || slot >= count)
    throw InvariantViolation("slot index " + std::to_string(slot) + " out of range");
}

}  // namespace

std::string_view to_string(GateKind k) {
  switch (k) {
    case GateKind::Swap: return "swap";
    case GateKind::Route: return "route";
    case GateKind::Exchange: return "exchange";
    case GateKind::CZ: return "cz";
    case GateKind::Local: return "local";
    case GateKind::Pair: return "pair";
  }
  return "unknown";
}

Gate make_swap(int a, int b, std::string label) {
  Gate g;
  g.kind = GateKind::Swap;
  g.slots = {a, b, -1, -1};
  g.label = std::move(label);
  return g;
}

Gate make_route(int control, int source, int left, int right, std::string label) {
  Gate g;
  g.kind = GateKind::Route;
  g.slots = {control, source, left, right};
  g.label = std::move(label);
  return g;
}

Gate make_exchange(int reg, int slot, std::uint16_t tag, std::string label) {
  if (tag == 0) throw InvalidParameter("exchange tag must be non-zero");
  Gate g;
  g.kind = GateKind::Exchange;
  g.slots = {reg, slot, -1, -1};
  g.tag = tag;
  g.label = std::move(label);
  return g;
}

Gate make_cz(int a, int b, std::string label) {
  Gate g;
  g.kind = GateKind::CZ;
  g.slots = {a, b, -1, -1};
  g.label = std::move(label);
  return g;
}

Gate make_local(int reg, const std::array<cdouble, 9>& u, std::string label) {
  Gate g;
  g.kind = GateKind::Local;
  g.slots = {reg, -1, -1, -1};
  g.u = u;
  g.label = std::move(label);
  return g;
}

Gate make_pair(int reg0, int reg1, const std::array<cdouble, 4>& u, std::string label) {
  Gate g;
  g.kind = GateKind::Pair;
  g.slots = {reg0, reg1, -1, -1};
  g.u = {u[0], u[1], 0.0, u[2], u[3], 0.0, 0.0, 0.0, 0.0};
  g.label = std::move(label);
  return g;
}

Gate inverse(const Gate& g) {
  Gate out = g;
  if (g.kind == GateKind::Local || g.kind == GateKind::Pair) {
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) out.u[r * 3 + c] = std::conj(g.u[c * 3 + r]);
  }
  return out;
}

void SparseState::add(const Config& c, cdouble a) {
  if (static_cast<int>(c.size()) != slots_)
    throw InvariantViolation("configuration has " + std::to_string(c.size()) + " slots, expected " +
                             std::to_string(slots_));
  amps_[c] += a;
}

cdouble SparseState::amplitude(const Config& c) const {
  auto it = amps_.find(c);
  return it == amps_.end() ? cdouble{} : it->second;
}

void SparseState::apply(const Gate& g, bool strict) {
  for (int s : g.slots)
    if (s != -1) check_slot(s, slots_);

  std::unordered_map<Config, cdouble> next;
  next.reserve(amps_.size() * 2);
  auto merge_check = [&](char16_t a, char16_t b) {
    if (strict && a != 0 && b != 0)
      throw InvariantViolation("gate '" + g.label + "' would move an excitation into an occupied slot");
  };

  for (const auto& [cfg, amp] : amps_) {
    Config c = cfg;
    switch (g.kind) {
      case GateKind::Swap: {
        merge_check(c[g.slots[0]], c[g.slots[1]]);
        std::swap(c[g.slots[0]], c[g.slots[1]]);
        next[c] += amp;
        break;
      }
      case GateKind::Route: {
        int target = c[g.slots[0]] != 0 ? g.slots[3] : g.slots[2];
        merge_check(c[g.slots[1]], c[target]);
        std::swap(c[g.slots[1]], c[target]);
        next[c] += amp;
        break;
      }
      case GateKind::Exchange: {
        char16_t& reg = c[g.slots[0]];
        char16_t& field = c[g.slots[1]];
        if (reg == 1 && field == 0) {
          reg = 0;
          field = g.tag;
        } else if (reg == 0 && field == g.tag) {
          reg = 1;
          field = 0;
        } else {
          merge_check(reg == 1 ? 1 : 0, field);
        }
        next[c] += amp;
        break;
      }
      case GateKind::CZ: {
        bool flip = c[g.slots[0]] != 0 && c[g.slots[1]] != 0;
        next[c] += flip ? -amp : amp;
        break;
      }
      case GateKind::Local: {
        int v = c[g.slots[0]];
        if (v > 2) throw InvariantViolation("local gate '" + g.label + "' on a non-register value");
        for (int w = 0; w < 3; ++w) {
          cdouble m = g.u[w * 3 + v];
          if (m == cdouble{}) continue;
          c[g.slots[0]] = static_cast<char16_t>(w);
          next[c] += m * amp;
        }
        break;
      }
      case GateKind::Pair: {
        char16_t a = c[g.slots[0]];
        char16_t b = c[g.slots[1]];
        int col = (a == 1 && b == 0) ? 0 : (a == 0 && b == 1) ? 1 : -1;
        if (col < 0) {
          next[c] += amp;
          break;
        }
        for (int row = 0; row < 2; ++row) {
          cdouble m = g.u[row * 3 + col];
          if (m == cdouble{}) continue;
          c[g.slots[0]] = row == 0 ? 1 : 0;
          c[g.slots[1]] = row == 0 ? 0 : 1;
          next[c] += m * amp;
        }
        break;
      }
    }
  }
  amps_ = std::move(next);
  prune();
}

void SparseState::prune() {
  std::erase_if(amps_, [](const auto& kv) { return std::norm(kv.second) < kPruneProbability; });
}

double SparseState::norm() const {
  double s = 0.0;
  for (const auto& [c, a] : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void SparseState::normalize() {
  double n = norm();
  if (n == 0.0) throw NumericalFailure("cannot normalize an empty state");
  for (auto& [c, a] : amps_) a /= n;
}

double SparseState::occupation(int slot) const {
  check_slot(slot, slots_);
  double p = 0.0;
  for (const auto& [c, a] : amps_)
    if (c[slot] != 0) p += std::norm(a);
  return p;
}

double SparseState::probability_of(int slot, std::uint16_t value) const {
  check_slot(slot, slots_);
  double p = 0.0;
  for (const auto& [c, a] : amps_)
    if (c[slot] == value) p += std::norm(a);
  return p;
}

double SparseState::annihilate(int slot, bool register_slot, std::uint16_t only) {
  check_slot(slot, slots_);
  std::unordered_map<Config, cdouble> next;
  for (const auto& [cfg, amp] : amps_) {
    if (cfg[slot] == 0 || (only != 0 && cfg[slot] != only)) continue;
    Config c = cfg;
    double factor = 1.0;
    if (register_slot) {
      factor = std::sqrt(static_cast<double>(c[slot]));
      c[slot] = static_cast<char16_t>(c[slot] - 1);
    } else {
      c[slot] = 0;
    }
    next[c] += factor * amp;
  }
  amps_ = std::move(next);
  double n = norm();
  if (n > 0.0) normalize();
  return n;
}

Config SparseState::sample(std::mt19937_64& rng) const {
  if (amps_.empty()) throw NumericalFailure("cannot sample an empty state");
  std::vector<const Config*> cfgs;
  std::vector<double> weights;
  cfgs.reserve(amps_.size());
  weights.reserve(amps_.size());
  for (const auto& [c, a] : amps_) {
    cfgs.push_back(&c);
    weights.push_back(std::norm(a));
  }
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  return *cfgs[pick(rng)];
}

cdouble SparseState::inner(const SparseState& other) const {
  cdouble s{};
  const auto& small = amps_.size() <= other.amps_.size() ? amps_ : other.amps_;
  bool this_small = &small == &amps_;
  for (const auto& [c, a] : small) {
    cdouble b = this_small ? other.amplitude(c) : amplitude(c);
    s += this_small ? std::conj(a) * b : std::conj(b) * a;
  }
  return s;
}

}  // namespace qramph
