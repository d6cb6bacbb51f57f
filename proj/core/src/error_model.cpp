#include "qramph/error_model.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "qramph/errors.h"
#include "qramph/parallel.h"

namespace qramph {

namespace {

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Waiting time in units of t for a clock of the given lifetime.
double exponential(std::mt19937_64& rng, Duration life, Duration t) {
  if (life.is_infinite()) return std::numeric_limits<double>::infinity();
  return -std::log1p(-uniform(rng)) * (life / t);
}

void check_encoding(Encoding e) {
  if (e != Encoding::HybridDualRail && e != Encoding::StandardDualRailVacuum)
    throw InvalidParameter("trajectories need the hybrid or standard vacuum encoding, got " +
                           std::string(to_string(e)));
}

double release_slot(const Schedule& s, int k) {
  return k == 0 ? 0.0 : static_cast<double>(*s.flight_slot(k, 0, 0, Direction::In));
}

struct Prepared {
  QramLayout layout;
  SparseState initial;
  SparseState ideal;
  std::vector<Gate> gates;
};

Prepared prepare(const QramConfig& cfg, const TrajectoryInput& input) {
  const long long N = 1LL << cfg.n;
  std::vector<cdouble> address = input.address;
  if (address.empty()) address.assign(N, cdouble(1.0 / std::sqrt(static_cast<double>(N))));
  DataRegister data = input.data ? *input.data : DataRegister::classical(std::vector<int>(N, 0));
  QramMachine m(cfg, data, address);
  Prepared p{m.layout(), m.state(), {}, {}};
  m.run();
  p.ideal = m.state();
  p.gates = time_ordered(m.trace());
  return p;
}

void apply_jump(const QramLayout& L, SparseState& s, NoiseEvent& ev, std::mt19937_64& rng) {
  const std::uint16_t tag = QramLayout::address_tag(ev.excitation, ev.rail);
  const int reg = L.reg(ev.excitation, ev.rail);
  auto candidates = [&](bool any_medium) {
    std::vector<std::pair<int, double>> out;
    for (int slot = 0; slot < L.slot_count(); ++slot) {
      if (L.is_register(slot)) continue;
      if (!any_medium && L.is_waveguide(slot) != (ev.medium == Medium::Waveguide)) continue;
      double w = s.probability_of(slot, tag);
      if (w > 0.0) out.emplace_back(slot, w);
    }
    if (any_medium || ev.medium == Medium::Transmon) {
      double w = 1.0 - s.probability_of(reg, 0);
      if (w > 0.0) out.emplace_back(reg, w);
    }
    return out;
  };
  auto pool = candidates(false);
  double total = 0.0;
  for (auto& [slot, w] : pool) total += w;
  if (total < 1e-14) {
    pool = candidates(true);
    total = 0.0;
    for (auto& [slot, w] : pool) total += w;
  }
  if (total < 1e-14) return;
  double x = uniform(rng) * total;
  int chosen = pool.back().first;
  for (auto& [slot, w] : pool) {
    if (x < w) {
      chosen = slot;
      break;
    }
    x -= w;
  }
  ev.location = L.info(chosen).name;
  if (chosen == reg) {
    s.annihilate(reg, true);
  } else {
    s.annihilate(chosen, false, tag);
  }
}

TrajectoryVerdict replay(const QramConfig& cfg, const TrajectoryInput& input,
                         std::vector<NoiseEvent> events, std::mt19937_64& rng) {
  Prepared p = prepare(cfg, input);
  const QramLayout& L = p.layout;
  SparseState s = p.initial;
  std::stable_sort(events.begin(), events.end(),
                   [](const NoiseEvent& a, const NoiseEvent& b) { return a.time_t < b.time_t; });

  std::vector<NoiseEvent*> losses;
  for (auto& e : events)
    if (e.kind == EventKind::Loss) losses.push_back(&e);
  std::size_t next = 0;
  for (const Gate& g : p.gates) {
    while (next < losses.size() && losses[next]->time_t < g.time) apply_jump(L, s, *losses[next++], rng);
    s.apply(g, false);
    if (g.label == "ladder_shelve") {
      for (auto& e : events) {
        if (e.kind != EventKind::FDecay || e.excitation != g.excitation) continue;
        const int reg = L.reg(e.excitation);
        if (s.probability_of(reg, 2) > 1e-14) {
          s.annihilate(reg, true, 2);
          e.location = L.info(reg).name;
        }
      }
    }
  }
  while (next < losses.size()) apply_jump(L, s, *losses[next++], rng);

  TrajectoryVerdict v;
  v.events = std::move(events);
  v.fidelity = std::norm(p.ideal.inner(s));
  const Config c = s.sample(rng);
  for (int k = 0; k <= cfg.n && !v.detected; ++k) {
    const std::string who = k == cfg.n ? "bus" : "a" + std::to_string(k);
    if (L.rails() == 1) {
      if (c[L.reg(k)] == 2) {
        v.detected = true;
        v.detection_basis = who + ":f";
      }
    } else if (c[L.reg(k, 0)] == 0 && c[L.reg(k, 1)] == 0) {
      v.detected = true;
      v.detection_basis = who + ":00";
    }
  }
  return v;
}

// Dephasing and thermal events, recorded for classification only.
void sample_passive_events(const QramConfig& cfg, const NoiseModel& noise, const Schedule& sched,
                           std::mt19937_64& rng, std::vector<NoiseEvent>& out) {
  const bool want_dephase = !noise.t2_q.is_infinite() || !noise.t2_m.is_infinite();
  const bool want_thermal = noise.n_thermal > 0.0;
  if (!want_dephase && !want_thermal) return;
  for (int k = 0; k <= cfg.n; ++k) {
    for (int r = 0; r < sched.rails(); ++r) {
      for (const auto& iv : residence_intervals(sched, k, r)) {
        const bool wg = iv.medium == Medium::Waveguide;
        const double span = iv.end - iv.start;
        if (want_dephase) {
          Duration t2 = wg ? noise.t2_m : noise.t2_q;
          double flip = t2.is_infinite() ? 0.0 : 0.5 * (1.0 - std::exp(-((cfg.t * span) / t2)));
          if (uniform(rng) < flip)
            out.push_back({iv.start + span * uniform(rng), k, r, iv.medium, EventKind::Dephase, {}});
        }
        if (want_thermal) {
          Duration t1 = wg ? noise.t1_m : noise.t1_q;
          double wait = exponential(rng, t1 * (1.0 / noise.n_thermal), cfg.t);
          if (wait < span) out.push_back({iv.start + wait, k, r, iv.medium, EventKind::Thermal, {}});
        }
      }
    }
  }
}

}  // namespace

void validate(const NoiseModel& noise) {
  for (auto [d, what] : {std::pair{noise.t1_q, "T1_q"}, std::pair{noise.t1_m, "T1_m"},
                         std::pair{noise.t2_q, "T2_q"}, std::pair{noise.t2_m, "T2_m"}}) {
    if (!(d.in_ns() > 0.0)) throw InvalidParameter(std::string(what) + " must be positive");
  }
  if (!(noise.n_thermal >= 0.0)) throw InvalidParameter("thermal occupation must be non-negative");
  auto check_t2 = [](Duration t2, Duration t1, const char* what) {
    if (!t2.is_infinite() && !t1.is_infinite() && t2.in_ns() > 2.0 * t1.in_ns() * (1.0 + 1e-12))
      throw InvalidParameter(std::string(what) + " exceeds twice the matching T1");
  };
  check_t2(noise.t2_q, noise.t1_q, "T2_q");
  check_t2(noise.t2_m, noise.t1_m, "T2_m");
}

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::Loss: return "loss";
    case EventKind::FDecay: return "f_decay";
    case EventKind::Dephase: return "dephase";
    case EventKind::Thermal: return "thermal";
  }
  return "unknown";
}

std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::array<std::uint32_t, 2> w{};
  seq.generate(w.begin(), w.end());
  return (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
}

std::mt19937_64 trajectory_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(trajectory_seed(seed, index));
}

namespace {

struct LossClocks {
  std::vector<std::vector<std::vector<ResidenceInterval>>> intervals;  // [k][rail]
  std::vector<double> release;
  double makespan = 0.0;
};

LossClocks make_clocks(const QramConfig& cfg) {
  const Schedule sched = build_schedule(cfg.n, cfg.encoding);
  LossClocks c;
  c.makespan = static_cast<double>(sched.makespan_slots);
  c.intervals.resize(cfg.n + 1);
  for (int k = 0; k <= cfg.n; ++k) {
    for (int r = 0; r < sched.rails(); ++r) c.intervals[k].push_back(residence_intervals(sched, k, r));
    c.release.push_back(release_slot(sched, k));
  }
  return c;
}

std::vector<NoiseEvent> draw_losses(const QramConfig& cfg, const NoiseModel& noise, const LossClocks& clocks,
                                    std::mt19937_64& rng) {
  const bool hybrid = cfg.encoding == Encoding::HybridDualRail;
  std::vector<NoiseEvent> out;
  for (int k = 0; k <= cfg.n; ++k) {
    // Hybrid: tree or register branch. Standard: the occupied rail.
    const int branch = static_cast<int>(rng() >> 63);
    const int rail = hybrid ? 0 : branch;
    const bool in_tree = hybrid ? branch == 0 : true;
    for (const auto& iv : clocks.intervals[k][rail]) {
      const bool wg = iv.medium == Medium::Waveguide && in_tree;
      const double wait = exponential(rng, wg ? noise.t1_m : noise.t1_q, cfg.t);
      if (wait >= iv.end - iv.start) continue;
      double at = iv.start + wait;
      if (hybrid) {
        // Outside the release window the excitation is an ordinary
        // register qubit; its decay is charged to the window edges.
        const double rel = clocks.release[k];
        at = std::clamp(at, rel + 1e-9, clocks.makespan - rel - 1e-9);
      }
      out.push_back({at, k, rail, wg ? Medium::Waveguide : Medium::Transmon, EventKind::Loss, {}});
      break;
    }
  }

  if (hybrid && noise.f_decay) {
    for (int k = 0; k < cfg.n; ++k) {
      if (exponential(rng, noise.t1_q, cfg.t) < cfg.t_f / cfg.t)
        out.push_back({clocks.release[k], k, 0, Medium::Transmon, EventKind::FDecay, {}});
    }
  }
  return out;
}

}  // namespace

std::vector<NoiseEvent> sample_events(const QramConfig& cfg, const NoiseModel& noise,
                                      std::mt19937_64& rng) {
  validate(cfg);
  validate(noise);
  check_encoding(cfg.encoding);
  return draw_losses(cfg, noise, make_clocks(cfg), rng);
}

TrajectoryVerdict sample_trajectory(const QramConfig& cfg, const NoiseModel& noise, std::uint64_t seed,
                                    const TrajectoryInput& input) {
  std::mt19937_64 rng(seed);
  auto events = sample_events(cfg, noise, rng);
  sample_passive_events(cfg, noise, build_schedule(cfg.n, cfg.encoding), rng, events);
  auto v = replay(cfg, input, std::move(events), rng);
  v.seed = seed;
  return v;
}

TrajectoryVerdict run_with_events(const QramConfig& cfg, std::vector<NoiseEvent> events,
                                  const TrajectoryInput& input) {
  validate(cfg);
  check_encoding(cfg.encoding);
  std::mt19937_64 rng(0);
  return replay(cfg, input, std::move(events), rng);
}

SuccessSample estimate_success_prob(const QramConfig& cfg, const NoiseModel& noise, long trials,
                                    std::uint64_t seed, int workers) {
  if (trials < 1) throw InvalidParameter("trials must be at least 1");
  validate(cfg);
  validate(noise);
  check_encoding(cfg.encoding);
  const LossClocks clocks = make_clocks(cfg);
  const auto ok = parallel_map(static_cast<std::size_t>(trials), static_cast<unsigned>(std::max(1, workers)),
                               [&](std::size_t i) -> int {
                                 auto rng = trajectory_rng(seed, i);
                                 return draw_losses(cfg, noise, clocks, rng).empty() ? 1 : 0;
                               });
  SuccessSample s;
  s.trials = trials;
  s.p = static_cast<double>(std::accumulate(ok.begin(), ok.end(), 0L)) / static_cast<double>(trials);
  s.stderr_ = std::sqrt(s.p * (1.0 - s.p) / static_cast<double>(trials));
  return s;
}

std::string verdict_json(const TrajectoryVerdict& v) {
  using nlohmann::json;
  json events = json::array();
  for (const auto& e : v.events) {
    events.push_back({{"time_t", e.time_t},
                      {"k", e.excitation},
                      {"rail", e.rail},
                      {"medium", to_string(e.medium)},
                      {"kind", to_string(e.kind)},
                      {"location", e.location}});
  }
  return json{{"seed", v.seed},
              {"events", events},
              {"detected", v.detected},
              {"detection_basis", v.detection_basis},
              {"fidelity", v.fidelity}}
      .dump();
}

}  // namespace qramph
