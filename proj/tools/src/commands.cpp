#include "commands.h"

#include <cmath>
#include <algorithm>

#include "qramph/analytics.h"
#include "qramph/error_model.h"
#include "qramph/errors.h"
#include "qramph/parallel.h"
#include "qramph/qram.h"
#include "qramph/router.h"
#include "qramph/scheduler.h"
#include "qramph/wavepacket.h"

namespace qramph::cli {

using nlohmann::json;

namespace {

json complex_json(cdouble z) { return json::array({z.real(), z.imag()}); }

cdouble complex_value(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw InvalidParameter(where + ": expected a number or [re, im]");
}

std::string duration_text(Duration d) { return format_duration(d); }

json durations_json(const std::vector<Duration>& ds) {
  json a = json::array();
  for (auto d : ds) a.push_back(duration_text(d));
  return a;
}

double us_or_inf(Duration d) { return d.in_us(); }

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g;
  for (int i = 0; i < points; ++i)
    g.push_back(lo * std::pow(hi / lo, points == 1 ? 0.0 : static_cast<double>(i) / (points - 1)));
  return g;
}

WavePacket read_packet(ConfigReader& cfg, PulseShape shape) {
  WavePacket p;
  p.shape = shape;
  p.fwhm = cfg.duration("fwhm", Duration::ns(50));
  p.convention = parse_fwhm_convention(cfg.text("fwhm_convention", "intensity"));
  return p;
}

}  // namespace

// ------------------------------------------------------------ route-fidelity

void cmd_route_fidelity(RunContext& ctx, ConfigReader& cfg, const RouteFidelityFlags& flags, std::ostream& out) {
  auto shapes = cfg.texts("shapes", {"gaussian", "sech"});
  if (flags.shape) shapes = {*flags.shape};
  if (shapes.empty()) throw InvalidParameter("route-fidelity: no pulse shapes given");
  std::vector<WavePacket> packets;
  const Duration fwhm = cfg.duration("fwhm", Duration::ns(50));
  const auto convention = parse_fwhm_convention(cfg.text("fwhm_convention", "intensity"));
  for (const auto& s : shapes) packets.push_back({parse_pulse_shape(s), fwhm, Duration::ns(0), convention});

  auto kappas = cfg.numbers("kappa_two_pi_mhz", log_grid(10.0, 1000.0, 21));
  auto td_window = cfg.optional_duration("timedomain_window", Duration::ns(3500));
  const double window_kappa = cfg.number("window_kappa_two_pi_mhz", 200.0);
  std::vector<Duration> default_windows;
  for (int w = 100; w <= 500; w += 25) default_windows.push_back(Duration::ns(w));
  auto windows = cfg.durations("windows", default_windows);
  cfg.finish();

  if (flags.window) {
    const Duration w = parse_duration(*flags.window);
    windows = {w};
    kappas = {window_kappa};
    td_window = w;
  }

  ctx.params = {{"shapes", shapes},
                {"fwhm", duration_text(fwhm)},
                {"fwhm_convention", to_string(convention)},
                {"kappa_two_pi_mhz", kappas},
                {"timedomain_window", td_window ? json(duration_text(*td_window)) : json(nullptr)},
                {"window_kappa_two_pi_mhz", window_kappa},
                {"windows", durations_json(windows)}};

  std::vector<double> window_ns;
  for (auto w : windows) window_ns.push_back(w.in_ns());
  const unsigned workers = static_cast<unsigned>(ctx.workers);
  auto by_kappa = sweep_kappa(packets, kappas, td_window, workers);
  auto by_window = sweep_window(packets, window_ns, AngularRate::two_pi_mhz(window_kappa), workers);

  CsvWriter c(ctx, "fig1c.csv", {"param", "shape", "infidelity", "infidelity_timedomain"});
  for (const auto& r : by_kappa)
    c.row({r.param, std::string(to_string(r.shape)), r.infidelity, r.infidelity_timedomain});
  CsvWriter d(ctx, "fig1d.csv", {"param", "shape", "infidelity"});
  for (const auto& r : by_window) d.row({r.param, std::string(to_string(r.shape)), r.infidelity});

  out << "route-fidelity: " << by_kappa.size() << " kappa rows, " << by_window.size() << " window rows\n";
  if (flags.window) {
    for (const auto& r : by_window)
      out << "  " << to_string(r.shape) << " window " << format_real(r.param)
          << " ns: infidelity " << format_real(r.infidelity) << '\n';
  }
}

// ---------------------------------------------------------------- router-sim

void cmd_router_sim(RunContext& ctx, ConfigReader& cfg, std::ostream& out) {
  RouterSimConfig rc;
  rc.packet = read_packet(cfg, parse_pulse_shape(cfg.text("shape", "gaussian")));
  rc.kappa_max = AngularRate::two_pi_mhz(cfg.number("kappa_two_pi_mhz", 200.0));
  rc.window = cfg.duration("window", Duration::ns(350));
  rc.dt = cfg.optional_duration("dt", std::nullopt);
  {
    auto ctl = cfg.child("control");
    if (auto g = ctl.raw("g")) rc.control_init[0] = complex_value(*g, "control.g");
    if (auto e = ctl.raw("e")) rc.control_init[1] = complex_value(*e, "control.e");
    ctl.finish();
  }
  const std::string source = cfg.text("source", "left");
  if (source != "left" && source != "right") throw InvalidParameter("router-sim.source must be left or right");
  rc.source = source == "left" ? SourceQubit::Left : SourceQubit::Right;
  const int stride = cfg.integer("trace_stride", 20);
  if (stride < 1) throw InvalidParameter("router-sim.trace_stride must be >= 1");
  rc.trace_stride = static_cast<std::size_t>(stride);
  cfg.finish();

  ctx.params = {{"shape", to_string(rc.packet.shape)},
                {"fwhm", duration_text(rc.packet.fwhm)},
                {"fwhm_convention", to_string(rc.packet.convention)},
                {"kappa_two_pi_mhz", rc.kappa_max.in_two_pi_mhz()},
                {"window", duration_text(rc.window)},
                {"dt", rc.dt ? json(duration_text(*rc.dt)) : json(nullptr)},
                {"control", {{"g", complex_json(rc.control_init[0])}, {"e", complex_json(rc.control_init[1])}}},
                {"source", source},
                {"trace_stride", stride}};

  auto res = simulate_routing(rc);
  json state = json::object();
  for (const auto& [label, amp] : res.final_state) state[label] = complex_json(amp);
  json traces = json::array();
  for (const auto& p : res.traces) {
    traces.push_back({{"t_ns", p.t_ns},
                      {"q_left", p.q_left},
                      {"q_right", p.q_right},
                      {"q_control", p.q_control},
                      {"q_control_f", p.q_control_f}});
  }
  json doc = {{"meta", metadata_line(ctx)},
              {"fidelity", res.fidelity},
              {"infidelity", 1.0 - res.fidelity},
              {"captured", res.captured},
              {"leakage", res.leakage},
              {"norm_error", res.norm_error},
              {"dt_ns", res.dt_ns},
              {"steps", res.steps},
              {"final_state", state},
              {"traces", traces}};
  write_text(ctx, "router_sim.json", doc.dump(2));
  out << "router-sim: fidelity " << format_real(res.fidelity) << ", leakage " << format_real(res.leakage)
      << ", " << res.steps << " steps\n";
}

// ----------------------------------------------------------------- query-sim

namespace {

std::vector<cdouble> basis_address(const std::string& bits, int n) {
  if (static_cast<int>(bits.size()) != n)
    throw InvalidParameter("address '" + bits + "' must have " + std::to_string(n) + " bits");
  long long j = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw InvalidParameter("address '" + bits + "' is not a bit string");
    j = (j << 1) | (ch - '0');
  }
  std::vector<cdouble> a(static_cast<std::size_t>(1LL << n));
  a[j] = 1.0;
  return a;
}

std::string bit_string(long long j, int n) {
  std::string s(n, '0');
  for (int k = 0; k < n; ++k)
    if ((j >> (n - 1 - k)) & 1) s[k] = '1';
  return s;
}

}  // namespace

void cmd_query_sim(RunContext& ctx, ConfigReader& cfg, std::ostream& out) {
  QramConfig qc;
  qc.n = cfg.integer("n", 2);
  qc.encoding = parse_encoding(cfg.text("encoding", "hybrid"));
  qc.t = cfg.duration("t", Duration::ns(350));
  qc.t_f = cfg.duration("t_f", Duration::ns(0));
  validate(qc);
  const long long N = 1LL << qc.n;
  const std::string mode = cfg.text("mode", "classical");
  if (mode != "classical" && mode != "quantum") throw InvalidParameter("query-sim.mode must be classical or quantum");

  DataRegister data;
  json data_echo;
  auto raw_data = cfg.raw("data");
  if (mode == "classical") {
    std::vector<int> bits(static_cast<std::size_t>(N), 0);
    if (raw_data) {
      if (!raw_data->is_array()) throw InvalidParameter("query-sim.data must be an array of bits");
      bits.clear();
      for (const auto& b : *raw_data) {
        if (!b.is_number_integer()) throw InvalidParameter("query-sim.data must be an array of bits");
        bits.push_back(b.get<int>());
      }
    }
    data = DataRegister::classical(bits);
    data_echo = bits;
  } else {
    std::vector<std::array<cdouble, 2>> qs(static_cast<std::size_t>(N), {cdouble(1.0), cdouble(0.0)});
    if (raw_data) {
      if (!raw_data->is_array()) throw InvalidParameter("query-sim.data must be an array of qubit states");
      qs.clear();
      for (const auto& q : *raw_data) {
        if (!q.is_array() || q.size() != 2) throw InvalidParameter("query-sim.data entries must be [c0, c1]");
        qs.push_back({complex_value(q[0], "query-sim.data"), complex_value(q[1], "query-sim.data")});
      }
    }
    data = DataRegister::quantum(qs);
    data_echo = json::array();
    for (const auto& q : qs) data_echo.push_back({complex_json(q[0]), complex_json(q[1])});
  }

  struct Run {
    json label;
    std::vector<cdouble> address;
    long long basis = -1;
  };
  std::vector<Run> runs;
  auto raw_addresses = cfg.raw("addresses");
  const bool export_trace = cfg.boolean("export_trace", false);
  cfg.finish();

  if (!raw_addresses) {
    for (long long j = 0; j < N; ++j) runs.push_back({bit_string(j, qc.n), basis_address(bit_string(j, qc.n), qc.n), j});
  } else {
    if (!raw_addresses->is_array()) throw InvalidParameter("query-sim.addresses must be an array");
    for (const auto& a : *raw_addresses) {
      if (a.is_string()) {
        auto v = basis_address(a.get<std::string>(), qc.n);
        long long j = std::find(v.begin(), v.end(), cdouble(1.0)) - v.begin();
        runs.push_back({a, v, j});
      } else if (a.is_array()) {
        std::vector<cdouble> v;
        for (const auto& z : a) v.push_back(complex_value(z, "query-sim.addresses"));
        runs.push_back({a, v, -1});
      } else {
        throw InvalidParameter("query-sim.addresses entries must be bit strings or amplitude arrays");
      }
    }
  }

  json addr_echo = json::array();
  for (const auto& r : runs) addr_echo.push_back(r.label);
  ctx.params = {{"n", qc.n},
                {"encoding", to_string(qc.encoding)},
                {"t", duration_text(qc.t)},
                {"t_f", duration_text(qc.t_f)},
                {"mode", mode},
                {"data", data_echo},
                {"addresses", addr_echo},
                {"export_trace", export_trace}};

  auto results = parallel_map(runs.size(), static_cast<unsigned>(ctx.workers),
                              [&](std::size_t i) { return query(qc, runs[i].address, data); });

  bool table_match = true;
  bool any_basis = false;
  json items = json::array();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = results[i];
    json readout = json::array();
    for (long long j = 0; j < N; ++j) {
      for (int b = 0; b < 2; ++b) {
        double p = std::norm(r.logical[2 * j + b]);
        if (p > 1e-12) readout.push_back({{"address", bit_string(j, qc.n)}, {"bit", b}, {"probability", p}});
      }
    }
    json logical = json::array();
    for (auto z : r.logical) logical.push_back(complex_json(z));
    if (runs[i].basis >= 0 && mode == "classical") {
      any_basis = true;
      const long long j = runs[i].basis;
      table_match = table_match && std::norm(r.logical[2 * j + data.bits[j]]) > 1.0 - 1e-10;
    }
    items.push_back({{"address", runs[i].label},
                     {"readout", readout},
                     {"logical", logical},
                     {"leaked", r.leaked},
                     {"tree_residual", r.tree_residual},
                     {"purity", std::isnan(r.purity) ? json(nullptr) : json(r.purity)},
                     {"norm_error", r.norm_error},
                     {"max_support", r.max_support},
                     {"gates", r.trace.size()},
                     {"duration_t", r.duration_t}});
  }
  json doc = {{"meta", metadata_line(ctx)}, {"runs", items}};
  if (any_basis) doc["table_match"] = table_match;
  write_text(ctx, "query.json", doc.dump(2));
  if (export_trace && !results.empty()) {
    write_text(ctx, "trace.json", trace_json(QramLayout(qc.n, qc.encoding), results.front().trace));
  }
  out << "query-sim: " << runs.size() << " runs";
  if (any_basis) out << ", table " << (table_match ? "matches" : "MISMATCH");
  out << '\n';
}

// ----------------------------------------------------------------- heralding

void cmd_heralding(RunContext& ctx, ConfigReader& cfg, std::ostream& out) {
  const Encoding enc = parse_encoding(cfg.text("encoding", "hybrid"));
  const int n_min = cfg.integer("n_min", 1);
  const int n_max = cfg.integer("n_max", 10);
  const Duration t = cfg.duration("t", Duration::ns(350));
  const Duration t1_q = cfg.duration("t1_q", Duration::us(100));
  const auto t1_ms = cfg.durations("t1_m", {Duration::us(0.5), Duration::us(2), Duration::us(10), Duration::infinite()});
  const bool ideal = cfg.boolean("include_lossless", true);
  const auto t2_qs = cfg.durations("t2_q", {Duration::us(50), Duration::us(100), Duration::us(200),
                                            Duration::us(500), Duration::us(1000)});
  const Duration t2_m = cfg.duration("t2_m", Duration::infinite());
  cfg.finish();
  if (n_min < 1 || n_max < n_min) throw InvalidParameter("heralding: need 1 <= n_min <= n_max");
  if (t1_ms.empty() || t2_qs.empty()) throw InvalidParameter("heralding: empty lifetime grid");

  ctx.params = {{"encoding", to_string(enc)},     {"n_min", n_min},
                {"n_max", n_max},                 {"t", duration_text(t)},
                {"t1_q", duration_text(t1_q)},    {"t1_m", durations_json(t1_ms)},
                {"include_lossless", ideal},      {"t2_q", durations_json(t2_qs)},
                {"t2_m", duration_text(t2_m)}};

  std::vector<std::pair<Duration, Duration>> lifetimes;
  for (auto m : t1_ms) lifetimes.emplace_back(t1_q, m);
  if (ideal) lifetimes.emplace_back(Duration::infinite(), Duration::infinite());

  CsvWriter a(ctx, "fig4a.csv", {"n", "N", "t_ns", "T1q_us", "T1m_us", "T", "P", "Pmin", "Pmax", "rate_hz"});
  for (auto [q, m] : lifetimes) {
    for (int n = n_min; n <= n_max; ++n) {
      auto r = heralding_rate({n, enc, t, q, m});
      a.row({static_cast<long long>(n), static_cast<long long>(r.N), t.in_ns(), us_or_inf(q), us_or_inf(m),
             r.T.in_ns(), r.p_no_error, r.p_min, r.p_max, r.rate_hz});
    }
  }
  CsvWriter b(ctx, "fig4b.csv", {"n", "T2q_us", "P_dephasing", "approx_2n2t_over_T2"});
  for (auto t2 : t2_qs) {
    for (int n = n_min; n <= n_max; ++n) {
      auto d = dephasing_no_error_prob(n, t, t2, t2_m);
      b.row({static_cast<long long>(n), us_or_inf(t2), d.p, d.approx_infidelity});
    }
  }
  out << "heralding: " << lifetimes.size() * (n_max - n_min + 1) << " rate rows, "
      << t2_qs.size() * (n_max - n_min + 1) << " dephasing rows\n";
}

// ---------------------------------------------------------------- montecarlo

void cmd_montecarlo(RunContext& ctx, ConfigReader& cfg, std::ostream& out) {
  const Encoding enc = parse_encoding(cfg.text("encoding", "hybrid"));
  const long trials = cfg.integer("trials", 20000);
  const Duration t = cfg.duration("t", Duration::ns(350));
  const Duration t_f = cfg.duration("t_f", Duration::ns(0));
  NoiseModel base;
  base.t2_q = cfg.duration("t2_q", Duration::infinite());
  base.t2_m = cfg.duration("t2_m", Duration::infinite());
  base.n_thermal = cfg.number("n_thermal", 0.0);
  base.f_decay = cfg.boolean("f_decay", false);

  struct Point {
    int n;
    Duration t1_q, t1_m;
  };
  std::vector<Point> grid;
  if (auto raw = cfg.raw("grid")) {
    if (!raw->is_array()) throw InvalidParameter("montecarlo.grid must be an array");
    for (const auto& item : *raw) {
      ConfigReader p(item, "montecarlo.grid[]");
      grid.push_back({p.integer("n", 2), p.duration("t1_q", Duration::us(100)), p.duration("t1_m", Duration::us(2))});
      p.finish();
    }
  } else {
    for (int n : {1, 2, 3, 4, 5, 7})
      for (double m : {2.0, 100.0}) grid.push_back({n, Duration::us(100), Duration::us(m)});
  }
  const int verdict_n = cfg.integer("verdict_n", 2);
  const int verdicts = cfg.integer("verdict_trajectories", 200);
  const int verdict_cap = cfg.integer("max_verdict_records", 1000);
  cfg.finish();
  if (trials < 1) throw InvalidParameter("montecarlo.trials must be at least 1");
  if (grid.empty()) throw InvalidParameter("montecarlo.grid is empty");
  if (verdicts < 0 || verdict_cap < 0) throw InvalidParameter("montecarlo verdict counts must be non-negative");

  json grid_echo = json::array();
  for (const auto& p : grid)
    grid_echo.push_back({{"n", p.n}, {"t1_q", duration_text(p.t1_q)}, {"t1_m", duration_text(p.t1_m)}});
  ctx.params = {{"encoding", to_string(enc)},
                {"trials", trials},
                {"t", duration_text(t)},
                {"t_f", duration_text(t_f)},
                {"t2_q", duration_text(base.t2_q)},
                {"t2_m", duration_text(base.t2_m)},
                {"n_thermal", base.n_thermal},
                {"f_decay", base.f_decay},
                {"grid", grid_echo},
                {"verdict_n", verdict_n},
                {"verdict_trajectories", verdicts},
                {"max_verdict_records", verdict_cap}};

  CsvWriter csv(ctx, "montecarlo.csv",
                {"n", "encoding", "t_ns", "T1q_us", "T1m_us", "trials", "P_mc", "stderr", "P_closed", "z",
                 "within_3sigma"});
  bool all_agree = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& p = grid[i];
    QramConfig qc{p.n, t, t_f, enc};
    NoiseModel nm = base;
    nm.t1_q = p.t1_q;
    nm.t1_m = p.t1_m;
    auto mc = estimate_success_prob(qc, nm, trials, trajectory_seed(ctx.seed, i), ctx.workers);
    double closed = enc == Encoding::HybridDualRail ? success_prob_hybrid(p.n, t, p.t1_q, p.t1_m).p
                                                    : success_prob_standard_vacuum(p.n, t, p.t1_q, p.t1_m);
    if (nm.f_decay && enc == Encoding::HybridDualRail) closed *= f_decay_correction(p.n, t_f, p.t1_q);
    const double diff = mc.p - closed;
    const double z = mc.stderr_ > 0.0 ? diff / mc.stderr_ : (diff == 0.0 ? 0.0 : INFINITY);
    const bool ok = std::abs(z) < 3.0;
    all_agree = all_agree && ok;
    csv.row({static_cast<long long>(p.n), std::string(to_string(enc)), t.in_ns(), p.t1_q.in_us(), p.t1_m.in_us(),
             static_cast<long long>(trials), mc.p, mc.stderr_, closed, z, std::string(ok ? "true" : "false")});
  }

  // Full trajectories at the first grid point's lifetimes.
  QramConfig vq{verdict_n, t, t_f, enc};
  NoiseModel vn = base;
  vn.t1_q = grid.front().t1_q;
  vn.t1_m = grid.front().t1_m;
  auto vs = parallel_map(static_cast<std::size_t>(verdicts), static_cast<unsigned>(ctx.workers), [&](std::size_t i) {
    return sample_trajectory(vq, vn, trajectory_seed(ctx.seed ^ 0x9e3779b97f4a7c15ULL, i));
  });
  long with_loss = 0, flagged_loss = 0, false_alarms = 0;
  {
    std::string body;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const auto& v = vs[i];
      bool lost = std::any_of(v.events.begin(), v.events.end(),
                              [](const NoiseEvent& e) { return e.kind == EventKind::Loss; });
      with_loss += lost;
      flagged_loss += lost && v.detected;
      false_alarms += v.events.empty() && v.detected;
      if (static_cast<int>(i) < verdict_cap) body += verdict_json(v) + "\n";
    }
    write_text(ctx, "verdicts.jsonl", body);
  }
  out << "montecarlo: " << grid.size() << " grid points, 3-sigma agreement " << (all_agree ? "true" : "false")
      << "; trajectories " << vs.size() << ", with loss " << with_loss << ", flagged " << flagged_loss
      << ", false alarms " << false_alarms << '\n';
}

// ------------------------------------------------------------------ schedule

void cmd_schedule(RunContext& ctx, ConfigReader& cfg, std::ostream& out) {
  const auto ns = cfg.integers("n", {4});
  const auto encs = cfg.texts("encodings", {"hybrid", "standard_vacuum"});
  cfg.finish();
  if (ns.empty() || encs.empty()) throw InvalidParameter("schedule: empty n or encoding list");
  ctx.params = {{"n", ns}, {"encodings", encs}};

  json report = json::array();
  bool all_ok = true;
  for (const auto& name : encs) {
    const Encoding e = parse_encoding(name);
    for (int n : ns) {
      auto s = build_schedule(n, e);
      auto r = validate_schedule(s);
      all_ok = all_ok && r.ok();
      const std::string stem = "schedule_" + std::string(to_string(e)) + "_n" + std::to_string(n);
      write_text(ctx, stem + ".csv", metadata_line(ctx) + "\n" + schedule_csv(s));
      write_text(ctx, stem + ".json", schedule_json(s));
      report.push_back({{"n", n},
                        {"encoding", to_string(e)},
                        {"makespan_t", s.makespan_slots},
                        {"makespan_matches", r.makespan_matches},
                        {"residence_matches", r.residence_matches},
                        {"conflicts", r.conflicts}});
      out << "schedule " << to_string(e) << " n=" << n << ": makespan " << s.makespan_slots << "t, "
          << r.conflicts.size() << " conflicts\n";
    }
  }
  write_text(ctx, "schedule_report.json", json{{"meta", metadata_line(ctx)}, {"ok", all_ok}, {"schedules", report}}.dump(2));
}

}  // namespace qramph::cli
