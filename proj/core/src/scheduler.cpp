#include "qramph/scheduler.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "qramph/errors.h"

namespace qramph {

namespace {

long closed_form_makespan(int n, Encoding e) {
  return is_standard_dual_rail(e) ? 2L * (3L * n - 1) : 2L * (2L * n - 1);
}

struct Flight {
  int excitation;
  int rail;
  int level;
  long slot;
};

}  // namespace

std::string_view to_string(Direction d) { return d == Direction::In ? "in" : "out"; }
std::string_view to_string(Medium m) { return m == Medium::Waveguide ? "waveguide" : "transmon"; }

std::optional<long> Schedule::flight_slot(int excitation, int rail, int level,
                                          Direction dir) const {
  for (const auto& e : entries) {
    if (e.medium == Medium::Waveguide && e.excitation == excitation && e.rail == rail &&
        e.level == level && e.direction == dir) {
      return e.slot;
    }
  }
  return std::nullopt;
}

Schedule build_schedule(int n, Encoding encoding) {
  if (n < 1) throw InvalidParameter("schedule needs n >= 1");
  const int rails = rails_per_qubit(encoding);

  // Route-in, payloads released in order a_1 (all rails), ..., a_{n-1}, bus.
  std::vector<long> level_free(n, 0);
  std::vector<long> control_ready(n, 0);
  std::vector<long> ancilla_free(n + 1, 0);
  std::vector<Flight> flights;
  for (int k = 1; k <= n; ++k) {
    long settled = 0;
    for (int r = 0; r < rails; ++r) {
      long t = 0;
      for (int j = 0; j < k; ++j) {
        long s = std::max({t, level_free[j], control_ready[j], ancilla_free[j + 1] - 1});
        flights.push_back({k, r, j, s});
        level_free[j] = s + 1;
        // payload leaves the level-j ancilla as this flight starts
        ancilla_free[j] = std::max(ancilla_free[j], s);
        t = s + 1;
      }
      ancilla_free[k] = std::max(ancilla_free[k], t);
      settled = std::max(settled, t);
    }
    if (k < n) control_ready[k] = settled;
  }

  long route_in = 0;
  for (const auto& f : flights) route_in = std::max(route_in, f.slot + 1);
  Schedule s;
  s.n = n;
  s.encoding = encoding;
  s.makespan_slots = 2 * route_in;

  for (int k = 0; k <= n; ++k) {
    for (int r = 0; r < rails; ++r) {
      std::map<long, int> in_flight;
      for (const auto& f : flights)
        if (f.excitation == k && f.rail == r) in_flight[f.slot] = f.level;
      int where = -1;
      for (long slot = 0; slot < route_in; ++slot) {
        auto it = in_flight.find(slot);
        ScheduleEntry in{k, r, where, slot, Direction::In, Medium::Transmon};
        if (it != in_flight.end()) {
          in.level = it->second;
          in.medium = Medium::Waveguide;
          where = it->second + 1;
        }
        ScheduleEntry out = in;
        out.slot = s.makespan_slots - 1 - slot;
        out.direction = Direction::Out;
        s.entries.push_back(in);
        s.entries.push_back(out);
      }
    }
  }
  std::sort(s.entries.begin(), s.entries.end(), [](const auto& a, const auto& b) {
    return std::tie(a.excitation, a.rail, a.slot) < std::tie(b.excitation, b.rail, b.slot);
  });
  return s;
}

std::vector<ResidenceInterval> residence_intervals(const Schedule& schedule, int excitation,
                                                   int rail) {
  if (excitation < 0 || excitation > schedule.n || rail < 0 || rail >= schedule.rails()) {
    throw InvalidParameter("unknown excitation " + std::to_string(excitation) + " rail " +
                           std::to_string(rail));
  }
  std::vector<ResidenceInterval> out;
  for (const auto& e : schedule.entries) {
    if (e.excitation != excitation || e.rail != rail) continue;
    auto start = static_cast<double>(e.slot);
    if (!out.empty() && out.back().medium == e.medium && out.back().level == e.level &&
        out.back().end == start) {
      out.back().end = start + 1.0;
    } else {
      out.push_back({start, start + 1.0, e.medium, e.level});
    }
  }
  return out;
}

double waveguide_time(const Schedule& schedule, int excitation, int rail) {
  double total = 0.0;
  for (const auto& iv : residence_intervals(schedule, excitation, rail))
    if (iv.medium == Medium::Waveguide) total += iv.end - iv.start;
  return total;
}

ScheduleReport validate_schedule(const Schedule& schedule) {
  ScheduleReport rep;
  const int n = schedule.n;
  rep.makespan_matches = schedule.makespan_slots == closed_form_makespan(n, schedule.encoding);

  rep.residence_matches = true;
  for (int k = 0; k <= n; ++k) {
    for (int r = 0; r < schedule.rails(); ++r) {
      auto ivs = residence_intervals(schedule, k, r);
      bool tiled = !ivs.empty() && ivs.front().start == 0.0 &&
                   ivs.back().end == static_cast<double>(schedule.makespan_slots);
      for (std::size_t i = 1; i < ivs.size(); ++i) tiled = tiled && ivs[i].start == ivs[i - 1].end;
      if (!tiled || waveguide_time(schedule, k, r) != 2.0 * k) rep.residence_matches = false;
    }
  }

  std::map<std::pair<int, long>, int> busy;
  for (const auto& e : schedule.entries) {
    if (e.medium != Medium::Waveguide) continue;
    if (++busy[{e.level, e.slot}] == 2) {
      rep.conflicts.push_back("level " + std::to_string(e.level) + " waveguide double-booked at slot " +
                              std::to_string(e.slot));
    }
  }

  // Route-in dependencies: a level-j flight of excitation k > j starts after
  // every rail of a_j has landed in the level-j control.
  for (int k = 1; k <= n; ++k) {
    for (int r = 0; r < schedule.rails(); ++r) {
      long prev = -1;
      for (int j = 0; j < k; ++j) {
        auto s = schedule.flight_slot(k, r, j, Direction::In);
        if (!s) {
          rep.conflicts.push_back("missing flight k=" + std::to_string(k) + " level " +
                                  std::to_string(j));
          continue;
        }
        if (*s <= prev) rep.conflicts.push_back("flights out of order for k=" + std::to_string(k));
        prev = *s;
        if (j == 0) continue;
        for (int rc = 0; rc < schedule.rails(); ++rc) {
          auto set = schedule.flight_slot(j, rc, j - 1, Direction::In);
          if (set && *set + 1 > *s) {
            rep.conflicts.push_back("k=" + std::to_string(k) + " enters level " + std::to_string(j) +
                                    " before its control is set");
          }
        }
      }
    }
  }
  return rep;
}

std::string schedule_csv(const Schedule& schedule) {
  std::ostringstream os;
  os << "k,level,slot_start,direction,medium\n";
  for (const auto& e : schedule.entries) {
    os << e.excitation << ',' << e.level << ',' << e.slot << ',' << to_string(e.direction) << ','
       << to_string(e.medium) << '\n';
  }
  return os.str();
}

std::string schedule_json(const Schedule& schedule) {
  using nlohmann::json;
  json lanes = json::array();
  for (int k = 0; k <= schedule.n; ++k) {
    for (int r = 0; r < schedule.rails(); ++r) {
      json segs = json::array();
      for (const auto& iv : residence_intervals(schedule, k, r)) {
        segs.push_back({{"start", iv.start},
                        {"end", iv.end},
                        {"medium", to_string(iv.medium)},
                        {"level", iv.level}});
      }
      lanes.push_back({{"k", k}, {"rail", r}, {"segments", segs}});
    }
  }
  json flights = json::array();
  for (const auto& e : schedule.entries) {
    if (e.medium != Medium::Waveguide) continue;
    flights.push_back({{"k", e.excitation},
                       {"rail", e.rail},
                       {"level", e.level},
                       {"slot_start", e.slot},
                       {"direction", to_string(e.direction)}});
  }
  json doc = {{"n", schedule.n},
              {"encoding", to_string(schedule.encoding)},
              {"makespan_t", schedule.makespan_slots},
              {"lanes", lanes},
              {"flights", flights}};
  return doc.dump(2);
}

}  // namespace qramph
