#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include <json.hpp>

#include "qramph/errors.h"
#include "qramph/scheduler.h"

using namespace qramph;

namespace {

const Encoding kScheduled[] = {Encoding::SingleRail, Encoding::HybridDualRail,
                               Encoding::StandardDualRailVacuum, Encoding::StandardDualRailLogical};

long expected_makespan(int n, Encoding e) {
  return is_standard_dual_rail(e) ? 2L * (3 * n - 1) : 2L * (2 * n - 1);
}

double waveguide_total(const std::vector<ResidenceInterval>& iv) {
  double acc = 0.0;
  for (const auto& r : iv)
    if (r.medium == Medium::Waveguide) acc += r.end - r.start;
  return acc;
}

}  // namespace

TEST(Schedule, SmallExamples) {
  const Schedule one = build_schedule(1, Encoding::HybridDualRail);
  EXPECT_EQ(one.makespan_slots, 2);
  EXPECT_EQ(waveguide_time(one, 1), 2.0);
  EXPECT_EQ(build_schedule(4, Encoding::HybridDualRail).makespan_slots, 14);
  EXPECT_EQ(build_schedule(4, Encoding::StandardDualRailVacuum).makespan_slots, 22);
}

TEST(Schedule, RejectsBadN) {
  EXPECT_THROW(build_schedule(0, Encoding::HybridDualRail), InvalidParameter);
}

TEST(Schedule, MakespanMatchesClosedForm) {
  for (Encoding e : kScheduled) {
    for (int n = 1; n <= 12; ++n) {
      const Schedule s = build_schedule(n, e);
      EXPECT_EQ(s.makespan_slots, expected_makespan(n, e)) << to_string(e) << " n=" << n;
      const ScheduleReport rep = validate_schedule(s);
      EXPECT_TRUE(rep.ok()) << to_string(e) << " n=" << n;
    }
  }
}

// Independent conflict check: at most one flight per (level, slot).
TEST(Schedule, WaveguideExclusive) {
  for (Encoding e : kScheduled) {
    for (int n = 1; n <= 12; ++n) {
      const Schedule s = build_schedule(n, e);
      std::set<std::pair<int, long>> used;
      for (const ScheduleEntry& x : s.entries) {
        if (x.medium != Medium::Waveguide) continue;
        EXPECT_TRUE(used.emplace(x.level, x.slot).second)
            << to_string(e) << " n=" << n << " level=" << x.level << " slot=" << x.slot;
      }
    }
  }
}

TEST(Schedule, EveryRailCoversEverySlotOnce) {
  for (Encoding e : kScheduled) {
    for (int n = 1; n <= 8; ++n) {
      const Schedule s = build_schedule(n, e);
      std::map<std::tuple<int, int, long>, int> seen;
      for (const ScheduleEntry& x : s.entries) ++seen[{x.excitation, x.rail, x.slot}];
      EXPECT_EQ(seen.size(), static_cast<std::size_t>((n + 1) * s.rails() * s.makespan_slots));
      for (const auto& [key, count] : seen) EXPECT_EQ(count, 1);
    }
  }
}

TEST(Schedule, ControlsSetBeforeUse) {
  for (Encoding e : kScheduled) {
    for (int n = 1; n <= 12; ++n) {
      const Schedule s = build_schedule(n, e);
      for (int k = 1; k <= n; ++k) {
        for (int r = 0; r < s.rails(); ++r) {
          for (int j = 1; j < k; ++j) {
            const auto mine_in = s.flight_slot(k, r, j, Direction::In);
            const auto mine_out = s.flight_slot(k, r, j, Direction::Out);
            ASSERT_TRUE(mine_in && mine_out);
            for (int rj = 0; rj < s.rails(); ++rj) {
              const auto set = s.flight_slot(j, rj, j - 1, Direction::In);
              const auto unset = s.flight_slot(j, rj, j - 1, Direction::Out);
              ASSERT_TRUE(set && unset);
              EXPECT_GE(*mine_in, *set + 1) << to_string(e) << " n=" << n << " k=" << k << " j=" << j;
              EXPECT_LE(*mine_out + 1, *unset) << to_string(e) << " n=" << n << " k=" << k;
            }
          }
        }
      }
    }
  }
}

TEST(Residence, PartitionAndTotals) {
  for (Encoding e : kScheduled) {
    for (int n = 1; n <= 12; ++n) {
      const Schedule s = build_schedule(n, e);
      double sum = 0.0;
      for (int k = 0; k <= n; ++k) {
        for (int r = 0; r < s.rails(); ++r) {
          const auto iv = residence_intervals(s, k, r);
          ASSERT_FALSE(iv.empty());
          EXPECT_EQ(iv.front().start, 0.0);
          EXPECT_EQ(iv.back().end, static_cast<double>(s.makespan_slots));
          for (std::size_t i = 1; i < iv.size(); ++i) {
            EXPECT_EQ(iv[i].start, iv[i - 1].end);
            EXPECT_LT(iv[i].start, iv[i].end);
          }
          EXPECT_EQ(waveguide_total(iv), 2.0 * k);
          EXPECT_EQ(waveguide_time(s, k, r), 2.0 * k);
          if (r == 0) sum += waveguide_total(iv);
        }
      }
      EXPECT_EQ(sum, static_cast<double>(n * (n + 1)));
    }
  }
}

TEST(Residence, RootControlNeverRouted) {
  const Schedule s = build_schedule(5, Encoding::HybridDualRail);
  const auto iv = residence_intervals(s, 0);
  EXPECT_EQ(waveguide_total(iv), 0.0);
  EXPECT_EQ(iv.size(), 1u);
  EXPECT_EQ(iv.front().medium, Medium::Transmon);
}

TEST(Residence, UnknownExcitation) {
  const Schedule s = build_schedule(3, Encoding::HybridDualRail);
  EXPECT_THROW(residence_intervals(s, 4), InvalidParameter);
  EXPECT_THROW(residence_intervals(s, -1), InvalidParameter);
  EXPECT_THROW(residence_intervals(s, 1, 1), InvalidParameter);
}

TEST(Export, CsvHeaderAndRows) {
  const Schedule s = build_schedule(3, Encoding::HybridDualRail);
  const std::string csv = schedule_csv(s);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,level,slot_start,direction,medium");
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), s.entries.size() + 1);
}

TEST(Export, JsonShape) {
  const Schedule s = build_schedule(2, Encoding::StandardDualRailVacuum);
  const auto j = nlohmann::json::parse(schedule_json(s));
  EXPECT_EQ(j.at("n"), 2);
  EXPECT_EQ(j.at("makespan_t"), 10);
  EXPECT_EQ(j.at("lanes").size(), 6u);
  std::size_t flights = 0;
  for (const auto& x : s.entries) flights += x.medium == Medium::Waveguide;
  EXPECT_EQ(j.at("flights").size(), flights);
}
