#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qramph/analytics.h"
#include "qramph/error_model.h"
#include "qramph/errors.h"
#include "qramph/scheduler.h"

using namespace qramph;

namespace {

QramConfig config(int n, Encoding e) {
  QramConfig c;
  c.n = n;
  c.encoding = e;
  return c;
}

NoiseModel lossless() {
  NoiseModel m;
  m.t1_q = Duration::infinite();
  m.t1_m = Duration::infinite();
  return m;
}

// Uniform draw over the query window of a random excitation rail. A hybrid
// address qubit is only part of the query between its release and its
// return; outside that window it is a plain register qubit.
NoiseEvent random_loss(const Schedule& s, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> k_dist(0, s.n);
  std::uniform_int_distribution<int> r_dist(0, s.rails() - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  NoiseEvent e;
  e.excitation = k_dist(rng);
  e.rail = r_dist(rng);
  const auto iv = residence_intervals(s, e.excitation, e.rail);
  const double span = static_cast<double>(s.makespan_slots);
  double lo = 0.0;
  if (s.encoding == Encoding::HybridDualRail && e.excitation > 0)
    lo = static_cast<double>(*s.flight_slot(e.excitation, 0, 0, Direction::In));
  e.time_t = lo + u(rng) * (span - 2 * lo);
  for (const auto& r : iv) {
    if (e.time_t >= r.start && e.time_t < r.end) e.medium = r.medium;
  }
  return e;
}

}  // namespace

TEST(Noise, Validation) {
  NoiseModel m;
  m.t2_q = Duration::us(300);
  EXPECT_THROW(validate(m), InvalidParameter);
  m = NoiseModel{};
  m.t1_m = Duration::ns(-1);
  EXPECT_THROW(validate(m), InvalidParameter);
  EXPECT_THROW(sample_trajectory(config(2, Encoding::SingleRail), NoiseModel{}, 1), InvalidParameter);
  EXPECT_THROW(sample_trajectory(config(2, Encoding::StandardDualRailLogical), NoiseModel{}, 1),
               InvalidParameter);
}

TEST(Trajectory, NoNoiseNoEvents) {
  for (Encoding e : {Encoding::HybridDualRail, Encoding::StandardDualRailVacuum}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const TrajectoryVerdict v = sample_trajectory(config(3, e), lossless(), seed);
      EXPECT_TRUE(v.events.empty());
      EXPECT_FALSE(v.detected);
      EXPECT_NEAR(v.fidelity, 1.0, 1e-10);
    }
  }
}

TEST(Trajectory, BusPhononLossLeavesBusInF) {
  const int n = 2;
  const Schedule s = build_schedule(n, Encoding::HybridDualRail);
  NoiseEvent e;
  e.excitation = n;
  e.medium = Medium::Waveguide;
  e.time_t = static_cast<double>(*s.flight_slot(n, 0, 0, Direction::In)) + 0.5;
  const TrajectoryVerdict v = run_with_events(config(n, Encoding::HybridDualRail), {e});
  EXPECT_TRUE(v.detected);
  EXPECT_EQ(v.detection_basis, "bus:f");
  ASSERT_EQ(v.events.size(), 1u);
  EXPECT_FALSE(v.events[0].location.empty());
}

TEST(Trajectory, StandardRailLossReadsVacuum) {
  const int n = 2;
  const Schedule s = build_schedule(n, Encoding::StandardDualRailVacuum);
  for (int rail = 0; rail < 2; ++rail) {
    NoiseEvent e;
    e.excitation = 1;
    e.rail = rail;
    e.medium = Medium::Waveguide;
    e.time_t = static_cast<double>(*s.flight_slot(1, rail, 0, Direction::In)) + 0.25;
    const TrajectoryVerdict v = run_with_events(config(n, Encoding::StandardDualRailVacuum), {e});
    EXPECT_TRUE(v.detected);
    EXPECT_NE(v.detection_basis.find(":00"), std::string::npos) << v.detection_basis;
  }
}

TEST(Trajectory, ForcedLossesAlwaysDetected) {
  std::mt19937_64 rng(1234);
  int injected = 0;
  for (Encoding e : {Encoding::HybridDualRail, Encoding::StandardDualRailVacuum}) {
    for (int n = 1; n <= 3; ++n) {
      const Schedule s = build_schedule(n, e);
      for (int i = 0; i < 200; ++i) {
        const NoiseEvent ev = random_loss(s, rng);
        const TrajectoryVerdict v = run_with_events(config(n, e), {ev});
        EXPECT_TRUE(v.detected) << to_string(e) << " n=" << n << " k=" << ev.excitation
                                << " t=" << ev.time_t;
        ++injected;
      }
    }
  }
  EXPECT_GE(injected, 1000);
}

TEST(Trajectory, NoEventsNeverFlagged) {
  std::mt19937_64 rng(9);
  for (Encoding e : {Encoding::HybridDualRail, Encoding::StandardDualRailVacuum}) {
    for (int n = 1; n <= 3; ++n) {
      TrajectoryInput in;
      std::normal_distribution<double> g;
      in.address.resize(std::size_t{1} << n);
      double s = 0;
      for (auto& a : in.address) {
        a = {g(rng), g(rng)};
        s += std::norm(a);
      }
      for (auto& a : in.address) a /= std::sqrt(s);
      const TrajectoryVerdict v = run_with_events(config(n, e), {}, in);
      EXPECT_FALSE(v.detected);
      EXPECT_NEAR(v.fidelity, 1.0, 1e-10);
    }
  }
}

TEST(Trajectory, SeedDeterminism) {
  NoiseModel m;
  m.t1_m = Duration::ns(500);
  m.t2_q = Duration::us(50);
  for (std::uint64_t seed : {1ull, 77ull, 123456789ull}) {
    const auto a = sample_trajectory(config(3, Encoding::HybridDualRail), m, seed);
    const auto b = sample_trajectory(config(3, Encoding::HybridDualRail), m, seed);
    EXPECT_EQ(verdict_json(a), verdict_json(b));
  }
  EXPECT_NE(trajectory_seed(5, 0), trajectory_seed(5, 1));
  auto r1 = trajectory_rng(5, 3);
  auto r2 = trajectory_rng(5, 3);
  EXPECT_EQ(r1(), r2());
}

TEST(Trajectory, DephasingRecordedOnly) {
  NoiseModel m = lossless();
  m.t2_q = Duration::ns(500);
  m.t2_m = Duration::ns(500);
  int with_events = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto v = sample_trajectory(config(2, Encoding::HybridDualRail), m, seed);
    with_events += !v.events.empty();
    for (const auto& e : v.events) EXPECT_EQ(e.kind, EventKind::Dephase);
    EXPECT_FALSE(v.detected);
  }
  EXPECT_GT(with_events, 0);
}

TEST(MonteCarlo, LosslessIsCertain) {
  const SuccessSample s = estimate_success_prob(config(3, Encoding::HybridDualRail), lossless(), 1000, 1);
  EXPECT_EQ(s.p, 1.0);
  EXPECT_EQ(s.trials, 1000);
}

TEST(MonteCarlo, EqualLifetimes) {
  NoiseModel m;
  m.t1_q = m.t1_m = Duration::us(100);
  const SuccessSample s = estimate_success_prob(config(2, Encoding::HybridDualRail), m, 100000, 42, 2);
  const double expected = std::exp(-3.0 * 2100.0 / 1e5);
  EXPECT_NEAR(expected, 0.939, 5e-4);
  EXPECT_LT(std::abs(s.p - expected), 3 * s.stderr_);
}

TEST(MonteCarlo, MatchesClosedForms) {
  NoiseModel m;
  const SuccessSample h = estimate_success_prob(config(7, Encoding::HybridDualRail), m, 100000, 7, 2);
  const double ph = success_prob_hybrid(7, Duration::ns(350), m.t1_q, m.t1_m).p;
  EXPECT_LT(std::abs(h.p - ph), 3 * h.stderr_);
  const SuccessSample v =
      estimate_success_prob(config(3, Encoding::StandardDualRailVacuum), m, 100000, 8, 2);
  const double pv = success_prob_standard_vacuum(3, Duration::ns(350), m.t1_q, m.t1_m);
  EXPECT_LT(std::abs(v.p - pv), 3 * v.stderr_);
}

TEST(MonteCarlo, WorkerCountDoesNotChangeResult) {
  NoiseModel m;
  const auto a = estimate_success_prob(config(3, Encoding::HybridDualRail), m, 5000, 3, 1);
  const auto b = estimate_success_prob(config(3, Encoding::HybridDualRail), m, 5000, 3, 3);
  EXPECT_EQ(a.p, b.p);
}
