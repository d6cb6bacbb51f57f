#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qramph/errors.h"
#include "qramph/sparse_state.h"

using namespace qramph;

namespace {

Config cfg(std::initializer_list<int> v) {
  Config c;
  for (int x : v) c.push_back(static_cast<char16_t>(x));
  return c;
}

const double h = 1.0 / std::numbers::sqrt2;

std::array<cdouble, 9> hadamard_ge() { return {h, h, 0, h, -h, 0, 0, 0, 1}; }

}  // namespace

TEST(SparseState, SwapMovesContents) {
  SparseState s(3);
  s.add(cfg({7, 0, 0}), 1.0);
  s.apply(make_swap(0, 2));
  EXPECT_EQ(s.amplitude(cfg({0, 0, 7})), cdouble(1.0));
  EXPECT_EQ(s.support(), 1u);
}

TEST(SparseState, RouteFollowsControl) {
  // slots: control, source, left, right
  SparseState s(4);
  s.add(cfg({0, 5, 0, 0}), h);
  s.add(cfg({3, 5, 0, 0}), h);
  s.apply(make_route(0, 1, 2, 3));
  EXPECT_NEAR(std::abs(s.amplitude(cfg({0, 0, 5, 0})) - h), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.amplitude(cfg({3, 0, 0, 5})) - h), 0.0, 1e-15);
}

TEST(SparseState, ExchangeAndCz) {
  SparseState s(2);
  s.add(cfg({1, 0}), h);
  s.add(cfg({0, 0}), h);
  s.apply(make_exchange(0, 1, 9));
  EXPECT_NEAR(std::abs(s.amplitude(cfg({0, 9})) - h), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.amplitude(cfg({0, 0})) - h), 0.0, 1e-15);
  s.apply(make_exchange(0, 1, 9));
  EXPECT_NEAR(std::abs(s.amplitude(cfg({1, 0})) - h), 0.0, 1e-15);

  SparseState c(2);
  c.add(cfg({1, 4}), 1.0);
  c.add(cfg({1, 0}), 1.0);
  c.apply(make_cz(0, 1));
  EXPECT_EQ(c.amplitude(cfg({1, 4})), cdouble(-1.0));
  EXPECT_EQ(c.amplitude(cfg({1, 0})), cdouble(1.0));
}

TEST(SparseState, LocalAndPairUnitaries) {
  SparseState s(1);
  s.add(cfg({0}), 1.0);
  s.apply(make_local(0, hadamard_ge(), "h"));
  EXPECT_NEAR(std::abs(s.amplitude(cfg({1})) - h), 0.0, 1e-15);
  s.apply(make_local(0, hadamard_ge(), "h"));
  EXPECT_NEAR(std::abs(s.amplitude(cfg({0})) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(s.support(), 1u);

  SparseState p(2);
  p.add(cfg({1, 0}), 1.0);
  p.apply(make_pair(0, 1, {h, h, h, -h}, "h"));
  EXPECT_NEAR(std::abs(p.amplitude(cfg({1, 0})) - h), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.amplitude(cfg({0, 1})) - h), 0.0, 1e-15);
}

TEST(SparseState, StrictModeRejectsMerging) {
  SparseState s(4);
  s.add(cfg({0, 5, 6, 0}), 1.0);
  EXPECT_THROW(s.apply(make_route(0, 1, 2, 3), true), InvariantViolation);
  SparseState w(2);
  w.add(cfg({1, 2}), 1.0);
  EXPECT_THROW(w.apply(make_exchange(0, 1, 2), true), InvariantViolation);
}

TEST(SparseState, AnnihilateAndProbabilities) {
  SparseState s(2);
  s.add(cfg({2, 3}), 0.6);
  s.add(cfg({0, 0}), 0.8);
  EXPECT_NEAR(s.occupation(1), 0.36, 1e-15);
  EXPECT_NEAR(s.probability_of(0, 2), 0.36, 1e-15);
  // Lowering |f> carries a sqrt(2) matrix element.
  const double before = s.annihilate(0, true);
  EXPECT_NEAR(before, std::sqrt(2 * 0.36), 1e-15);
  EXPECT_NEAR(std::abs(s.amplitude(cfg({1, 3}))), 1.0, 1e-15);
  SparseState t(1);
  t.add(cfg({3}), 1.0);
  EXPECT_EQ(t.annihilate(0, false, 4), 0.0);
}

TEST(SparseState, SamplingFollowsBornRule) {
  SparseState s(1);
  s.add(cfg({0}), std::sqrt(0.2));
  s.add(cfg({1}), std::sqrt(0.8));
  std::mt19937_64 rng(3);
  int ones = 0;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) ones += s.sample(rng)[0] == 1;
  EXPECT_NEAR(ones / double(trials), 0.8, 4 * std::sqrt(0.16 / trials));
}

// Random circuits followed by their inverses return to the start state.
TEST(SparseState, RandomCircuitsInvert) {
  std::mt19937_64 rng(99);
  // Slots 0..3 are tree slots, 4 and 5 are registers.
  std::uniform_int_distribution<int> kind(0, 5), slot(0, 3), reg(4, 5);
  std::uniform_real_distribution<double> ang(0.0, 6.283);
  for (int trial = 0; trial < 200; ++trial) {
    SparseState s(6);
    s.add(cfg({3, 0, 5, 0, 0, 1}), h);
    s.add(cfg({0, 3, 0, 5, 1, 0}), h);
    const SparseState start = s;
    std::vector<Gate> circuit;
    for (int i = 0; i < 25; ++i) {
      const int a = slot(rng), b = slot(rng), c = slot(rng), d = slot(rng), r = reg(rng);
      const double th = ang(rng);
      const cdouble ph = std::polar(1.0, ang(rng));
      switch (kind(rng)) {
        case 0: if (a != b) circuit.push_back(make_swap(a, b)); break;
        case 1:
          if (a != b && a != c && a != d && b != c && b != d && c != d)
            circuit.push_back(make_route(a, b, c, d));
          break;
        case 2: circuit.push_back(make_exchange(r, a, 5)); break;
        case 3: circuit.push_back(make_cz(r, b)); break;
        case 4:
          circuit.push_back(make_local(
              r, {std::cos(th), -std::sin(th) * ph, 0, std::sin(th), std::cos(th) * ph, 0, 0, 0, 1}, "rot"));
          break;
        default:
          circuit.push_back(make_pair(4, 5, {std::cos(th), -std::sin(th), std::sin(th) * ph, std::cos(th) * ph}, "rot"));
      }
    }
    for (const Gate& g : circuit) s.apply(g);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) s.apply(inverse(*it));
    EXPECT_NEAR(std::abs(s.inner(start)), 1.0, 1e-12) << trial;
  }
}
