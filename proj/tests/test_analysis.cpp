#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "whacamole/analysis.hpp"

using namespace whacamole;

TEST(ETable, KnownEntries) {
  const ETable t = e_table(3);
  EXPECT_EQ(t.at(1, 1), Rational(1));
  EXPECT_EQ(t.at(2, 2), Rational(3, 2));
  EXPECT_EQ(t.at(3, 3), Rational(13, 6));
  EXPECT_EQ(t.at(3, 2), Rational(5, 3));
  EXPECT_EQ(t.at(3, 0), Rational(0));
  EXPECT_THROW(e_table(0), BadConfig);
}

TEST(ETable, BoundsPlugIn) {
  EXPECT_EQ(e_lower_bound(3, 3), Rational(19, 9));
  EXPECT_NEAR(e_upper_bound_rounded_down(3, 3), 4 * (1 - std::exp(-1.0)) + 1, 1e-12);
  EXPECT_LT(e_upper_bound_rounded_down(3, 3), 4 * (1 - std::exp(-1.0)) + 1);
  EXPECT_EQ(e_lower_bound(1, 1), Rational(1));
}

TEST(ETable, BoundsHoldUpTo50) {
  EXPECT_TRUE(check_e_bounds(e_table(1)));
  EXPECT_TRUE(check_e_bounds(e_table(50)));
}

TEST(ETable, RatioBelowEOverEMinusOne) {
  const ETable t = e_table(50);
  const Rational limit = e_ratio_lower();
  EXPECT_LT(limit, Rational(std::numbers::e / (std::numbers::e - 1)));
  for (std::size_t n = 1; n <= 50; ++n) {
    EXPECT_LT(Rational(n) / t.at(n, n), limit) << n;
    EXPECT_GE(t.at(n, n) / n, 1 - rational_pow(1 - Rational(1, n), n)) << n;
  }
}

TEST(Strategy, Feasibility) {
  EXPECT_TRUE(is_feasible(Strategy::parse("tdtd"), 2, 2));
  EXPECT_FALSE(is_feasible(Strategy::parse("dttd"), 2, 2));  // suffix ttd
  EXPECT_FALSE(is_feasible(Strategy::parse("td"), 2, 2));
  EXPECT_FALSE(is_feasible(Strategy::parse("dd"), 2, 3));
  EXPECT_THROW(Strategy::parse("tx"), BadConfig);
}

TEST(Strategy, DeleteOnlyGainsNothing) {
  for (std::size_t a = 1; a <= 6; ++a) {
    for (std::size_t p = 0; p <= a; ++p) EXPECT_EQ(expected_gain(Strategy{std::string(a, 'd')}, a, p), 0);
  }
}

TEST(Strategy, NaturalWordMatchesTable) {
  EXPECT_EQ(expected_gain(Strategy::natural(2), 2, 2), Rational(3, 2));
  EXPECT_EQ(expected_gain(Strategy::natural(3), 3, 3), Rational(13, 6));
  const ETable t = e_table(8);
  for (std::size_t a = 1; a <= 8; ++a) {
    for (std::size_t p = 0; p <= a; ++p) EXPECT_EQ(expected_gain(Strategy::natural(a), a, p), t.at(a, p));
  }
}

TEST(Strategy, Guards) {
  EXPECT_THROW(expected_gain(Strategy::natural(13), 13, 13), TooLarge);
  EXPECT_THROW(expected_gain(Strategy::parse("dttd"), 2, 2), Infeasible);
  EXPECT_THROW(evaluate_word(Strategy::parse("ddd"), 2, 2), Infeasible);
}

TEST(Strategy, SwapExample) {
  // dt td is not feasible (suffix "ttd"); evaluated raw
  const Rational natural = expected_gain(Strategy::parse("tdtd"), 2, 2);
  const Rational swapped = evaluate_word(Strategy::parse("dttd"), 2, 2);
  EXPECT_EQ(swapped, Rational(1));
  EXPECT_GE(natural, swapped);
}

TEST(Strategy, KStrategiesForThree) {
  const Rational floor = expected_gain(Strategy::natural(2), 2, 2);
  std::size_t seen = 0;
  for (const Strategy& s : feasible_words(3)) {
    if (s.count('t') != 2) continue;
    ++seen;
    EXPECT_GE(expected_gain(s, 3, 3), floor) << s.word;
  }
  EXPECT_GT(seen, 0u);
}

TEST(Strategy, FeasibleWordCount) {
  // a d's and k t's with the suffix condition: ballot numbers summed over k
  EXPECT_EQ(feasible_words(1).size(), 2u);  // d, td
  EXPECT_EQ(feasible_words(2).size(), 5u);  // dd, tdd, dtd, tdtd, ttdd
  for (const auto& s : feasible_words(4)) EXPECT_TRUE(is_feasible(s, 4, 4)) << s.word;
}

TEST(Strategy, LemmasSmall) {
  const auto rep = verify_strategy_lemmas(3);
  EXPECT_TRUE(rep.ok());
  EXPECT_GT(rep.comparisons, 0u);
  EXPECT_THROW(verify_strategy_lemmas(7), TooLarge);
}

TEST(Dominance, Definition) {
  EXPECT_TRUE(dominates(make_set({1, 2}), {}));
  EXPECT_TRUE(dominates({}, {}));
  EXPECT_TRUE(dominates(make_set({5, 3}), make_set({4, 3})));
  EXPECT_FALSE(dominates(make_set({5}), make_set({3, 2})));
  EXPECT_TRUE(dominates(make_set({5, 3}), make_set({3, 2}), 1.5));
  EXPECT_FALSE(dominates(make_set({5, 3}), make_set({3, 2.5}), 1.5));
}

TEST(Dominance, Sharp) {
  EXPECT_EQ(sharp(0, make_set({1, 2})), 2u);
  EXPECT_EQ(sharp(3, make_set({1, 2})), 0u);
  EXPECT_EQ(sharp(2, make_set({1, 2, 5})), 2u);
}

TEST(Dominance, CharacterizationsAgreeOnFourElements) {
  const auto rep = verify_dominance({1, 2, 3, 4});
  EXPECT_EQ(rep.pairs, 256u);
  EXPECT_TRUE(rep.ok());
}

TEST(Dominance, ScaledCharacterizationsAgree) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> x(rng() % 5), y(rng() % 5);
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng);
    const auto sx = make_set(x), sy = make_set(y);
    const double s = 1.0 / std::numbers::phi;
    EXPECT_EQ(dominates(sx, sy, s), dominates_by_injection(sx, sy, s));
    EXPECT_EQ(dominates(sx, sy, s), dominates_by_counting(sx, sy, s));
  }
}

TEST(LBSequence, NThree) {
  const LBSequence s = solve_lb_sequence(3);
  EXPECT_NEAR(s.R, 1.6329, 1e-4);
  EXPECT_NEAR(s.z[2], 0.61238, 1e-4);
  EXPECT_TRUE(s.ordered);
  EXPECT_LT(s.max_residual, 1e-10);
  EXPECT_NEAR(s.z[2], lb_quintic_root(), 1e-9);
  EXPECT_NEAR(s.R, 1.0 / lb_quintic_root(), 1e-9);
  EXPECT_TRUE(check_lb_inequalities(s));
}

TEST(LBSequence, NFiveAndLimit) {
  EXPECT_NEAR(solve_lb_sequence(5).R, 1.6367, 1e-3);
  double prev = 0;
  for (std::size_t n = 3; n <= 12; ++n) {
    const LBSequence s = solve_lb_sequence(n);
    EXPECT_GE(s.R, prev) << n;
    EXPECT_LT(s.R, 1.6379) << n;
    EXPECT_LT(s.max_residual, 1e-10) << n;
    prev = s.R;
  }
  EXPECT_NEAR(prev, 1.6378458, 1e-5);
}

TEST(LBSequence, OrderingBreaksOutsideMidRange) {
  EXPECT_FALSE(solve_lb_sequence(2).ordered);
  for (std::size_t n = 3; n <= 6; ++n) EXPECT_TRUE(solve_lb_sequence(n).ordered) << n;
  EXPECT_FALSE(solve_lb_sequence(7).ordered);
}

TEST(LBSequence, PerturbationsAreRejected) {
  LBSequence s = solve_lb_sequence(3);
  LBSequence inflated = s;
  inflated.R += 1e-3;
  EXPECT_FALSE(check_lb_inequalities(inflated));
  LBSequence zero_tail = s;
  zero_tail.z[6] = 0.0;
  EXPECT_FALSE(check_lb_inequalities(zero_tail));
  EXPECT_THROW(solve_lb_sequence(1), BadConfig);
  EXPECT_THROW(solve_lb_sequence(13), BadConfig);
}

TEST(RandomizedBound, NOne) {
  const auto b = randomized_queue_bound_exact(1);
  EXPECT_EQ(b.a, Rational(2));
  EXPECT_EQ(b.M, Rational(3));
  EXPECT_EQ(b.R, Rational(4, 3));
  EXPECT_EQ(b.v, (std::vector<Rational>{Rational(2, 3), Rational(1, 3)}));
  const auto d = randomized_queue_bound(1);
  EXPECT_DOUBLE_EQ(d.R, 4.0 / 3.0);
}

TEST(RandomizedBound, NTen) {
  const auto b = randomized_queue_bound(10);
  EXPECT_NEAR(b.R, 1.5396, 1e-4);
  EXPECT_NEAR(b.M, 1.85312, 1e-5);
  double total = 0;
  for (double v : b.v) {
    EXPECT_GE(v, 0.0);
    total += v;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  const auto e = randomized_queue_bound_exact(10);
  Rational sum = 0;
  for (const auto& v : e.v) sum += v;
  EXPECT_EQ(sum, Rational(1));
  EXPECT_NEAR(static_cast<double>(e.R), b.R, 1e-14);
}

TEST(RandomizedBound, Limit) {
  const double limit = std::numbers::e / (std::numbers::e - 1);
  EXPECT_LT(std::abs(randomized_queue_bound(1000000).R - limit), 1e-5);
  double prev = 0;
  for (std::size_t n = 1; n <= 200; ++n) {
    const double r = randomized_queue_bound(n).R;
    EXPECT_GT(r, prev);
    prev = r;
  }
}

TEST(Pressure, Examples) {
  const auto p = lb_randomized_queue_pressure({0, 1}, 1);
  EXPECT_EQ(p.best_k, 0u);
  EXPECT_DOUBLE_EQ(p.ratio, 1.5);
  const auto h = lb_randomized_queue_pressure({0.5, 0.5}, 1);
  EXPECT_EQ(h.best_k, 0u);
  EXPECT_DOUBLE_EQ(h.ratio, 4.0 / 3.0);
  EXPECT_THROW(lb_randomized_queue_pressure({0.5, 0.4}, 1), BadDistribution);
  EXPECT_THROW(lb_randomized_queue_pressure({1.5, -0.5}, 1), BadDistribution);
  EXPECT_THROW(lb_randomized_queue_pressure({1.0}, 1), BadDistribution);
}

TEST(Pressure, NeverBelowBound) {
  std::mt19937_64 rng(8);
  std::exponential_distribution<double> ex(1.0);
  for (std::size_t n : {2, 5, 20}) {
    const double R = randomized_queue_bound(n).R;
    for (int rep = 0; rep < 500; ++rep) {
      std::vector<double> q(n + 1);
      double t = 0;
      for (auto& x : q) t += (x = ex(rng));
      for (auto& x : q) x /= t;
      EXPECT_GE(lb_randomized_queue_pressure(q, n).ratio, R - 1e-12);
    }
  }
}
