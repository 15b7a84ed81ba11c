#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "whacamole/adversaries.hpp"
#include "whacamole/algorithms.hpp"
#include "whacamole/analysis/etable.hpp"

using namespace whacamole;

namespace {

void expect_replays(const GameResult& r) {
  ASSERT_TRUE(r.instance.has_value());
  EXPECT_NO_THROW(validate_instance(*r.instance));
  EXPECT_EQ(gain(*r.instance, r.alg_schedule), r.example_alg_gain);
  EXPECT_EQ(gain(*r.instance, r.adv_schedule), r.example_adv_gain);
  if (r.trials == 1) {
    EXPECT_EQ(r.example_alg_gain, r.alg_gain);
    EXPECT_EQ(r.example_adv_gain, r.adv_gain);
  }
  EXPECT_EQ(r.transcript.size(), r.instance->num_steps());
}

std::vector<std::unique_ptr<OnlineAlgorithm>> battery() {
  std::vector<std::unique_ptr<OnlineAlgorithm>> out;
  AlgorithmParams loose;
  loose.require_nondecreasing = false;
  for (const char* name : {"greedy", "decque-efh", "fifoque-eh", "mark-and-pick", "first-pending", "last-pending"}) {
    out.push_back(make_algorithm(name, loose));
  }
  return out;
}

// Picks the unit item whenever it is pending.
class TakeOne final : public detail::Cloneable<TakeOne> {
 public:
  std::string name() const override { return "take-one"; }
  std::optional<ItemKey> pick(const Observation& obs, Rng&) override {
    for (const auto& it : obs.pending) {
      if (it.weight == 1.0) return it.key;
    }
    if (obs.pending.empty()) return std::nullopt;
    return obs.pending.front().key;
  }
};

class Passive final : public detail::Cloneable<Passive> {
 public:
  std::string name() const override { return "passive"; }
  std::optional<ItemKey> pick(const Observation&, Rng&) override { return std::nullopt; }
};

}  // namespace

TEST(TwoItemGame, RatioTwo) {
  for (const char* name : {"greedy", "first-pending", "last-pending"}) {
    auto alg = make_algorithm(name);
    const GameResult r = lb_two_item_set_game(*alg);
    EXPECT_EQ(r.alg_gain, 1.0) << name;
    EXPECT_EQ(r.adv_gain, 2.0) << name;
    EXPECT_EQ(r.ratio, 2.0) << name;
    expect_replays(r);
  }
}

TEST(TwoItemGame, PassingFirst) {
  Passive alg;
  const GameResult r = lb_two_item_set_game(alg);
  EXPECT_EQ(r.adv_gain, 2.0);
  EXPECT_GE(r.ratio, 2.0);
  expect_replays(r);
}

TEST(PhiGame, Branches) {
  Greedy greedy;
  const GameResult g = lb_phi_queue_game(greedy);
  EXPECT_NEAR(g.alg_gain, std::numbers::phi, 1e-15);
  EXPECT_NEAR(g.adv_gain, 1 + std::numbers::phi, 1e-15);
  EXPECT_NEAR(g.ratio, std::numbers::phi, 1e-12);
  expect_replays(g);

  ConstantIndex first(ConstantIndex::End::first);
  const GameResult f = lb_phi_queue_game(first);
  EXPECT_EQ(f.alg_gain, 1.0);
  EXPECT_NEAR(f.ratio, std::numbers::phi, 1e-12);
  expect_replays(f);
}

TEST(PhiGame, Battery) {
  for (auto& alg : battery()) {
    const GameResult r = lb_phi_queue_game(*alg);
    EXPECT_GE(r.ratio, std::numbers::phi - 1e-12) << alg->name();
  }
}

TEST(DecrementalGame, TakeOneGivesR) {
  const LBSequence s = solve_lb_sequence(3);
  TakeOne alg;
  const GameResult r = lb_decremental_queue_game(alg, s);
  EXPECT_EQ(r.branch, 1u);
  EXPECT_EQ(r.alg_gain, 1.0);
  EXPECT_NEAR(r.adv_gain, 1 + s.z[1], 1e-12);
  EXPECT_NEAR(r.ratio, s.R, 1e-9);
  expect_replays(r);
}

TEST(DecrementalGame, BatteryAtLeastR) {
  for (std::size_t n = 3; n <= 6; ++n) {
    const LBSequence s = solve_lb_sequence(n);
    for (auto& alg : battery()) {
      const GameResult r = lb_decremental_queue_game(*alg, s);
      EXPECT_GE(r.ratio, s.R - 1e-9) << alg->name() << " n=" << n << " " << r.note;
      expect_replays(r);
    }
  }
}

TEST(DecrementalGame, DecQueEFHBetweenBounds) {
  DecQueEFH alg;
  const GameResult r = lb_decremental_queue_game(alg, solve_lb_sequence(3));
  EXPECT_GE(r.ratio, 1.6329 - 1e-6);
  EXPECT_LE(r.ratio, 2 * (std::sqrt(13.0) - 1) / 3 + 1e-9);
}

TEST(DecrementalGame, RejectsBrokenSequence) {
  Greedy alg;
  EXPECT_THROW(lb_decremental_queue_game(alg, solve_lb_sequence(2)), BadConfig);
}

TEST(MemorylessGame, AlwaysFirstIsTwo) {
  ConstantIndex first(ConstantIndex::End::first);
  const GameResult r = lb_memoryless_queue_game(first, 10, 200);
  EXPECT_EQ(r.branch, 0u);
  EXPECT_DOUBLE_EQ(r.alg_gain, 200.0);
  EXPECT_DOUBLE_EQ(r.adv_gain, 400.0);
  EXPECT_DOUBLE_EQ(r.ratio, 2.0);
  expect_replays(r);
}

TEST(MemorylessGame, GreedyAboveClosedForm) {
  Greedy alg;
  const GameResult r = lb_memoryless_queue_game(alg, 10, 1000);
  EXPECT_EQ(r.branch, 10u);
  EXPECT_TRUE(r.guaranteed);
  EXPECT_GE(r.ratio, memoryless_closed_form(10, 1000, 10));
  EXPECT_NEAR(memoryless_closed_form(10, 1000, 10), 1.9288, 1e-4);
  EXPECT_NEAR(r.ratio, 3912.6 / 2014.5, 1e-9);
  expect_replays(r);
}

TEST(MemorylessGame, RecordedAndTalliedAgree) {
  for (const char* name : {"greedy", "first-pending", "last-pending", "unirand"}) {
    for (std::size_t n : {1, 3, 6}) {
      auto a = make_algorithm(name);
      auto b = make_algorithm(name);
      const GameResult rec = lb_memoryless_queue_game(*a, n, 40, 7, true);
      const GameResult tal = lb_memoryless_queue_game(*b, n, 40, 7, false);
      expect_replays(rec);
      EXPECT_NEAR(rec.alg_gain, tal.alg_gain, 1e-9) << name << " " << n;
      EXPECT_NEAR(rec.adv_gain, tal.adv_gain, 1e-9) << name << " " << n;
    }
  }
}

TEST(MemorylessGame, MiddleIndex) {
  // always picks the median pending item
  class Median final : public detail::Cloneable<Median> {
   public:
    std::string name() const override { return "median"; }
    std::optional<ItemKey> pick(const Observation& obs, Rng&) override {
      if (obs.pending.empty()) return std::nullopt;
      return obs.pending[obs.pending.size() / 2].key;
    }
    bool memoryless() const override { return true; }
  };
  Median alg;
  const GameResult r = lb_memoryless_queue_game(alg, 8, 500);
  EXPECT_EQ(r.branch, 4u);
  EXPECT_GE(r.ratio, memoryless_closed_form(8, 500, 4));
  expect_replays(r);
}

TEST(MemorylessGame, LargeHorizon) {
  Greedy alg;
  const GameResult r = lb_memoryless_queue_game(alg, 100, 100000);
  EXPECT_LT(std::abs(r.ratio - 2.0), 1e-2);
  EXPECT_GE(r.ratio, memoryless_closed_form(100, 100000, 100));
}

TEST(MemorylessGame, NonMemorylessIsFlagged) {
  FIFOQueEH alg;
  EXPECT_THROW(lb_memoryless_queue_game(alg, 4, 10), WrongFlavor);
  DecQueEFH dec;
  EXPECT_THROW(lb_memoryless_queue_game(dec, 4, 10), WrongFlavor);
  MarkAndPick mp;
  const GameResult r = lb_memoryless_queue_game(mp, 4, 10);
  EXPECT_FALSE(r.guaranteed);
  expect_replays(r);
}

TEST(AdaptiveGame, UniRandTwo) {
  UniRand alg;
  const GameResult r = lb_adaptive_set_game(alg, 2, 20000, 3);
  EXPECT_EQ(r.alg_gain, 1.0);
  EXPECT_NEAR(r.ratio, 1.5, 4 * r.ratio_stderr + 1e-12);
  EXPECT_GT(r.ratio_stderr, 0.0);
  expect_replays(r);
}

TEST(AdaptiveGame, UniRandTen) {
  UniRand alg;
  const GameResult r = lb_adaptive_set_game(alg, 10, 100000, 11, 2);
  EXPECT_NEAR(r.ratio, 1.9, 3 * r.ratio_stderr);
}

TEST(AdaptiveGame, DeterministicIsTwo) {
  for (const char* name : {"greedy", "first-pending", "last-pending"}) {
    auto alg = make_algorithm(name);
    for (std::size_t n : {2, 5}) {
      const GameResult r = lb_adaptive_set_game(*alg, n, 50, 1);
      EXPECT_EQ(r.ratio, 2.0) << name;
      EXPECT_EQ(r.ratio_stderr, 0.0);
    }
  }
}

TEST(AdaptiveGame, NeedsDistribution) {
  MarkAndPick alg;
  EXPECT_THROW(lb_adaptive_set_game(alg, 3, 10, 1), NoDistribution);
  UniRand u;
  EXPECT_THROW(lb_adaptive_set_game(u, 1, 10, 1), BadConfig);
}

TEST(AdaptiveGame, ParallelMatchesSerial) {
  UniRand alg;
  const GameResult a = lb_adaptive_set_game(alg, 6, 4000, 9, 1);
  const GameResult b = lb_adaptive_set_game(alg, 6, 4000, 9, 3);
  EXPECT_DOUBLE_EQ(a.adv_gain, b.adv_gain);
  EXPECT_DOUBLE_EQ(a.alg_gain, b.alg_gain);
}

TEST(YaoProcess, SmallCases) {
  Greedy g;
  const GameResult one = yao_uniform_process(g, 1, 100, 5);
  EXPECT_EQ(one.alg_gain, 1.0);
  EXPECT_EQ(one.ratio, 1.0);
  const GameResult two = yao_uniform_process(g, 2, 40000, 5);
  EXPECT_EQ(two.adv_gain, 2.0);
  EXPECT_NEAR(two.alg_gain, 1.5, 4 * two.alg_stderr);
  expect_replays(two);
}

TEST(YaoProcess, MatchesTable) {
  const ETable t = e_table(12);
  UniRand u;
  const GameResult r = yao_uniform_process(u, 12, 20000, 17, 2);
  EXPECT_NEAR(r.alg_gain, static_cast<double>(t.at(12, 12)), 3.5 * r.alg_stderr);
}

TEST(GameJson, Shape) {
  Greedy g;
  const Json j = game_result_to_json(lb_phi_queue_game(g));
  EXPECT_EQ(j.at("game"), "phi_queue");
  EXPECT_TRUE(j.contains("transcript"));
  const Instance back = instance_from_json(j.at("instance"));
  EXPECT_NEAR(gain(back, schedule_from_json(back, j.at("adv_schedule"))), 1 + std::numbers::phi, 1e-12);
  EXPECT_THROW(run_game("nope", g, {}), UnknownName);
}
