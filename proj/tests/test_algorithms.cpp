#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "whacamole/algorithms.hpp"
#include "whacamole/generators.hpp"
#include "whacamole/offline.hpp"
#include "whacamole/timeline.hpp"

using namespace whacamole;

namespace {

struct Fixture {
  std::vector<ObservedItem> items;
  std::vector<std::string> ids;
  Observation obs(Flavor f = Flavor::dynamic_queue) const { return {f, 0, items, items}; }
};

Fixture pending(std::vector<double> w) {
  Fixture f;
  f.ids.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) f.ids.push_back(std::string(1, static_cast<char>('a' + i)));
  for (std::size_t i = 0; i < w.size(); ++i) f.items.push_back({key_at(i), w[i], f.ids[i], true});
  return f;
}

std::vector<std::string> picked_ids(const Instance& inst, const Schedule& s) {
  std::vector<std::string> out;
  for (const auto& p : s.picks) out.push_back(p ? inst.id(*p) : "-");
  return out;
}

Instance queue_of(Flavor f, std::vector<double> w, std::size_t steps) {
  InstanceBuilder b(f);
  b.step();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::string prev = i ? "q" + std::to_string(i - 1) : "";
    b.insert("q" + std::to_string(i), w[i], i ? std::optional<std::string_view>{prev} : std::nullopt);
  }
  for (std::size_t t = 1; t < steps; ++t) b.step();
  return std::move(b).build();
}

}  // namespace

TEST(Greedy, PicksHeaviestOrPass) {
  Rng rng(0);
  Greedy g;
  auto f = pending({1, 2});
  EXPECT_EQ(g.pick(f.obs(), rng), key_at(1));
  auto e = pending({});
  EXPECT_EQ(g.pick(e.obs(), rng), std::nullopt);
}

TEST(Greedy, TieGoesToHigherId) {
  Rng rng(0);
  Greedy g;
  auto f = pending({1, 1});
  EXPECT_EQ(g.pick(f.obs(), rng), key_at(1));  // "b" > "a"
}

TEST(UniRand, Distribution) {
  UniRand u;
  auto two = pending({1, 5});
  EXPECT_EQ(*u.distribution(two.obs()), (std::vector<double>{0.5, 0.5}));
  auto one = pending({3});
  EXPECT_EQ(*u.distribution(one.obs()), std::vector<double>{1.0});
}

TEST(UniRand, EmpiricalFrequencies) {
  UniRand u;
  auto f = pending({1, 2, 3, 4});
  Rng rng(2024);
  constexpr int kTrials = 100000;
  std::map<ItemKey, int> hits;
  for (int i = 0; i < kTrials; ++i) ++hits[*u.pick(f.obs(), rng)];
  const double sigma = std::sqrt(kTrials * 0.25 * 0.75);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(hits[key_at(i)], kTrials / 4.0, 3 * sigma);
}

TEST(DecQueEFH, DefaultParameters) {
  DecQueEFHParams p;
  EXPECT_NEAR(p.beta, 0.575694, 1e-6);
  EXPECT_NEAR(p.xi, 0.767592, 1e-6);
  EXPECT_LT(p.beta, p.xi);
}

TEST(DecQueEFH, StageTrace) {
  const Instance inst = queue_of(Flavor::decremental_queue, {0.5, 0.6, 1.0}, 3);
  DecQueEFH alg;
  const auto res = simulate(inst, alg, 0);
  EXPECT_EQ(picked_ids(inst, res.schedule), (std::vector<std::string>{"q1", "q2", "q0"}));
}

TEST(DecQueEFH, SingleItem) {
  const Instance inst = queue_of(Flavor::decremental_queue, {1.0}, 1);
  DecQueEFH alg;
  EXPECT_EQ(simulate(inst, alg, 0).gain, 1.0);
}

TEST(DecQueEFH, RestartWhenHeavyItemDeleted) {
  // stage heavy h = q2 is deleted before phase F; the step restarts at E
  InstanceBuilder b(Flavor::decremental_queue);
  b.step().insert("a", 0.9).insert("b", 0.2, "a").insert("h", 1.0, "b").insert("z", 0.3, "h");
  b.step().remove("a").remove("b").remove("h");
  b.step();
  const Instance inst = std::move(b).build();
  DecQueEFH alg;
  const auto res = simulate(inst, alg, 0);
  EXPECT_EQ(picked_ids(inst, res.schedule), (std::vector<std::string>{"a", "z", "-"}));
  EXPECT_EQ(alg.phase(), DecQueEFH::Phase::E);
}

TEST(DecQueEFH, RejectsOtherFlavors) {
  const Instance inst = queue_of(Flavor::fifo_queue, {1.0}, 1);
  DecQueEFH alg;
  EXPECT_THROW(simulate(inst, alg, 0), WrongFlavor);
}

TEST(DecQueEFH, RandomInstancesWithinBound) {
  const double bound = 2.0 * (std::sqrt(13.0) - 1.0) / 3.0;
  EXPECT_NEAR(bound, 1.73703, 1e-5);
  DecQueEFH alg;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const Instance inst = random_instance(Flavor::decremental_queue, 1 + seed % 8, 8,
                                          WeightDist::uniform(0.05, 1.0), seed);
    const double opt = optimal_gain_matching(inst).gain;
    const double got = simulate(inst, alg, 0).gain;
    ASSERT_LE(opt, bound * got + 1e-9) << seed;
  }
}

TEST(FIFOQueEH, TightInstanceOne) {
  const Instance inst = named_instance("fifo_tight_1", 1e-3);
  FIFOQueEH alg;
  const auto res = simulate(inst, alg, 0);
  EXPECT_EQ(picked_ids(inst, res.schedule), (std::vector<std::string>{"c", "d", "-", "-"}));
  EXPECT_NEAR(res.gain, 5.0 / 3.0, 1e-12);
  EXPECT_NEAR(optimal_gain_matching(inst).gain, 3.0 - 2e-3, 1e-12);
}

TEST(FIFOQueEH, TightInstanceTwo) {
  const Instance inst = named_instance("fifo_tight_2", 1e-3);
  FIFOQueEH alg;
  const auto res = simulate(inst, alg, 0);
  EXPECT_EQ(picked_ids(inst, res.schedule), (std::vector<std::string>{"a", "d", "-"}));
  EXPECT_NEAR(res.gain, 5.0 / 3.0, 1e-12);
  EXPECT_NEAR(optimal_gain_matching(inst).gain, 3.0 - 2e-3, 1e-12);
}

TEST(FIFOQueEH, FirstStepTakesEBranch) {
  FIFOQueEH alg;
  Rng rng(0);
  auto f = pending({0.5, 0.7, 1.0});
  EXPECT_EQ(alg.pick(f.obs(Flavor::fifo_queue), rng), key_at(1));
  EXPECT_EQ(alg.previous_heavy(), key_at(2));
}

TEST(FIFOQueEH, RandomFifoWithinBound) {
  FIFOQueEH alg;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const Instance inst = random_instance(Flavor::fifo_queue, 1 + seed % 8, 8, WeightDist::uniform(0.05, 1.0), seed);
    const double opt = optimal_gain_matching(inst).gain;
    ASSERT_LE(opt, 1.8 * simulate(inst, alg, 0).gain + 1e-9) << seed;
  }
}

TEST(MarkAndPick, IncreasingQueueTrace) {
  const Instance inst = queue_of(Flavor::dynamic_queue, {1, 2, 3}, 3);
  MarkAndPick alg;
  const auto res = simulate(inst, alg, 0);
  EXPECT_EQ(picked_ids(inst, res.schedule), (std::vector<std::string>{"q1", "q2", "q0"}));
  EXPECT_EQ(res.gain, 6.0);
  EXPECT_EQ(alg.fallbacks(), 0u);
}

TEST(MarkAndPick, SingleItem) {
  const Instance inst = queue_of(Flavor::dynamic_queue, {4}, 1);
  MarkAndPick alg;
  EXPECT_EQ(simulate(inst, alg, 0).gain, 4.0);
}

TEST(MarkAndPick, PassDoesNotMark) {
  MarkAndPick alg;
  Rng rng(0);
  Fixture f = pending({1});
  f.items[0].pending = false;
  const Observation obs{Flavor::dynamic_queue, 0, f.items, {}};
  EXPECT_EQ(alg.pick(obs, rng), std::nullopt);
  EXPECT_TRUE(alg.marked().empty());
}

TEST(MarkAndPick, ThresholdGapFallsBackToHeaviest) {
  InstanceBuilder b(Flavor::dynamic_queue);
  b.step().insert("y", 5).insert("x", 10, "y");
  b.step().remove("y");
  b.step().insert("z", 1);
  const Instance inst = std::move(b).build();
  ASSERT_TRUE(validate_instance(inst).nondecreasing_weights);
  MarkAndPick alg;
  const auto res = simulate(inst, alg, 0);
  EXPECT_EQ(picked_ids(inst, res.schedule), (std::vector<std::string>{"x", "-", "z"}));
  EXPECT_EQ(alg.fallbacks(), 1u);
}

TEST(MarkAndPick, DecreasingQueueViolatesPrecondition) {
  const Instance inst = queue_of(Flavor::dynamic_queue, {3, 1}, 2);
  MarkAndPick strict;
  EXPECT_THROW(simulate(inst, strict, 0), NoEligiblePick);
  MarkAndPick lenient(MarkAndPickParams{false});
  EXPECT_EQ(simulate(inst, lenient, 0).gain, 4.0);
}

TEST(MarkAndPick, RandomNondecreasingWithinPhi) {
  MarkAndPick alg;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const Instance inst = random_instance(Flavor::dynamic_queue, 1 + seed % 8, 8,
                                          WeightDist::uniform(0.05, 1.0), seed, true);
    ASSERT_TRUE(validate_instance(inst).nondecreasing_weights);
    const double opt = optimal_gain_matching(inst).gain;
    ASSERT_LE(opt, kPhi * simulate(inst, alg, 0).gain + 1e-9) << seed;
  }
}

TEST(RMix, SingleItemCertain) {
  RMix r;
  auto f = pending({0.3});
  EXPECT_EQ(*r.distribution(f.obs()), std::vector<double>{1.0});
}

TEST(RMix, LightPrefixNeverPicked) {
  RMix r;
  auto f = pending({0.1, 0.2, 1.0, 0.3});
  const auto d = *r.distribution(f.obs());
  EXPECT_EQ(d, (std::vector<double>{0, 0, 1, 0}));
  Rng rng(3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(r.pick(f.obs(), rng), key_at(2));
}

TEST(RMix, DistributionMatchesSampling) {
  RMix r;
  auto f = pending({0.5, 0.45, 0.8, 1.0});
  const auto d = *r.distribution(f.obs());
  double total = 0;
  for (double p : d) total += p;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(d[0], 1.0 - std::log(2.0), 1e-12);
  EXPECT_EQ(d[1], 0.0);
  Rng rng(11);
  constexpr int kTrials = 100000;
  std::vector<int> hits(4, 0);
  for (int i = 0; i < kTrials; ++i) ++hits[index_of(*r.pick(f.obs(), rng))];
  for (std::size_t i = 0; i < 4; ++i) {
    const double sigma = std::sqrt(kTrials * d[i] * (1 - d[i])) + 1.0;
    EXPECT_NEAR(hits[i], kTrials * d[i], 3 * sigma);
  }
}

TEST(RMix, ZeroWeightsPickEarliest) {
  RMix r;
  auto f = pending({0, 0});
  EXPECT_EQ(*r.distribution(f.obs()), (std::vector<double>{1, 0}));
}

TEST(RMix, MeanGainOnRandomQueues) {
  RMix r;
  constexpr int kTrials = 10000;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Instance inst = random_instance(Flavor::dynamic_queue, 8, 8, WeightDist::uniform(0.05, 1.0), seed);
    const double opt = optimal_gain_matching(inst).gain;
    double sum = 0, sq = 0;
    for (int t = 0; t < kTrials; ++t) {
      const double g = simulate(inst, r, derive_seed(seed, t)).gain;
      sum += g;
      sq += g * g;
    }
    const double mean = sum / kTrials;
    const double se = std::sqrt(std::max(0.0, sq / kTrials - mean * mean) / kTrials);
    EXPECT_GE(mean, opt * (1 - 1 / std::numbers::e) - 3 * se) << seed;
  }
}

TEST(Memoryless, DistributionDependsOnlyOnPendingWeights) {
  std::vector<std::unique_ptr<OnlineAlgorithm>> algs;
  algs.push_back(std::make_unique<Greedy>());
  algs.push_back(std::make_unique<UniRand>());
  algs.push_back(std::make_unique<RMix>());
  Rng rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> w(1 + rep % 6);
    for (auto& x : w) x = u(rng);
    Fixture a = pending(w);
    Fixture b = pending(w);
    // b has extra collected items in its active list and different keys
    std::vector<ObservedItem> active_b = b.items;
    for (auto& it : b.items) it.key = key_at(index_of(it.key) + 10);
    active_b = b.items;
    const std::string dead = "zz";
    active_b.insert(active_b.begin(), ObservedItem{key_at(99), 7.0, dead, false});
    const Observation oa{Flavor::dynamic_queue, 0, a.items, a.items};
    const Observation ob{Flavor::dynamic_queue, 3, active_b, b.items};
    for (const auto& alg : algs) {
      ASSERT_TRUE(alg->memoryless());
      EXPECT_EQ(*alg->distribution(oa), *alg->distribution(ob)) << alg->name();
    }
  }
}

TEST(Factory, NamesAndOverrides) {
  for (const auto& n : algorithm_names()) EXPECT_EQ(make_algorithm(n)->name(), n);
  EXPECT_THROW(make_algorithm("oracle"), UnknownName);
  AlgorithmParams p;
  p.beta = 0.5;
  auto alg = make_algorithm("decque-efh", p);
  EXPECT_EQ(dynamic_cast<DecQueEFH&>(*alg).params().beta, 0.5);
}

TEST(Clone, IndependentState) {
  FIFOQueEH a;
  Rng rng(0);
  auto f = pending({0.5, 1.0});
  a.pick(f.obs(Flavor::fifo_queue), rng);
  auto c = a.clone();
  c->reset();
  EXPECT_TRUE(a.previous_heavy().has_value());
  EXPECT_FALSE(dynamic_cast<FIFOQueEH&>(*c).previous_heavy().has_value());
}
