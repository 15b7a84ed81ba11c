#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "whacamole/analysis/lb_sequence.hpp"
#include "whacamole/engine.hpp"
#include "whacamole/error.hpp"
#include "whacamole/json_io.hpp"
#include "whacamole/model.hpp"
#include "whacamole/offline.hpp"
#include "whacamole/parallel.hpp"
#include "whacamole/timeline.hpp"

namespace whacamole {

struct GameEvent {
  std::size_t step = 0;
  std::vector<std::string> inserted;
  std::vector<std::string> deleted;
  std::optional<std::string> alg_pick;
  std::optional<std::string> adv_pick;
};

/// Outcome of one adversary game, or the mean over Monte Carlo trials (then
/// the instance and transcript belong to trial 0).
struct GameResult {
  std::string game;
  std::string algorithm;
  double alg_gain = 0.0;
  double adv_gain = 0.0;
  double ratio = 0.0;
  std::size_t trials = 1;
  double alg_stderr = 0.0;
  double adv_stderr = 0.0;
  double ratio_stderr = 0.0;
  /// Gains of the recorded game; equal to the means unless trials > 1.
  double example_alg_gain = 0.0;
  double example_adv_gain = 0.0;
  /// False when the algorithm is outside the class the construction targets.
  bool guaranteed = true;
  std::optional<std::size_t> branch;
  std::string note;
  std::optional<Instance> instance;
  Schedule alg_schedule;
  Schedule adv_schedule;
  std::vector<GameEvent> transcript;
};

inline double ratio_of(double adv, double alg) {
  if (alg > 0.0) return adv / alg;
  return adv > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
}

/// The board of one game: a live list shown to the algorithm, both players'
/// picks, and (when recording) the realized instance.
class GameTable {
 public:
  GameTable(Flavor flavor, OnlineAlgorithm& alg, std::uint64_t seed, bool record = true)
      : flavor_(flavor), alg_(alg), rng_(seed), builder_(flavor), record_(record) {
    alg_.reset();
  }

  void step() {
    if (record_) {
      builder_.step();
      rows_.push_back(GameEvent{steps_, {}, {}, {}, {}});
    }
    ++steps_;
    alg_picks_.push_back(std::nullopt);
    adv_picks_.push_back(std::nullopt);
  }

  ItemKey insert(std::string id, double weight, std::optional<ItemKey> after = std::nullopt) {
    if (record_) {
      builder_.insert(id, weight, after ? std::optional<std::string_view>(items_[index_of(*after)].id) : std::nullopt);
      rows_.back().inserted.push_back(id);
    }
    const ItemKey key = key_at(items_.size());
    live_.insert(key, weight, id, after);
    items_.push_back(Item{std::move(id), weight});
    adv_taken_.push_back(false);
    return key;
  }

  void remove(ItemKey k) {
    if (record_) {
      builder_.remove(items_[index_of(k)].id);
      rows_.back().deleted.push_back(items_[index_of(k)].id);
    }
    live_.remove(k);
  }

  std::optional<ItemKey> alg_move() {
    const Observation obs = live_.observe(flavor_, steps_ - 1);
    const auto p = alg_.pick(obs, rng_);
    if (p) {
      if (!contains(obs.pending, *p)) throw InvalidPick(alg_.name() + " picked a non-pending item");
      live_.collect(*p);
      alg_gain_ += weight(*p);
      if (record_) rows_.back().alg_pick = id(*p);
    }
    alg_picks_.back() = p;
    return p;
  }

  void adv_move(ItemKey k) {
    const auto& es = live_.entries();
    if (std::none_of(es.begin(), es.end(), [k](const auto& e) { return e.key == k; })) {
      throw InvalidPick("adversary picked an inactive item");
    }
    if (adv_taken_[index_of(k)]) throw InvalidPick("adversary picked '" + id(k) + "' twice");
    adv_taken_[index_of(k)] = true;
    adv_gain_ += weight(k);
    adv_picks_.back() = k;
    if (record_) rows_.back().adv_pick = id(k);
  }

  Observation observe() { return live_.observe(flavor_, steps_ - 1); }
  const LiveQueue& live() const { return live_; }
  bool adv_has(ItemKey k) const { return adv_taken_[index_of(k)]; }
  double weight(ItemKey k) const { return items_[index_of(k)].weight; }
  const std::string& id(ItemKey k) const { return items_[index_of(k)].id; }
  double alg_gain() const { return alg_gain_; }
  double adv_gain() const { return adv_gain_; }
  Rng& rng() { return rng_; }

  void remove_all() {
    std::vector<ItemKey> keys;
    for (const auto& e : live_.entries()) keys.push_back(e.key);
    for (ItemKey k : keys) remove(k);
  }

  /// Adversary's gain is what it picked; the recorded instance must replay
  /// both gains exactly.
  GameResult finish(std::string game) && {
    GameResult r = base(std::move(game));
    if (record_) {
      r.instance = std::move(builder_).build();
      if (whacamole::gain(*r.instance, r.alg_schedule) != alg_gain_ ||
          whacamole::gain(*r.instance, r.adv_schedule) != adv_gain_) {
        throw std::logic_error("game transcript does not replay");
      }
      r.transcript = std::move(rows_);
    }
    return r;
  }

  /// Adversary plays the clairvoyant optimum of the realized instance.
  GameResult finish_with_opt(std::string game) && {
    if (!record_) throw BadConfig("an optimal adversary needs a recorded game");
    GameResult r = base(std::move(game));
    r.instance = std::move(builder_).build();
    const OptimalSolution opt = optimal_gain_matching(*r.instance);
    r.adv_schedule = opt.schedule;
    r.adv_gain = r.example_adv_gain = opt.gain;
    r.ratio = ratio_of(r.adv_gain, r.alg_gain);
    for (std::size_t t = 0; t < rows_.size(); ++t) {
      const auto p = opt.schedule.picks[t];
      rows_[t].adv_pick = p ? std::optional<std::string>(r.instance->id(*p)) : std::nullopt;
    }
    r.transcript = std::move(rows_);
    return r;
  }

 private:
  GameResult base(std::string game) const {
    GameResult r;
    r.game = std::move(game);
    r.algorithm = alg_.name();
    r.alg_gain = alg_gain_;
    r.adv_gain = adv_gain_;
    r.ratio = ratio_of(adv_gain_, alg_gain_);
    r.example_alg_gain = alg_gain_;
    r.example_adv_gain = adv_gain_;
    r.alg_schedule.picks = alg_picks_;
    r.adv_schedule.picks = adv_picks_;
    return r;
  }

  Flavor flavor_;
  OnlineAlgorithm& alg_;
  Rng rng_;
  InstanceBuilder builder_;
  bool record_;
  std::size_t steps_ = 0;
  std::vector<Item> items_;
  std::vector<bool> adv_taken_;
  LiveQueue live_;
  std::vector<std::optional<ItemKey>> alg_picks_;
  std::vector<std::optional<ItemKey>> adv_picks_;
  std::vector<GameEvent> rows_;
  double alg_gain_ = 0.0;
  double adv_gain_ = 0.0;
};

/// Two unit items in a set. Whatever the algorithm takes first, the
/// adversary takes the other one, which then disappears.
inline GameResult lb_two_item_set_game(OnlineAlgorithm& alg, std::uint64_t seed = 0) {
  GameTable g(Flavor::dynamic_set, alg, seed);
  g.step();
  const ItemKey a = g.insert("a", 1.0);
  const ItemKey b = g.insert("b", 1.0, a);
  const auto p = g.alg_move();
  const ItemKey gone = (p && *p == a) ? b : a;
  const ItemKey kept = gone == a ? b : a;
  g.adv_move(gone);
  g.step();
  g.remove(gone);
  g.alg_move();
  g.adv_move(kept);
  GameResult r = std::move(g).finish("two_item_set");
  r.guaranteed = alg.deterministic();
  return r;
}

/// Decremental queue a <| b with w_a = 1, w_b = phi.
inline GameResult lb_phi_queue_game(OnlineAlgorithm& alg, std::uint64_t seed = 0) {
  GameTable g(Flavor::decremental_queue, alg, seed);
  g.step();
  const ItemKey a = g.insert("a", 1.0);
  const ItemKey b = g.insert("b", std::numbers::phi, a);
  const auto p = g.alg_move();
  if (p == b) {
    g.adv_move(a);
    g.step();
    g.remove(a);
    g.alg_move();
    g.adv_move(b);
  } else {
    g.adv_move(b);
    g.step();
    g.remove_all();
    g.alg_move();
  }
  GameResult r = std::move(g).finish("phi_queue");
  r.guaranteed = alg.deterministic();
  return r;
}

/// The queue z_2 <| z_4 <| ... <| z_2n <| z_2n-3 <| ... <| z_1 <| 1, all
/// present from the start. At step i the algorithm either takes z_2i-1 (the
/// front z_2i is then deleted and the game goes on), takes 1 (everything up
/// to z_2i-1 is deleted and the rest is left for the adversary), or anything
/// else (everything is deleted). The adversary plays the optimum of the
/// resulting instance.
inline GameResult lb_decremental_queue_game(OnlineAlgorithm& alg, const LBSequence& seq,
                                            std::uint64_t seed = 0) {
  if (!check_lb_inequalities(seq)) throw BadConfig("sequence violates its invariants");
  const std::size_t n = seq.n;
  GameTable g(Flavor::decremental_queue, alg, seed);
  std::vector<ItemKey> z(2 * n + 1);
  std::optional<ItemKey> last;
  auto put = [&](std::size_t i) {
    z[i] = g.insert(i == 0 ? "one" : "z" + std::to_string(i), seq.z[i], last);
    last = z[i];
  };
  g.step();
  for (std::size_t i = 2; i <= 2 * n; i += 2) put(i);
  for (std::size_t j = n - 1; j >= 1; --j) put(2 * j - 1);
  put(0);

  std::string ending;
  std::size_t stop = n;
  for (std::size_t i = 1; i <= n; ++i) {
    const auto p = g.alg_move();
    if (i < n && p == z[2 * i - 1]) {
      g.step();
      g.remove(z[2 * i]);
      continue;
    }
    stop = i;
    g.step();
    if (p == z[0]) {
      ending = "took 1";
      std::vector<ItemKey> doomed;
      for (const auto& e : g.live().entries()) {
        if (i == n ? e.key == z[2 * n] : true) doomed.push_back(e.key);
        if (i < n && e.key == z[2 * i - 1]) break;
      }
      for (ItemKey k : doomed) g.remove(k);
      g.alg_move();
      const std::size_t left = g.live().size();
      for (std::size_t t = 1; t < left; ++t) {
        g.step();
        g.alg_move();
      }
    } else {
      ending = p ? "deviated" : "passed";
      g.remove_all();
      g.alg_move();
    }
    break;
  }
  GameResult r = std::move(g).finish_with_opt("decremental_queue");
  r.branch = stop;
  r.note = ending + " at step " + std::to_string(stop);
  r.guaranteed = alg.deterministic();
  return r;
}

namespace detail {

inline std::vector<double> memoryless_weights(std::size_t n) {
  std::vector<double> w(n + 1);
  for (std::size_t i = 0; i <= n; ++i) w[i] = 1.0 + static_cast<double>(i) / static_cast<double>(n);
  return w;
}

inline GameResult memoryless_recorded(OnlineAlgorithm& alg, std::size_t n, std::size_t T,
                                      std::size_t k, std::uint64_t seed) {
  const auto w = memoryless_weights(n);
  GameTable g(Flavor::dynamic_queue, alg, seed);
  std::size_t serial = 0;
  auto name = [&](std::size_t i) { return "x" + std::to_string(i) + "." + std::to_string(serial++); };
  std::vector<ItemKey> cur(n + 1);
  g.step();
  std::optional<ItemKey> last;
  for (std::size_t i = 0; i <= n; ++i) last = cur[i] = g.insert(name(i), w[i], last);

  std::optional<ItemKey> p;
  for (std::size_t r = 0; r < T; ++r) {
    if (r > 0) {
      g.step();
      std::vector<ItemKey> old;
      if (k == 0) {
        for (const auto& e : g.live().entries()) old.push_back(e.key);
        last = old.back();
        for (std::size_t i = 0; i <= n; ++i) last = cur[i] = g.insert(name(i), w[i], last);
      } else {
        old.assign(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(k));
        last = cur[k - 1];
        for (std::size_t i = 0; i < k; ++i) last = cur[i] = g.insert(name(i), w[i], last);
        for (std::size_t j = k; j <= n; ++j) {
          if (p == cur[j]) cur[j] = g.insert(name(j), w[j], cur[j]);
        }
      }
      for (ItemKey o : old) g.remove(o);
    }
    p = g.alg_move();
    g.adv_move(cur[k == 0 ? n : k - 1]);
  }
  if (k > 0) {
    std::vector<ItemKey> rest;
    std::size_t pending = 0;
    for (const auto& e : g.live().entries()) {
      if (!g.adv_has(e.key)) rest.push_back(e.key);
      if (!e.collected) ++pending;
    }
    for (std::size_t t = 0; t < std::max(rest.size(), pending); ++t) {
      g.step();
      g.alg_move();
      if (t < rest.size()) g.adv_move(rest[t]);
    }
  }
  return std::move(g).finish("memoryless_queue");
}

/// Same game for long horizons: the algorithm's view holds only its pending
/// items and gains are tallied without recording an instance.
inline GameResult memoryless_tallied(OnlineAlgorithm& alg, std::size_t n, std::size_t T,
                                     std::size_t k, std::uint64_t seed) {
  const auto w = memoryless_weights(n);
  std::vector<std::string> names(n + 1);
  for (std::size_t i = 0; i <= n; ++i) names[i] = "x" + std::to_string(i);
  std::uint32_t serial = 0;
  std::vector<ObservedItem> view(n + 1);
  for (std::size_t i = 0; i <= n; ++i) view[i] = ObservedItem{static_cast<ItemKey>(serial++), w[i], names[i], true};

  alg.reset();
  Rng rng(seed);
  GameResult r;
  r.game = "memoryless_queue";
  r.algorithm = alg.name();
  double retired = 0.0;
  std::size_t retired_count = 0;
  std::optional<std::size_t> last_j;
  auto index_in_view = [&](const std::optional<ItemKey>& p) -> std::optional<std::size_t> {
    if (!p) return std::nullopt;
    for (std::size_t i = 0; i <= n; ++i) {
      if (view[i].pending && view[i].key == *p) return i;
    }
    throw InvalidPick(alg.name() + " picked a non-pending item");
  };
  for (std::size_t round = 0; round < T; ++round) {
    const Observation obs{Flavor::dynamic_queue, round, view, view};
    const auto j = index_in_view(alg.pick(obs, rng));
    if (j) r.alg_gain += w[*j];
    r.adv_gain += w[k == 0 ? n : k - 1];
    if (round + 1 == T) {
      last_j = j;
      break;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (k == 0 || i < k) {
        view[i].key = static_cast<ItemKey>(serial++);
      } else if (j == i) {
        retired += w[i];
        ++retired_count;
        view[i].key = static_cast<ItemKey>(serial++);
      }
    }
  }
  if (k > 0) {
    for (std::size_t i = 0; i <= n; ++i) {
      if (i != k - 1) r.adv_gain += w[i];
    }
    r.adv_gain += retired;
    std::vector<ObservedItem> pending;
    for (std::size_t i = 0; i <= n; ++i) {
      if (last_j != i) pending.push_back(view[i]);
    }
    const std::size_t trailing = std::max(retired_count + n, pending.size());
    for (std::size_t t = 0; t < trailing && !pending.empty(); ++t) {
      const Observation obs{Flavor::dynamic_queue, T + t, pending, pending};
      const auto p = alg.pick(obs, rng);
      if (!p) continue;
      auto it = std::find_if(pending.begin(), pending.end(), [&](const auto& o) { return o.key == *p; });
      if (it == pending.end()) throw InvalidPick(alg.name() + " picked a non-pending item");
      r.alg_gain += it->weight;
      pending.erase(it);
    }
  }
  r.ratio = ratio_of(r.adv_gain, r.alg_gain);
  return r;
}

}  // namespace detail

/// Pending set always {1 + i/n : 0 <= i <= n} in increasing order. The
/// algorithm's choice x_k on that set is probed once on a clone; then for T
/// rounds the adversary takes x_n (k = 0) or x_k-1 and refreshes the pending
/// set, finally collecting every item still around. Games with
/// T*(n+1) <= 20000 items are recorded unless `record` says otherwise.
inline GameResult lb_memoryless_queue_game(OnlineAlgorithm& alg, std::size_t n, std::size_t T,
                                           std::uint64_t seed = 0,
                                           std::optional<bool> record = std::nullopt) {
  if (n < 1 || T < 1) throw BadConfig("memoryless game needs n >= 1 and T >= 1");
  const auto w = detail::memoryless_weights(n);
  std::vector<std::string> names(n + 1);
  std::vector<ObservedItem> xs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    names[i] = "x" + std::to_string(i);
    xs[i] = ObservedItem{key_at(i), w[i], names[i], true};
  }
  auto probe = alg.clone();
  probe->reset();
  Rng rng(seed);
  const auto p = probe->pick(Observation{Flavor::dynamic_queue, 0, xs, xs}, rng);
  if (p && index_of(*p) > n) throw InvalidPick(alg.name() + " picked a non-pending item");
  const std::size_t k = p ? index_of(*p) : 0;

  const bool rec = record.value_or(T * (n + 1) <= 20000);
  GameResult r = rec ? detail::memoryless_recorded(alg, n, T, k, seed)
                     : detail::memoryless_tallied(alg, n, T, k, seed);
  r.branch = k;
  r.guaranteed = alg.memoryless() && alg.deterministic();
  r.note = "k = " + std::to_string(k) + (p ? "" : " (probe passed)");
  if (!r.guaranteed) r.note += "; algorithm is not memoryless and deterministic, ratio not guaranteed";
  return r;
}

/// Closed form of the k >= 1 branch: T(2 + (2k-1)/n) / (T(1 + k/n) + 2(n+1)).
inline double memoryless_closed_form(std::size_t n, std::size_t T, std::size_t k) {
  const double nd = static_cast<double>(n), Td = static_cast<double>(T), kd = static_cast<double>(k);
  return Td * (2.0 + (2.0 * kd - 1.0) / nd) / (Td * (1.0 + kd / nd) + 2.0 * (nd + 1.0));
}

namespace detail {

/// Sample means of per-trial (adv, alg) gains with the delta-method error of
/// their ratio.
struct PairStats {
  double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
  std::size_t count = 0;

  void add(double adv, double alg) {
    sa += adv;
    sb += alg;
    saa += adv * adv;
    sbb += alg * alg;
    sab += adv * alg;
    ++count;
  }
  void merge(const PairStats& o) {
    sa += o.sa;
    sb += o.sb;
    saa += o.saa;
    sbb += o.sbb;
    sab += o.sab;
    count += o.count;
  }
  void fill(GameResult& r) const {
    const double N = static_cast<double>(count);
    const double ma = sa / N, mb = sb / N;
    const double va = count > 1 ? (saa - N * ma * ma) / (N - 1) : 0.0;
    const double vb = count > 1 ? (sbb - N * mb * mb) / (N - 1) : 0.0;
    const double cab = count > 1 ? (sab - N * ma * mb) / (N - 1) : 0.0;
    r.trials = count;
    r.adv_gain = ma;
    r.alg_gain = mb;
    r.adv_stderr = std::sqrt(std::max(0.0, va) / N);
    r.alg_stderr = std::sqrt(std::max(0.0, vb) / N);
    r.ratio = ratio_of(ma, mb);
    if (mb > 0.0) {
      const double vr = (va - 2.0 * r.ratio * cab + r.ratio * r.ratio * vb) / (mb * mb);
      r.ratio_stderr = std::sqrt(std::max(0.0, vr) / N);
    }
  }
};

/// Runs `trial(alg, index, record)` for every trial, one algorithm clone per
/// worker; trial 0 is recorded and becomes the example game.
template <typename Trial>
GameResult monte_carlo(const OnlineAlgorithm& alg, std::size_t trials, std::size_t jobs, Trial trial) {
  if (trials < 1) throw BadConfig("need at least one trial");
  jobs = std::max<std::size_t>(1, std::min(jobs, trials));
  std::vector<std::unique_ptr<OnlineAlgorithm>> algs;
  for (std::size_t w = 0; w < jobs; ++w) algs.push_back(alg.clone());
  std::vector<PairStats> stats(jobs);
  GameResult example;
  parallel_for(trials, jobs, [&](std::size_t w, std::size_t i) {
    GameResult r = trial(*algs[w], i, i == 0);
    stats[w].add(r.adv_gain, r.alg_gain);
    if (i == 0) example = std::move(r);
  });
  PairStats all;
  for (const auto& s : stats) all.merge(s);
  GameResult out = std::move(example);
  all.fill(out);
  return out;
}

}  // namespace detail

/// n unit items; the adversary takes the lowest-id item whose declared pick
/// probability is at most 1/n. If the algorithm took that same item both
/// vanish, otherwise the algorithm's item survives one more step for the
/// adversary. Ratio of expectations over `trials` runs.
inline GameResult lb_adaptive_set_game(OnlineAlgorithm& alg, std::size_t n, std::size_t trials,
                                       std::uint64_t seed, std::size_t jobs = 1) {
  if (n < 2) throw BadConfig("adaptive set game needs n >= 2");
  auto trial = [n, seed](OnlineAlgorithm& a, std::size_t t, bool record) {
    GameTable g(Flavor::dynamic_set, a, derive_seed(seed, t), record);
    g.step();
    std::vector<ItemKey> keys;
    std::optional<ItemKey> last;
    for (std::size_t i = 0; i < n; ++i) {
      last = g.insert("a" + std::to_string(i), 1.0, last);
      keys.push_back(*last);
    }
    const Observation obs = g.observe();
    const auto q = a.distribution(obs);
    if (!q) throw NoDistribution(a.name() + " does not report pick probabilities");
    if (q->size() != n) throw BadDistribution("distribution size differs from the pending count");
    std::optional<ItemKey> target;
    for (std::size_t i = 0; i < n && !target; ++i) {
      if ((*q)[i] <= 1.0 / static_cast<double>(n) + 1e-12) target = obs.pending[i].key;
    }
    if (!target) throw BadDistribution("probabilities sum to more than one");
    const auto p = g.alg_move();
    g.adv_move(*target);
    g.step();
    if (!p || *p == *target) {
      g.remove_all();
    } else {
      for (ItemKey k : keys) {
        if (k != *p) g.remove(k);
      }
      g.adv_move(*p);
    }
    g.alg_move();
    return std::move(g).finish("adaptive_set");
  };
  GameResult r = detail::monte_carlo(alg, trials, jobs, trial);
  r.note = "mean over " + std::to_string(trials) + " trials; instance and transcript are trial 0";
  return r;
}

/// n unit items in a decremental set; each step the adversary collects a
/// uniformly random active item, which is deleted before the next step. The
/// adversary always gains n.
inline GameResult yao_uniform_process(OnlineAlgorithm& alg, std::size_t n, std::size_t trials,
                                      std::uint64_t seed, std::size_t jobs = 1) {
  if (n < 1) throw BadConfig("uniform process needs n >= 1");
  auto trial = [n, seed](OnlineAlgorithm& a, std::size_t t, bool record) {
    GameTable g(Flavor::decremental_set, a, derive_seed(seed, t), record);
    Rng coin(derive_seed(mix_seed(seed), t));
    g.step();
    std::optional<ItemKey> last;
    for (std::size_t i = 0; i < n; ++i) last = g.insert("u" + std::to_string(i), 1.0, last);
    std::optional<ItemKey> taken;
    for (std::size_t s = 0; s < n; ++s) {
      if (taken) {
        g.step();
        g.remove(*taken);
      }
      g.alg_move();
      const auto& es = g.live().entries();
      std::uniform_int_distribution<std::size_t> u(0, es.size() - 1);
      taken = es[u(coin)].key;
      g.adv_move(*taken);
    }
    return std::move(g).finish("yao_uniform");
  };
  GameResult r = detail::monte_carlo(alg, trials, jobs, trial);
  r.note = "mean over " + std::to_string(trials) + " trials; instance and transcript are trial 0";
  return r;
}

inline Json game_result_to_json(const GameResult& r) {
  auto num = [](double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); };
  Json j = {{"game", r.game},
            {"algorithm", r.algorithm},
            {"alg_gain", num(r.alg_gain)},
            {"adv_gain", num(r.adv_gain)},
            {"ratio", num(r.ratio)},
            {"trials", r.trials},
            {"alg_stderr", r.alg_stderr},
            {"adv_stderr", r.adv_stderr},
            {"ratio_stderr", r.ratio_stderr},
            {"guaranteed", r.guaranteed},
            {"note", r.note}};
  if (r.branch) j["branch"] = *r.branch;
  if (r.instance) {
    j["example_alg_gain"] = r.example_alg_gain;
    j["example_adv_gain"] = r.example_adv_gain;
    j["instance"] = instance_to_json(*r.instance);
    j["alg_schedule"] = schedule_to_json(*r.instance, r.alg_schedule);
    j["adv_schedule"] = schedule_to_json(*r.instance, r.adv_schedule);
    Json rows = Json::array();
    for (const GameEvent& e : r.transcript) {
      rows.push_back({{"step", e.step},
                      {"inserted", e.inserted},
                      {"deleted", e.deleted},
                      {"alg_pick", e.alg_pick ? Json(*e.alg_pick) : Json(nullptr)},
                      {"adv_pick", e.adv_pick ? Json(*e.adv_pick) : Json(nullptr)}});
    }
    j["transcript"] = rows;
  }
  return j;
}

struct GameParams {
  std::size_t n = 3;
  std::size_t T = 1000;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

inline const std::vector<std::string>& game_names() {
  static const std::vector<std::string> names = {"two_item_set", "phi_queue", "decremental_queue",
                                                 "memoryless_queue", "adaptive_set", "yao_uniform"};
  return names;
}

inline GameResult run_game(std::string_view name, OnlineAlgorithm& alg, const GameParams& p) {
  if (name == "two_item_set") return lb_two_item_set_game(alg, p.seed);
  if (name == "phi_queue") return lb_phi_queue_game(alg, p.seed);
  if (name == "decremental_queue") return lb_decremental_queue_game(alg, solve_lb_sequence(p.n), p.seed);
  if (name == "memoryless_queue") return lb_memoryless_queue_game(alg, p.n, p.T, p.seed);
  if (name == "adaptive_set") return lb_adaptive_set_game(alg, p.n, p.trials, p.seed, p.jobs);
  if (name == "yao_uniform") return yao_uniform_process(alg, p.n, p.trials, p.seed, p.jobs);
  throw UnknownName("game '" + std::string(name) + "'");
}

}  // namespace whacamole
