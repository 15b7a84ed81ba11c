#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "whacamole/engine.hpp"
#include "whacamole/error.hpp"
#include "whacamole/model.hpp"

namespace whacamole {

inline constexpr double kPhi = std::numbers::phi;

namespace detail {

inline std::vector<double> point_mass(const Observation& obs, const ObservedItem* chosen) {
  std::vector<double> d(obs.pending.size(), 0.0);
  if (chosen) d[static_cast<std::size_t>(chosen - obs.pending.data())] = 1.0;
  return d;
}

template <typename Derived>
class Cloneable : public OnlineAlgorithm {
 public:
  std::unique_ptr<OnlineAlgorithm> clone() const override {
    return std::make_unique<Derived>(static_cast<const Derived&>(*this));
  }
};

}  // namespace detail

/// Collects the heaviest pending item.
class Greedy final : public detail::Cloneable<Greedy> {
 public:
  std::string name() const override { return "greedy"; }
  std::optional<ItemKey> pick(const Observation& obs, Rng&) override {
    const auto* h = heaviest(obs.pending);
    return h ? std::optional{h->key} : std::nullopt;
  }
  std::optional<std::vector<double>> distribution(const Observation& obs) const override {
    return detail::point_mass(obs, heaviest(obs.pending));
  }
  bool memoryless() const override { return true; }
};

/// Collects a uniformly random pending item.
class UniRand final : public detail::Cloneable<UniRand> {
 public:
  std::string name() const override { return "unirand"; }
  std::optional<ItemKey> pick(const Observation& obs, Rng& rng) override {
    if (obs.pending.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> idx(0, obs.pending.size() - 1);
    return obs.pending[idx(rng)].key;
  }
  std::optional<std::vector<double>> distribution(const Observation& obs) const override {
    return std::vector<double>(obs.pending.size(), 1.0 / static_cast<double>(obs.pending.size()));
  }
  bool memoryless() const override { return true; }
  bool deterministic() const override { return false; }
};

/// Always collects the pending item at a fixed end of the queue.
class ConstantIndex final : public detail::Cloneable<ConstantIndex> {
 public:
  enum class End { first, last };
  explicit ConstantIndex(End end) : end_(end) {}
  std::string name() const override {
    return end_ == End::first ? "first-pending" : "last-pending";
  }
  std::optional<ItemKey> pick(const Observation& obs, Rng&) override {
    const auto* c = chosen(obs);
    return c ? std::optional{c->key} : std::nullopt;
  }
  std::optional<std::vector<double>> distribution(const Observation& obs) const override {
    return detail::point_mass(obs, chosen(obs));
  }
  bool memoryless() const override { return true; }

 private:
  const ObservedItem* chosen(const Observation& obs) const {
    if (obs.pending.empty()) return nullptr;
    return end_ == End::first ? &obs.pending.front() : &obs.pending.back();
  }
  End end_;
};

struct DecQueEFHParams {
  double beta = (std::sqrt(13.0) + 1.0) / 8.0;
  double xi = (std::sqrt(13.0) + 1.0) / 6.0;
};

/// Stage-based algorithm for decremental queues. A stage captures the
/// heaviest pending item h and runs up to three steps:
///   E: collect the earliest pending e with w_e >= beta * w_h
///   F: if h is gone start a new stage, else collect the earliest f with w_f >= xi * w_h
///   H: if h is gone start a new stage, else collect h
/// A restart re-enters E within the same step.
class DecQueEFH final : public detail::Cloneable<DecQueEFH> {
 public:
  enum class Phase { E, F, H };

  explicit DecQueEFH(DecQueEFHParams p = {}) : params_(p) {}
  std::string name() const override { return "decque-efh"; }
  void reset() override {
    phase_ = Phase::E;
    stage_heavy_.reset();
  }

  std::optional<ItemKey> pick(const Observation& obs, Rng&) override {
    if (obs.flavor != Flavor::decremental_queue) {
      throw WrongFlavor("decque-efh requires a decremental queue");
    }
    for (;;) {
      if (phase_ == Phase::E) {
        const auto* h = heaviest(obs.pending);
        if (!h) return std::nullopt;
        stage_heavy_ = *h;
        phase_ = Phase::F;
        return earliest_at_least(obs.pending, params_.beta * h->weight)->key;
      }
      const auto h = pending_heavy(obs);
      if (!h) {
        phase_ = Phase::E;
        continue;
      }
      if (phase_ == Phase::F) {
        phase_ = Phase::H;
        return earliest_at_least(obs.pending, params_.xi * h->weight)->key;
      }
      phase_ = Phase::E;
      return h->key;
    }
  }

  Phase phase() const { return phase_; }
  const DecQueEFHParams& params() const { return params_; }

 private:
  std::optional<ObservedItem> pending_heavy(const Observation& obs) const {
    if (stage_heavy_ && contains(obs.pending, stage_heavy_->key)) return stage_heavy_;
    return std::nullopt;
  }

  DecQueEFHParams params_;
  Phase phase_ = Phase::E;
  std::optional<ObservedItem> stage_heavy_;  // id view is not used after the step
};

struct FIFOQueEHParams {
  double alpha = 0.75;
  double beta = 2.0 / 3.0;
};

/// FIFO-queue algorithm tracking the previous heaviest item h'.
/// If h' is not pending or alpha * w_h >= w_h', collect the earliest e with
/// w_e >= beta * w_h and set h' = h; otherwise collect h' and set h' to the
/// heaviest item still pending.
class FIFOQueEH final : public detail::Cloneable<FIFOQueEH> {
 public:
  explicit FIFOQueEH(FIFOQueEHParams p = {}) : params_(p) {}
  std::string name() const override { return "fifoque-eh"; }
  void reset() override { prev_heavy_.reset(); }

  std::optional<ItemKey> pick(const Observation& obs, Rng&) override {
    if (obs.flavor != Flavor::fifo_queue && obs.flavor != Flavor::decremental_queue) {
      throw WrongFlavor("fifoque-eh requires a FIFO (or decremental) queue");
    }
    const auto* h = heaviest(obs.pending);
    if (!h) {
      prev_heavy_.reset();  // the padding item of weight 0 was collected
      return std::nullopt;
    }
    const ObservedItem* hp = nullptr;
    if (prev_heavy_) {
      for (const auto& it : obs.pending) {
        if (it.key == *prev_heavy_) hp = &it;
      }
    }
    if (!hp || params_.alpha * h->weight >= hp->weight) {
      prev_heavy_ = h->key;
      return earliest_at_least(obs.pending, params_.beta * h->weight)->key;
    }
    const ItemKey chosen = hp->key;
    const ObservedItem* next = nullptr;
    for (const auto& it : obs.pending) {
      if (it.key != chosen && (!next || heavier(it, *next))) next = &it;
    }
    prev_heavy_ = next ? std::optional{next->key} : std::nullopt;
    return chosen;
  }

  std::optional<ItemKey> previous_heavy() const { return prev_heavy_; }

 private:
  FIFOQueEHParams params_;
  std::optional<ItemKey> prev_heavy_;
};

struct MarkAndPickParams {
  /// Throw NoEligiblePick when the observed active queue is not
  /// nondecreasing in weight.
  bool require_nondecreasing = true;
};

/// Marks the heaviest unmarked item seen so far (active or not) and collects
/// the earliest pending item of weight at least w_h / phi. When no pending
/// item reaches that threshold (h was deleted or already collected earlier),
/// it collects the heaviest pending item instead.
class MarkAndPick final : public detail::Cloneable<MarkAndPick> {
 public:
  explicit MarkAndPick(MarkAndPickParams p = {}) : params_(p) {}
  std::string name() const override { return "mark-and-pick"; }
  void reset() override {
    unmarked_.clear();
    seen_.clear();
    marked_.clear();
    fallbacks_ = 0;
  }

  std::optional<ItemKey> pick(const Observation& obs, Rng&) override {
    if (params_.require_nondecreasing) {
      for (std::size_t i = 1; i < obs.active.size(); ++i) {
        if (obs.active[i - 1].weight > obs.active[i].weight) {
          throw NoEligiblePick("active queue is not nondecreasing in weight at step " +
                               std::to_string(obs.step));
        }
      }
    }
    for (const auto& it : obs.active) {
      if (seen_.insert(it.key).second) unmarked_.insert(Key{it.weight, std::string(it.id), it.key});
    }
    if (obs.pending.empty()) return std::nullopt;
    const auto top = std::prev(unmarked_.end());
    const double target = top->weight;
    marked_.push_back(top->key);
    unmarked_.erase(top);
    if (const auto* i = earliest_at_least(obs.pending, target / kPhi)) return i->key;
    ++fallbacks_;
    return heaviest(obs.pending)->key;
  }

  const std::vector<ItemKey>& marked() const { return marked_; }
  std::size_t fallbacks() const { return fallbacks_; }

 private:
  struct Key {
    double weight;
    std::string id;
    ItemKey key;
    bool operator<(const Key& o) const { return lighter(weight, id, o.weight, o.id); }
  };

  MarkAndPickParams params_;
  std::set<Key> unmarked_;
  std::set<ItemKey> seen_;
  std::vector<ItemKey> marked_;
  std::size_t fallbacks_ = 0;
};

/// Randomized threshold rule: draw x ~ U[0,1) and collect the earliest
/// pending item with w >= e^{-x} * w_h, h the heaviest pending item.
class RMix final : public detail::Cloneable<RMix> {
 public:
  std::string name() const override { return "rmix"; }
  std::optional<ItemKey> pick(const Observation& obs, Rng& rng) override {
    const auto* h = heaviest(obs.pending);
    if (!h) return std::nullopt;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double x = u(rng);
    return earliest_at_least(obs.pending, std::exp(-x) * h->weight)->key;
  }

  /// Item i wins for thresholds in (max(w before i, w_h/e), w_i].
  std::optional<std::vector<double>> distribution(const Observation& obs) const override {
    std::vector<double> d(obs.pending.size(), 0.0);
    const auto* h = heaviest(obs.pending);
    if (!h) return d;
    if (h->weight == 0.0) {
      d.front() = 1.0;
      return d;
    }
    const double wh = h->weight;
    double prefix_max = 0.0;
    for (std::size_t i = 0; i < obs.pending.size(); ++i) {
      const double wi = obs.pending[i].weight;
      const double lo = std::max(prefix_max, wh / std::numbers::e);
      if (wi > lo) {
        const double x_hi = std::min(1.0, std::log(wh / lo));
        const double x_lo = std::max(0.0, std::log(wh / wi));
        d[i] = std::max(0.0, x_hi - x_lo);
      }
      prefix_max = std::max(prefix_max, wi);
    }
    return d;
  }
  bool memoryless() const override { return true; }
  bool deterministic() const override { return false; }
};

struct AlgorithmParams {
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> xi;
  std::optional<bool> require_nondecreasing;
};

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {
      "greedy", "unirand", "decque-efh", "fifoque-eh", "mark-and-pick",
      "rmix", "first-pending", "last-pending"};
  return names;
}

inline std::unique_ptr<OnlineAlgorithm> make_algorithm(std::string_view name,
                                                       const AlgorithmParams& p = {}) {
  if (name == "greedy") return std::make_unique<Greedy>();
  if (name == "unirand") return std::make_unique<UniRand>();
  if (name == "rmix") return std::make_unique<RMix>();
  if (name == "first-pending") return std::make_unique<ConstantIndex>(ConstantIndex::End::first);
  if (name == "last-pending") return std::make_unique<ConstantIndex>(ConstantIndex::End::last);
  if (name == "decque-efh") {
    DecQueEFHParams q;
    if (p.beta) q.beta = *p.beta;
    if (p.xi) q.xi = *p.xi;
    return std::make_unique<DecQueEFH>(q);
  }
  if (name == "fifoque-eh") {
    FIFOQueEHParams q;
    if (p.alpha) q.alpha = *p.alpha;
    if (p.beta) q.beta = *p.beta;
    return std::make_unique<FIFOQueEH>(q);
  }
  if (name == "mark-and-pick") {
    MarkAndPickParams q;
    if (p.require_nondecreasing) q.require_nondecreasing = *p.require_nondecreasing;
    return std::make_unique<MarkAndPick>(q);
  }
  throw UnknownName("algorithm '" + std::string(name) + "'");
}

}  // namespace whacamole
