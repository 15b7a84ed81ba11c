#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "whacamole/error.hpp"
#include "whacamole/model.hpp"

namespace whacamole {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent per-trial seeds.
inline constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix_seed(seed ^ mix_seed(index));
}

struct ObservedItem {
  ItemKey key;
  double weight = 0.0;
  std::string_view id;
  bool pending = false;
};

/// What an online algorithm sees at one decision point: the active list in
/// queue order (for sets the order is insertion order and carries no meaning)
/// and the subset still pending for the algorithm, also in queue order.
struct Observation {
  Flavor flavor = Flavor::dynamic_set;
  std::size_t step = 0;
  std::span<const ObservedItem> active;
  std::span<const ObservedItem> pending;
};

inline bool heavier(const ObservedItem& a, const ObservedItem& b) {
  return lighter(b.weight, b.id, a.weight, a.id);
}

inline const ObservedItem* heaviest(std::span<const ObservedItem> items) {
  const ObservedItem* best = nullptr;
  for (const auto& it : items) {
    if (!best || heavier(it, *best)) best = &it;
  }
  return best;
}

inline const ObservedItem* earliest_at_least(std::span<const ObservedItem> items, double threshold) {
  for (const auto& it : items) {
    if (it.weight >= threshold) return &it;
  }
  return nullptr;
}

inline bool contains(std::span<const ObservedItem> items, ItemKey k) {
  return std::any_of(items.begin(), items.end(), [k](const auto& it) { return it.key == k; });
}

class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;

  virtual std::string name() const = 0;
  /// Forget all per-game state.
  virtual void reset() {}
  virtual std::optional<ItemKey> pick(const Observation& obs, Rng& rng) = 0;

  /// Probability of picking each pending item (same order as obs.pending),
  /// without touching per-game state. Algorithms that cannot state it return
  /// nullopt; probabilities may sum to less than one (the rest is PASS).
  virtual std::optional<std::vector<double>> distribution(const Observation&) const {
    return std::nullopt;
  }

  /// The pick depends only on the pending weights (in queue order).
  virtual bool memoryless() const { return false; }
  virtual bool deterministic() const { return true; }
  virtual std::unique_ptr<OnlineAlgorithm> clone() const = 0;
};

/// The mutable active list of one game or simulation.
class LiveQueue {
 public:
  struct Entry {
    ItemKey key;
    double weight;
    std::string id;
    bool collected;
  };

  void insert(ItemKey key, double weight, std::string id, std::optional<ItemKey> after) {
    auto pos = entries_.begin();
    if (after) pos = std::next(locate(*after));
    entries_.insert(pos, Entry{key, weight, std::move(id), false});
  }

  void remove(ItemKey key) { entries_.erase(locate(key)); }

  /// Marks a pending item as collected by the algorithm.
  void collect(ItemKey key) {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [key](const Entry& e) { return e.key == key; });
    if (it == entries_.end()) throw InvalidPick("picked item is not active");
    if (it->collected) throw InvalidPick("picked item '" + it->id + "' already collected");
    it->collected = true;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool has_pending() const {
    return std::any_of(entries_.begin(), entries_.end(), [](const Entry& e) { return !e.collected; });
  }

  /// The returned view is valid until the next mutation.
  Observation observe(Flavor flavor, std::size_t step) {
    active_.clear();
    pending_.clear();
    for (const auto& e : entries_) {
      ObservedItem o{e.key, e.weight, e.id, !e.collected};
      active_.push_back(o);
      if (o.pending) pending_.push_back(o);
    }
    return Observation{flavor, step, active_, pending_};
  }

 private:
  std::vector<Entry>::iterator locate(ItemKey key) {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [key](const Entry& e) { return e.key == key; });
    if (it == entries_.end()) throw MalformedInstance("item is not active");
    return it;
  }

  std::vector<Entry> entries_;
  std::vector<ObservedItem> active_;
  std::vector<ObservedItem> pending_;
};

struct SimulationResult {
  Schedule schedule;
  double gain = 0.0;
};

/// Plays `alg` online on `inst`: each step reveals the pre-phase events, then
/// asks for one pick. Deterministic in (inst, alg, seed).
inline SimulationResult simulate(const Instance& inst, OnlineAlgorithm& alg, std::uint64_t seed) {
  alg.reset();
  Rng rng(seed);
  LiveQueue q;
  SimulationResult res;
  res.schedule.picks.reserve(inst.num_steps());
  for (std::size_t t = 0; t < inst.num_steps(); ++t) {
    const StepOps& ops = inst.steps()[t];
    for (const Insertion& ins : ops.inserts) {
      q.insert(ins.item, inst.weight(ins.item), inst.id(ins.item), ins.after);
    }
    for (ItemKey d : ops.deletes) q.remove(d);
    const Observation obs = q.observe(inst.flavor(), t);
    const auto p = alg.pick(obs, rng);
    if (p) {
      if (!contains(obs.pending, *p)) {
        throw InvalidPick(alg.name() + " picked a non-pending item at step " + std::to_string(t));
      }
      q.collect(*p);
      res.gain += inst.weight(*p);
    }
    res.schedule.picks.push_back(p);
  }
  return res;
}

}  // namespace whacamole
