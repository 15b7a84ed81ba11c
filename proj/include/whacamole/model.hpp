#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "whacamole/error.hpp"

namespace whacamole {

enum class Flavor {
  dynamic_set,
  decremental_set,
  dynamic_queue,
  fifo_queue,
  decremental_queue,
};

inline constexpr std::string_view to_string(Flavor f) {
  switch (f) {
    case Flavor::dynamic_set: return "dynamic_set";
    case Flavor::decremental_set: return "decremental_set";
    case Flavor::dynamic_queue: return "dynamic_queue";
    case Flavor::fifo_queue: return "fifo_queue";
    case Flavor::decremental_queue: return "decremental_queue";
  }
  return "?";
}

inline Flavor parse_flavor(std::string_view s) {
  for (auto f : {Flavor::dynamic_set, Flavor::decremental_set, Flavor::dynamic_queue,
                 Flavor::fifo_queue, Flavor::decremental_queue}) {
    if (to_string(f) == s) return f;
  }
  throw UnknownName("flavor '" + std::string(s) + "'");
}

inline constexpr bool is_queue(Flavor f) {
  return f == Flavor::dynamic_queue || f == Flavor::fifo_queue ||
         f == Flavor::decremental_queue;
}

inline constexpr bool is_decremental(Flavor f) {
  return f == Flavor::decremental_set || f == Flavor::decremental_queue;
}

/// Dense handle of an item inside one Instance (or one live game).
enum class ItemKey : std::uint32_t {};

inline constexpr std::size_t index_of(ItemKey k) { return static_cast<std::size_t>(k); }
inline constexpr ItemKey key_at(std::size_t i) { return static_cast<ItemKey>(i); }

struct Item {
  std::string id;
  double weight = 0.0;
};

/// The strict total order used for "heaviest": weight first, then id.
inline bool lighter(double wa, std::string_view ida, double wb, std::string_view idb) {
  if (wa != wb) return wa < wb;
  return ida < idb;
}

struct Insertion {
  ItemKey item;
  std::optional<ItemKey> after;  // nullopt = front of the list
};

struct StepOps {
  std::vector<Insertion> inserts;
  std::vector<ItemKey> deletes;
};

/// One pick per step; nullopt is PASS.
struct Schedule {
  std::vector<std::optional<ItemKey>> picks;
};

class InstanceBuilder;

/// An immutable event sequence plus the replayed timeline facts every
/// consumer needs: per-item activity interval, a global list order that is
/// consistent with the queue order of every pair of co-active items, and the
/// active list (in queue order) at every step.
class Instance {
 public:
  static constexpr std::size_t never = std::numeric_limits<std::size_t>::max();

  Instance() = default;

  Flavor flavor() const { return flavor_; }
  std::size_t num_steps() const { return steps_.size(); }
  std::size_t num_items() const { return items_.size(); }
  const std::vector<StepOps>& steps() const { return steps_; }
  const std::vector<Item>& items() const { return items_; }
  const Item& item(ItemKey k) const { return items_[index_of(k)]; }
  double weight(ItemKey k) const { return items_[index_of(k)].weight; }
  const std::string& id(ItemKey k) const { return items_[index_of(k)].id; }

  std::optional<ItemKey> find(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
  }

  /// Active steps of an item are [first_step, end_step); may be empty.
  std::size_t first_step(ItemKey k) const { return first_[index_of(k)]; }
  std::size_t end_step(ItemKey k) const { return end_[index_of(k)]; }
  bool active_at(ItemKey k, std::size_t step) const {
    return first_[index_of(k)] <= step && step < end_[index_of(k)];
  }
  /// Position in the global list order; a <| b for co-active a, b iff rank(a) < rank(b).
  std::size_t list_rank(ItemKey k) const { return rank_[index_of(k)]; }
  std::span<const ItemKey> active(std::size_t step) const { return active_[step]; }

  bool heavier(ItemKey a, ItemKey b) const {
    return lighter(weight(b), id(b), weight(a), id(a));
  }

 private:
  friend class InstanceBuilder;

  Flavor flavor_ = Flavor::dynamic_set;
  std::vector<Item> items_;
  std::vector<StepOps> steps_;
  std::unordered_map<std::string, ItemKey> by_id_;
  std::vector<std::size_t> first_;
  std::vector<std::size_t> end_;
  std::vector<std::size_t> rank_;
  std::vector<std::vector<ItemKey>> active_;
};

/// Builds an Instance step by step by id, checking referential integrity:
/// ids are unique, anchors and deleted items must be active.
class InstanceBuilder {
 public:
  explicit InstanceBuilder(Flavor flavor) { inst_.flavor_ = flavor; }

  /// Opens a new step; subsequent insert/remove calls go to its pre-phase.
  InstanceBuilder& step() {
    close_step();
    inst_.steps_.emplace_back();
    open_ = true;
    return *this;
  }

  InstanceBuilder& insert(std::string id, double weight,
                          std::optional<std::string_view> after = std::nullopt) {
    require_open();
    if (!(weight >= 0.0)) throw MalformedInstance("negative or NaN weight for '" + id + "'");
    if (inst_.by_id_.contains(id)) throw MalformedInstance("duplicate id '" + id + "'");
    std::optional<ItemKey> anchor;
    if (after) {
      auto a = inst_.find(*after);
      if (!a || !is_live(*a)) {
        throw MalformedInstance("anchor '" + std::string(*after) + "' is not active");
      }
      anchor = *a;
    }
    const ItemKey key = key_at(inst_.items_.size());
    inst_.by_id_.emplace(id, key);
    inst_.items_.push_back(Item{std::move(id), weight});
    inst_.first_.push_back(inst_.steps_.size() - 1);
    inst_.end_.push_back(Instance::never);
    live_flag_.push_back(true);
    if (anchor) {
      live_.insert(std::find(live_.begin(), live_.end(), *anchor) + 1, key);
      ghost_.insert(std::find(ghost_.begin(), ghost_.end(), *anchor) + 1, key);
    } else {
      live_.insert(live_.begin(), key);
      ghost_.insert(ghost_.begin(), key);
    }
    inst_.steps_.back().inserts.push_back(Insertion{key, anchor});
    return *this;
  }

  InstanceBuilder& remove(std::string_view id) {
    require_open();
    auto k = inst_.find(id);
    if (!k) throw MalformedInstance("delete of unknown id '" + std::string(id) + "'");
    if (!is_live(*k)) throw MalformedInstance("delete of inactive id '" + std::string(id) + "'");
    live_flag_[index_of(*k)] = false;
    live_.erase(std::find(live_.begin(), live_.end(), *k));
    inst_.end_[index_of(*k)] = inst_.steps_.size() - 1;
    inst_.steps_.back().deletes.push_back(*k);
    return *this;
  }

  /// Current live list (after the ops issued so far), in queue order.
  std::span<const ItemKey> live() const { return live_; }
  const Instance& peek() const { return inst_; }

  Instance build() && {
    close_step();
    const std::size_t horizon = inst_.steps_.size();
    for (auto& e : inst_.end_) e = std::min(e, horizon);
    inst_.rank_.assign(inst_.items_.size(), 0);
    for (std::size_t r = 0; r < ghost_.size(); ++r) inst_.rank_[index_of(ghost_[r])] = r;
    return std::move(inst_);
  }

 private:
  bool is_live(ItemKey k) const { return live_flag_[index_of(k)]; }

  void require_open() const {
    if (!open_) throw MalformedInstance("event issued before the first step");
  }

  void close_step() {
    if (open_) inst_.active_.push_back(live_);
    open_ = false;
  }

  Instance inst_;
  std::vector<ItemKey> live_;
  std::vector<ItemKey> ghost_;
  std::vector<bool> live_flag_;
  bool open_ = false;
};

}  // namespace whacamole
