#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "whacamole/error.hpp"
#include "whacamole/model.hpp"

namespace whacamole {

struct FlavorReport {
  bool is_decremental = true;
  bool prefix_deletes_only = true;
  bool fifo_insertions = true;
  bool nondecreasing_weights = true;
};

/// Replays the event sequence and reports the structural properties that
/// distinguish the variants. Throws MalformedInstance when the declared
/// flavor's own restriction is broken.
inline FlavorReport validate_instance(const Instance& inst) {
  FlavorReport rep;
  std::vector<ItemKey> live;
  for (std::size_t s = 0; s < inst.num_steps(); ++s) {
    const StepOps& ops = inst.steps()[s];
    if (s > 0 && !ops.inserts.empty()) rep.is_decremental = false;
    for (const Insertion& ins : ops.inserts) {
      if (live.empty() ? ins.after.has_value() : ins.after != live.back()) {
        rep.fifo_insertions = false;
      }
      if (ins.after) {
        live.insert(std::find(live.begin(), live.end(), *ins.after) + 1, ins.item);
      } else {
        live.insert(live.begin(), ins.item);
      }
    }
    // The delete set must be exactly the first |deletes| list entries.
    const std::size_t nd = ops.deletes.size();
    for (ItemKey d : ops.deletes) {
      auto it = std::find(live.begin(), live.end(), d);
      if (static_cast<std::size_t>(it - live.begin()) >= nd) rep.prefix_deletes_only = false;
    }
    std::erase_if(live, [&](ItemKey k) {
      return std::find(ops.deletes.begin(), ops.deletes.end(), k) != ops.deletes.end();
    });
    for (std::size_t i = 1; i < live.size(); ++i) {
      if (inst.weight(live[i - 1]) > inst.weight(live[i])) rep.nondecreasing_weights = false;
    }
  }

  const Flavor f = inst.flavor();
  if (is_queue(f) && !rep.prefix_deletes_only) {
    throw MalformedInstance("queue flavor with a non-prefix delete");
  }
  if (is_decremental(f) && !rep.is_decremental) {
    throw MalformedInstance("decremental flavor with an insertion after step 1");
  }
  if (f == Flavor::fifo_queue && !rep.fifo_insertions) {
    throw MalformedInstance("fifo_queue with an insertion that is not at the tail");
  }
  return rep;
}

/// Total weight of a schedule. Throws InvalidPick on an inactive or repeated pick.
inline double gain(const Instance& inst, const Schedule& sched) {
  if (sched.picks.size() > inst.num_steps()) {
    throw InvalidPick("schedule has more picks than the instance has steps");
  }
  std::vector<bool> taken(inst.num_items(), false);
  double total = 0.0;
  for (std::size_t t = 0; t < sched.picks.size(); ++t) {
    const auto& p = sched.picks[t];
    if (!p) continue;
    if (index_of(*p) >= inst.num_items()) throw InvalidPick("unknown item at step " + std::to_string(t));
    if (!inst.active_at(*p, t)) {
      throw InvalidPick("'" + inst.id(*p) + "' is not active at step " + std::to_string(t));
    }
    if (taken[index_of(*p)]) {
      throw InvalidPick("'" + inst.id(*p) + "' collected twice");
    }
    taken[index_of(*p)] = true;
    total += inst.weight(*p);
  }
  return total;
}

namespace detail {

inline std::vector<std::size_t> pick_times(const Instance& inst, const Schedule& sched) {
  std::vector<std::size_t> when(inst.num_items(), Instance::never);
  for (std::size_t t = 0; t < sched.picks.size(); ++t) {
    if (sched.picks[t]) when[index_of(*sched.picks[t])] = t;
  }
  return when;
}

/// Earliest-deadline assignment of `chosen` items to the given increasing
/// slots; among items active at a slot the one deleted first wins, ties by
/// list order (for queues this is plain list order).
inline Schedule edf_assign(const Instance& inst, const std::vector<ItemKey>& chosen,
                           const std::vector<std::size_t>& slots) {
  Schedule out;
  out.picks.assign(inst.num_steps(), std::nullopt);
  std::vector<bool> done(chosen.size(), false);
  for (std::size_t t : slots) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      if (done[i] || !inst.active_at(chosen[i], t)) continue;
      if (!best || std::pair(inst.end_step(chosen[i]), inst.list_rank(chosen[i])) <
                       std::pair(inst.end_step(chosen[*best]), inst.list_rank(chosen[*best]))) {
        best = i;
      }
    }
    if (best) {
      done[*best] = true;
      out.picks[t] = chosen[*best];
    }
  }
  if (std::find(done.begin(), done.end(), false) != done.end()) {
    throw InvalidPick("item set cannot be scheduled on the given slots");
  }
  return out;
}

}  // namespace detail

/// True iff no swappable inversion exists: whenever a <| b are both collected
/// and b is collected first, a was not active at b's pick time.
inline bool check_eef(const Instance& inst, const Schedule& sched) {
  if (!is_queue(inst.flavor())) throw WrongFlavor("EEF is defined for queue flavors only");
  const auto when = detail::pick_times(inst, sched);
  for (std::size_t t = 0; t < sched.picks.size(); ++t) {
    if (!sched.picks[t]) continue;
    const ItemKey b = *sched.picks[t];
    for (ItemKey a : inst.active(t)) {
      if (a == b || when[index_of(a)] == Instance::never) continue;
      if (inst.list_rank(a) < inst.list_rank(b) && when[index_of(a)] > t) return false;
    }
  }
  return true;
}

/// Reorders picks among the collected items so that check_eef holds; the set
/// of collected items and the set of pick steps are unchanged.
inline Schedule canonicalize_eef(const Instance& inst, const Schedule& sched) {
  if (!is_queue(inst.flavor())) throw WrongFlavor("EEF is defined for queue flavors only");
  gain(inst, sched);
  std::vector<ItemKey> chosen;
  std::vector<std::size_t> slots;
  for (std::size_t t = 0; t < sched.picks.size(); ++t) {
    if (sched.picks[t]) {
      chosen.push_back(*sched.picks[t]);
      slots.push_back(t);
    }
  }
  Schedule out = detail::edf_assign(inst, chosen, slots);
  out.picks.resize(sched.picks.size());
  return out;
}

}  // namespace whacamole
