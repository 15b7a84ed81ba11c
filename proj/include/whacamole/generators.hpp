#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "whacamole/engine.hpp"
#include "whacamole/error.hpp"
#include "whacamole/model.hpp"

namespace whacamole {

struct WeightDist {
  enum class Kind { uniform, grid };
  Kind kind = Kind::uniform;
  double lo = 0.1;
  double hi = 1.0;
  std::vector<double> values;  // grid

  static WeightDist uniform(double lo, double hi) { return {Kind::uniform, lo, hi, {}}; }
  static WeightDist grid(std::vector<double> v) { return {Kind::grid, 0.0, 0.0, std::move(v)}; }

  double draw(Rng& rng) const {
    if (kind == Kind::grid) {
      std::uniform_int_distribution<std::size_t> i(0, values.size() - 1);
      return values[i(rng)];
    }
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
};

inline std::string item_name(std::size_t i) { return "i" + std::to_string(i); }

/// Random flavor-respecting instance. Items are spread over the steps (all at
/// step 1 for decremental flavors); sets delete random items, queues delete
/// random prefixes. With `nondecreasing`, queue positions follow weight order.
inline Instance random_instance(Flavor flavor, std::size_t n, std::size_t steps,
                                const WeightDist& dist, std::uint64_t seed,
                                bool nondecreasing = false) {
  if (n == 0 || steps == 0) throw BadConfig("random_instance needs n, steps >= 1");
  if (dist.kind == WeightDist::Kind::grid && dist.values.empty()) throw BadConfig("empty weight grid");
  if (dist.kind == WeightDist::Kind::uniform && !(0.0 <= dist.lo && dist.lo <= dist.hi)) {
    throw BadConfig("uniform weights need 0 <= lo <= hi");
  }
  Rng rng(seed);
  std::vector<std::size_t> arrival(n, 0);
  if (!is_decremental(flavor)) {
    std::uniform_int_distribution<std::size_t> s(0, steps - 1);
    for (auto& a : arrival) a = s(rng);
    std::sort(arrival.begin(), arrival.end());
    arrival.front() = 0;
  }
  std::vector<double> w(n);
  for (auto& x : w) x = dist.draw(rng);
  if (nondecreasing && is_decremental(flavor)) std::sort(w.begin(), w.end());

  InstanceBuilder b(flavor);
  std::bernoulli_distribution coin(0.3);
  std::size_t next = 0;
  for (std::size_t t = 0; t < steps; ++t) {
    b.step();
    for (; next < n && arrival[next] == t; ++next) {
      const auto live = b.live();
      const Instance& cur = b.peek();
      std::optional<std::string_view> after;
      if (flavor == Flavor::fifo_queue || is_decremental(flavor)) {
        if (!live.empty()) after = cur.id(live.back());
      } else if (nondecreasing && is_queue(flavor)) {
        // after the last live item not heavier than the new one
        for (ItemKey k : live) {
          if (cur.weight(k) <= w[next]) after = cur.id(k);
        }
      } else {
        std::uniform_int_distribution<std::size_t> pos(0, live.size());
        const std::size_t p = pos(rng);
        if (p > 0) after = cur.id(live[p - 1]);
      }
      std::string anchor = after ? std::string(*after) : std::string();
      b.insert(item_name(next), w[next], after ? std::optional<std::string_view>{anchor} : std::nullopt);
    }
    if (t == 0 && is_decremental(flavor)) continue;
    std::vector<std::string> doomed;
    const auto live = b.live();
    if (is_queue(flavor)) {
      std::uniform_int_distribution<std::size_t> k(0, std::min<std::size_t>(live.size(), 2));
      const std::size_t cnt = coin(rng) ? k(rng) : 0;
      for (std::size_t i = 0; i < cnt; ++i) doomed.push_back(b.peek().id(live[i]));
    } else {
      for (ItemKey key : live) {
        if (coin(rng)) doomed.push_back(b.peek().id(key));
      }
    }
    for (const auto& id : doomed) b.remove(id);
  }
  return std::move(b).build();
}

/// All dynamic-set instances whose items are distinct-or-repeated
/// (interval, weight) pairs over `steps` steps, 1..max_items items.
inline void for_each_dynamic_set(std::size_t max_items, std::size_t steps,
                                 const std::vector<double>& weights,
                                 const std::function<void(const Instance&)>& fn) {
  struct Kind {
    std::size_t start, end;
    double w;
  };
  std::vector<Kind> kinds;
  for (std::size_t s = 0; s < steps; ++s) {
    for (std::size_t e = s + 1; e <= steps; ++e) {
      for (double w : weights) kinds.push_back({s, e, w});
    }
  }
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!pick.empty()) {
      InstanceBuilder b(Flavor::dynamic_set);
      for (std::size_t t = 0; t < steps; ++t) {
        b.step();
        for (std::size_t i = 0; i < pick.size(); ++i) {
          if (kinds[pick[i]].start == t) b.insert(item_name(i), kinds[pick[i]].w);
        }
        for (std::size_t i = 0; i < pick.size(); ++i) {
          if (kinds[pick[i]].end == t) b.remove(item_name(i));
        }
      }
      fn(std::move(b).build());
    }
    if (pick.size() == max_items) return;
    for (std::size_t k = from; k < kinds.size(); ++k) {
      pick.push_back(k);
      rec(k);
      pick.pop_back();
    }
  };
  rec(0);
}

namespace detail {

/// Nondecreasing sequences c[0..len) with lo[t] <= c[t] <= hi[t] (hi nondecreasing).
inline void for_each_cumulative(std::size_t len, const std::vector<std::size_t>& hi,
                                const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> c(len, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t t, std::size_t lo) {
    if (t == len) {
      fn(c);
      return;
    }
    for (std::size_t v = lo; v <= hi[t]; ++v) {
      c[t] = v;
      rec(t + 1, v);
    }
  };
  rec(0, 0);
}

inline void for_each_weight_word(std::size_t n, const std::vector<double>& grid,
                                 const std::function<void(const std::vector<double>&)>& fn) {
  std::vector<double> w(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      fn(w);
      return;
    }
    for (double g : grid) {
      w[i] = g;
      rec(i + 1);
    }
  };
  rec(0);
}

}  // namespace detail

/// All decremental queues with 1..max_items items (weights from `grid`, in
/// every order) over exactly `steps` steps; prefix deletions are described
/// by a nondecreasing cumulative count per step.
inline void for_each_decremental_queue(std::size_t max_items, std::size_t steps,
                                       const std::vector<double>& grid,
                                       const std::function<void(const Instance&)>& fn) {
  for (std::size_t n = 1; n <= max_items; ++n) {
    const std::vector<std::size_t> hi(steps - 1, n);
    detail::for_each_weight_word(n, grid, [&](const std::vector<double>& w) {
      detail::for_each_cumulative(steps - 1, hi, [&](const std::vector<std::size_t>& cum) {
        InstanceBuilder b(Flavor::decremental_queue);
        b.step();
        for (std::size_t i = 0; i < n; ++i) {
          const std::string prev = i ? item_name(i - 1) : std::string();
          b.insert(item_name(i), w[i], i ? std::optional<std::string_view>{prev} : std::nullopt);
        }
        std::size_t gone = 0;
        for (std::size_t t = 1; t < steps; ++t) {
          b.step();
          for (; gone < cum[t - 1]; ++gone) b.remove(item_name(gone));
        }
        fn(std::move(b).build());
      });
    });
  }
}

/// All FIFO queues with 1..max_items items over exactly `steps` steps: every
/// nondecreasing arrival pattern, weight word and prefix-deletion pattern.
inline void for_each_fifo_queue(std::size_t max_items, std::size_t steps,
                                const std::vector<double>& grid,
                                const std::function<void(const Instance&)>& fn) {
  for (std::size_t n = 1; n <= max_items; ++n) {
    const std::vector<std::size_t> step_cap(n, steps - 1);
    detail::for_each_cumulative(n, step_cap, [&](const std::vector<std::size_t>& arrival) {
      if (arrival.front() != 0) return;
      std::vector<std::size_t> arrived(steps, 0);
      for (std::size_t t = 0; t < steps; ++t) {
        arrived[t] = static_cast<std::size_t>(
            std::count_if(arrival.begin(), arrival.end(), [t](std::size_t a) { return a <= t; }));
      }
      // no deletions in step 1: an item deleted in its own pre-phase is never active
      std::vector<std::size_t> hi(arrived.begin() + 1, arrived.end());
      detail::for_each_weight_word(n, grid, [&](const std::vector<double>& w) {
        detail::for_each_cumulative(steps - 1, hi, [&](const std::vector<std::size_t>& cum) {
          InstanceBuilder b(Flavor::fifo_queue);
          std::size_t next = 0, gone = 0;
          for (std::size_t t = 0; t < steps; ++t) {
            b.step();
            for (; next < n && arrival[next] == t; ++next) {
              const std::string prev = next ? item_name(next - 1) : std::string();
              const bool tail = next > 0 && gone < next;
              b.insert(item_name(next), w[next], tail ? std::optional<std::string_view>{prev} : std::nullopt);
            }
            if (t > 0) {
              for (; gone < cum[t - 1]; ++gone) b.remove(item_name(gone));
            }
          }
          fn(std::move(b).build());
        });
      });
    });
  }
}

inline const std::vector<std::string>& named_instance_names() {
  static const std::vector<std::string> names = {"fifo_tight_1", "fifo_tight_2", "set_two_item", "queue_phi"};
  return names;
}

/// The small hand-made instances: the two FIFO tightness instances (at
/// beta = 2/3), two unit items where one vanishes after step 1, and the
/// (1, phi) decremental queue.
inline Instance named_instance(std::string_view name, double epsilon = 1e-3) {
  constexpr double beta = 2.0 / 3.0;
  if (name == "fifo_tight_1") {
    InstanceBuilder b(Flavor::fifo_queue);
    b.step().insert("a", beta - epsilon).insert("b", beta - epsilon, "a").insert("c", beta, "b").insert("d", 1.0, "c");
    b.step().remove("a");
    b.step().remove("b");
    b.step();
    return std::move(b).build();
  }
  if (name == "fifo_tight_2") {
    InstanceBuilder b(Flavor::fifo_queue);
    b.step().insert("a", beta).insert("b", 1.0 - epsilon, "a").insert("c", 1.0 - epsilon, "b").insert("d", 1.0, "c");
    b.step();
    b.step().remove("a").remove("b").remove("c");
    return std::move(b).build();
  }
  if (name == "set_two_item") {
    InstanceBuilder b(Flavor::dynamic_set);
    b.step().insert("a", 1.0).insert("b", 1.0, "a");
    b.step().remove("b");
    return std::move(b).build();
  }
  if (name == "queue_phi") {
    InstanceBuilder b(Flavor::decremental_queue);
    b.step().insert("a", 1.0).insert("b", std::numbers::phi, "a");
    b.step();
    return std::move(b).build();
  }
  throw UnknownName("named instance '" + std::string(name) + "'");
}

}  // namespace whacamole
