#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "whacamole/error.hpp"
#include "whacamole/model.hpp"
#include "whacamole/timeline.hpp"

namespace whacamole {

/// Minimum-cost assignment of every row to a distinct column (rows <= cols),
/// Hungarian method with potentials, O(rows^2 * cols). Returns the column of
/// each row.
template <typename T>
std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<T>>& cost) {
  const std::size_t n = cost.size();
  if (n == 0) return {};
  const std::size_t m = cost.front().size();
  if (m < n) throw TooLarge("assignment needs rows <= columns");
  const T inf = std::numeric_limits<T>::max();
  // 1-based potentials; p[j] is the row matched to column j (0 = none).
  std::vector<T> u(n + 1, T{}), v(m + 1, T{});
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<T> minv(m + 1, inf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      T delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const T cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> col_of(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) col_of[p[j] - 1] = j - 1;
  }
  return col_of;
}

struct OptimalSolution {
  double gain = 0.0;
  Schedule schedule;
};

/// Clairvoyant optimum as a maximum-weight matching between items and the
/// steps at which they are active. The returned schedule collects the chosen
/// items earliest-deadline-first on the earliest possible steps, so it is EEF
/// for queue flavors.
inline OptimalSolution optimal_gain_matching(const Instance& inst) {
  std::vector<ItemKey> cand;
  for (std::size_t i = 0; i < inst.num_items(); ++i) {
    const ItemKey k = key_at(i);
    if (inst.first_step(k) < inst.end_step(k) && inst.weight(k) > 0.0) cand.push_back(k);
  }
  const std::size_t steps = inst.num_steps();
  std::vector<ItemKey> chosen;
  if (!cand.empty() && steps > 0) {
    const bool items_as_rows = cand.size() <= steps;
    const std::size_t rows = items_as_rows ? cand.size() : steps;
    const std::size_t cols = items_as_rows ? steps : cand.size();
    std::vector<std::vector<double>> cost(rows, std::vector<double>(cols, 0.0));
    for (std::size_t i = 0; i < cand.size(); ++i) {
      for (std::size_t t = inst.first_step(cand[i]); t < inst.end_step(cand[i]); ++t) {
        (items_as_rows ? cost[i][t] : cost[t][i]) = -inst.weight(cand[i]);
      }
    }
    const auto col_of = min_cost_assignment(cost);
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t item = items_as_rows ? r : col_of[r];
      const std::size_t step = items_as_rows ? col_of[r] : r;
      if (inst.active_at(cand[item], step)) chosen.push_back(cand[item]);
    }
    std::sort(chosen.begin(), chosen.end());
  }
  std::vector<std::size_t> slots(steps);
  for (std::size_t t = 0; t < steps; ++t) slots[t] = t;
  OptimalSolution sol;
  sol.schedule = detail::edf_assign(inst, chosen, slots);
  sol.gain = gain(inst, sol.schedule);
  return sol;
}

/// Exhaustive optimum over all schedules (dynamic programming over
/// (step, collected-set)); only for tiny instances.
inline double optimal_gain_bruteforce(const Instance& inst) {
  constexpr std::size_t kMaxItems = 8;
  constexpr std::size_t kMaxSteps = 8;
  if (inst.num_items() > kMaxItems || inst.num_steps() > kMaxSteps) {
    throw TooLarge("brute force is limited to 8 items and 8 steps");
  }
  const std::size_t n = inst.num_items();
  const std::size_t masks = std::size_t{1} << n;
  std::vector<double> next(masks, 0.0), cur(masks, 0.0);
  for (std::size_t t = inst.num_steps(); t-- > 0;) {
    for (std::size_t mask = 0; mask < masks; ++mask) {
      double best = next[mask];
      for (std::size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1U) continue;
        if (!inst.active_at(key_at(i), t)) continue;
        best = std::max(best, inst.weight(key_at(i)) + next[mask | (std::size_t{1} << i)]);
      }
      cur[mask] = best;
    }
    std::swap(cur, next);
  }
  return next[0];
}

/// Heaviest-first greedy matching, each item on its earliest free active
/// step. Not optimal; a baseline for solver sanity checks.
inline double greedy_matching_gain(const Instance& inst) {
  std::vector<ItemKey> order;
  for (std::size_t i = 0; i < inst.num_items(); ++i) order.push_back(key_at(i));
  std::sort(order.begin(), order.end(), [&](ItemKey a, ItemKey b) { return inst.heavier(a, b); });
  std::vector<bool> used(inst.num_steps(), false);
  double total = 0.0;
  for (ItemKey k : order) {
    for (std::size_t t = inst.first_step(k); t < inst.end_step(k); ++t) {
      if (!used[t]) {
        used[t] = true;
        total += inst.weight(k);
        break;
      }
    }
  }
  return total;
}

}  // namespace whacamole
