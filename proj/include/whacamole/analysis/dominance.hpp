#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace whacamole {

/// Finite set of distinct reals, kept sorted ascending.
using ValueSet = std::vector<double>;

inline ValueSet make_set(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Number of elements >= u.
inline std::size_t sharp(double u, const ValueSet& t) {
  return static_cast<std::size_t>(std::count_if(t.begin(), t.end(), [u](double x) { return x >= u; }));
}

/// X dominates scale*Y: Y empty, or max X >= scale*max Y and the remainders
/// dominate.
inline bool dominates(const ValueSet& x, const ValueSet& y, double scale = 1.0) {
  std::size_t i = x.size(), j = y.size();
  while (j > 0) {
    if (i == 0 || x[i - 1] < scale * y[j - 1]) return false;
    --i;
    --j;
  }
  return true;
}

/// Dominance via a bipartite matching Y -> X with f(y) >= scale*y.
inline bool dominates_by_injection(const ValueSet& x, const ValueSet& y, double scale = 1.0) {
  std::vector<int> owner(x.size(), -1);
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t yi, std::vector<bool>& seen) {
    for (std::size_t xi = 0; xi < x.size(); ++xi) {
      if (seen[xi] || x[xi] < scale * y[yi]) continue;
      seen[xi] = true;
      if (owner[xi] < 0 || augment(static_cast<std::size_t>(owner[xi]), seen)) {
        owner[xi] = static_cast<int>(yi);
        return true;
      }
    }
    return false;
  };
  for (std::size_t yi = 0; yi < y.size(); ++yi) {
    std::vector<bool> seen(x.size(), false);
    if (!augment(yi, seen)) return false;
  }
  return true;
}

/// Dominance via counting: sharp_u(X) >= sharp_u(scale*Y) for every u
/// (only thresholds at elements of scale*Y matter).
inline bool dominates_by_counting(const ValueSet& x, const ValueSet& y, double scale = 1.0) {
  ValueSet sy;
  for (double v : y) sy.push_back(scale * v);
  return std::all_of(sy.begin(), sy.end(), [&](double u) { return sharp(u, x) >= sharp(u, sy); });
}

struct DominanceReport {
  std::size_t pairs = 0;
  std::size_t disagreements = 0;
  std::size_t update_checks = 0;
  std::size_t update_violations[3] = {0, 0, 0};

  bool ok() const {
    return disagreements == 0 && update_violations[0] + update_violations[1] + update_violations[2] == 0;
  }
};

inline ValueSet subset_of(const ValueSet& universe, std::uint32_t mask) {
  ValueSet s;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (mask >> i & 1U) s.push_back(universe[i]);
  }
  return s;
}

inline ValueSet without(ValueSet s, double v) {
  std::erase(s, v);
  return s;
}

inline ValueSet with(ValueSet s, double v) {
  s.push_back(v);
  return make_set(std::move(s));
}

/// Checks the three characterizations against each other on all ordered
/// pairs of subsets of `universe`, and the update rules on dominating pairs:
/// (i) drop both minima, (ii) drop a common element, (iii) add y in Z-Y to Y
/// and x in Z-X to X with x >= max{z in Z-X : z <= y}.
inline DominanceReport verify_dominance(const ValueSet& universe) {
  DominanceReport rep;
  const std::uint32_t subsets = std::uint32_t{1} << universe.size();
  for (std::uint32_t mx = 0; mx < subsets; ++mx) {
    const ValueSet x = subset_of(universe, mx);
    for (std::uint32_t my = 0; my < subsets; ++my) {
      const ValueSet y = subset_of(universe, my);
      ++rep.pairs;
      const bool d = dominates(x, y);
      if (d != dominates_by_injection(x, y) || d != dominates_by_counting(x, y)) ++rep.disagreements;
      if (!d || y.empty()) continue;

      ++rep.update_checks;
      if (!dominates(without(x, x.front()), without(y, y.front()))) ++rep.update_violations[0];
      for (double v : x) {
        if (!std::binary_search(y.begin(), y.end(), v)) continue;
        ++rep.update_checks;
        if (!dominates(without(x, v), without(y, v))) ++rep.update_violations[1];
      }
      for (double yv : universe) {
        if (std::binary_search(y.begin(), y.end(), yv)) continue;
        double floor = -1e300;  // max{z in Z-X : z <= y}, -inf when empty
        for (double z : universe) {
          if (z <= yv && !std::binary_search(x.begin(), x.end(), z)) floor = std::max(floor, z);
        }
        for (double xv : universe) {
          if (std::binary_search(x.begin(), x.end(), xv) || xv < floor) continue;
          ++rep.update_checks;
          if (!dominates(with(x, xv), with(y, yv))) ++rep.update_violations[2];
        }
      }
    }
  }
  return rep;
}

}  // namespace whacamole
