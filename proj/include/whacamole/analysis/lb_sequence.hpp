#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "whacamole/error.hpp"

namespace whacamole {

/// Weights 1, z_1, ..., z_{2n-2}, z_{2n} (there is no z_{2n-1}) and the ratio
/// R they certify. z[0] holds the unit item; z[2n-1] is unused.
struct LBSequence {
  std::size_t n = 0;
  std::vector<double> z;
  double R = 0.0;
  bool ordered = false;       // 1 > z_1 > z_2 > ... > z_{2n-2} > z_{2n} > 0
  double max_residual = 0.0;  // of the equalized system

  bool has(std::size_t i) const { return i <= 2 * n && i != 2 * n - 1; }
  /// Indices 1..2n without 2n-1, ascending.
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i <= 2 * n; ++i) {
      if (has(i)) out.push_back(i);
    }
    return out;
  }
};

namespace detail {

inline double sum_z(const LBSequence& s, std::size_t hi) {
  double t = 0.0;
  for (std::size_t i = 1; i <= std::min(hi, 2 * s.n); ++i) {
    if (s.has(i)) t += s.z[i];
  }
  return t;
}

inline double sum_odd(const LBSequence& s, std::size_t j) {
  double t = 0.0;
  for (std::size_t i = 1; i <= j; ++i) t += s.z[2 * i - 1];
  return t;
}

/// Slack (rhs - lhs) of both inequality families for 0 <= j < n. The family
/// (1) at j = n-1 counts the whole sequence on its right-hand side.
inline std::vector<double> lb_slacks(const LBSequence& s) {
  std::vector<double> out;
  for (std::size_t j = 0; j < s.n; ++j) {
    out.push_back(1.0 + sum_z(s, 2 * j + 1 + (j + 1 == s.n ? 1 : 0)) - s.R * (1.0 + sum_odd(s, j)));
    out.push_back(1.0 + sum_z(s, j) - s.R * (s.z[2 * j + 2] + sum_odd(s, j)));
  }
  return out;
}

/// Solves the equalized system for fixed R, leaving (1) at j = n-1 out;
/// returns that equation's residual.
inline double lb_back_substitute(LBSequence& s, double R) {
  s.R = R;
  s.z.assign(2 * s.n + 1, 0.0);
  s.z[0] = 1.0;
  for (std::size_t j = 0; j < s.n; ++j) {
    s.z[2 * j + 2] = (1.0 + sum_z(s, j)) / R - sum_odd(s, j);
    if (j + 1 < s.n) s.z[2 * j + 1] = R * (1.0 + sum_odd(s, j)) - 1.0 - sum_z(s, 2 * j);
  }
  return R * (1.0 + sum_odd(s, s.n - 1)) - 1.0 - sum_z(s, 2 * s.n);
}

}  // namespace detail

/// Strict ordering; neighbours closer than 1e-12 count as equal.
inline bool lb_sequence_ordered(const LBSequence& s) {
  double prev = 1.0;
  for (std::size_t i : s.indices()) {
    if (!(s.z[i] < prev - 1e-12)) return false;
    prev = s.z[i];
  }
  return prev > 0.0;
}

/// Replaces the inequalities by equations and solves: back-substitution for
/// z given R, bisection on R in [1.6, 1.7] for the remaining equation.
inline LBSequence solve_lb_sequence(std::size_t n) {
  if (n < 2 || n > 12) throw BadConfig("solve_lb_sequence needs 2 <= n <= 12");
  LBSequence s;
  s.n = n;
  double lo = 1.6, hi = 1.7;
  const double f_lo = detail::lb_back_substitute(s, lo);
  const double f_hi = detail::lb_back_substitute(s, hi);
  if (!(f_lo < 0.0) == !(f_hi < 0.0)) throw NoSolution("no sign change on [1.6, 1.7]");
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((detail::lb_back_substitute(s, mid) < 0.0) == (f_lo < 0.0)) lo = mid;
    else hi = mid;
  }
  detail::lb_back_substitute(s, 0.5 * (lo + hi));
  for (double r : detail::lb_slacks(s)) s.max_residual = std::max(s.max_residual, std::abs(r));
  s.ordered = lb_sequence_ordered(s);
  return s;
}

/// All 2n inequalities within 1e-9 and the ordering invariant.
inline bool check_lb_inequalities(const LBSequence& s) {
  if (s.n < 2 || s.z.size() != 2 * s.n + 1 || !lb_sequence_ordered(s)) return false;
  const auto slack = detail::lb_slacks(s);
  return std::all_of(slack.begin(), slack.end(), [](double v) { return v >= -1e-9; });
}

/// The real root of x^5 + x^4 + 5x^3 - x^2 - 1 in (0, 1); for n = 3 it is z_2 = 1/R.
inline double lb_quintic_root() {
  auto f = [](double x) { return (((x + 1) * x + 5) * x - 1) * x * x - 1; };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace whacamole
