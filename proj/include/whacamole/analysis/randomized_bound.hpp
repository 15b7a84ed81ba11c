#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "whacamole/analysis/etable.hpp"
#include "whacamole/error.hpp"

namespace whacamole {

/// Mixed adversary for the randomized memoryless queue bound with item
/// weights a^0..a^n, a = 1 + 1/n: strategy k is played with probability v_k.
template <typename T>
struct RandomizedQueueBound {
  T a;
  T M;
  T R;
  std::vector<T> v;
};

/// Double version; a^{n+1} through log1p so that n up to 1e6 and beyond is accurate.
inline RandomizedQueueBound<double> randomized_queue_bound(std::size_t n) {
  if (n < 1) throw BadConfig("randomized_queue_bound needs n >= 1");
  const double nd = static_cast<double>(n);
  RandomizedQueueBound<double> b;
  b.a = 1.0 + 1.0 / nd;
  const double log_a = std::log1p(1.0 / nd);
  const double a_n1 = std::exp((nd + 1.0) * log_a);
  b.M = a_n1 - nd * (b.a - 1.0);
  b.R = a_n1 / b.M;
  b.v.resize(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    b.v[k] = std::exp(static_cast<double>(n - k) * log_a) * (b.a - 1.0) / b.M;
  }
  b.v[n] = (b.a - nd * (b.a - 1.0)) / b.M;
  return b;
}

/// Exact version in rationals (practical for small n).
inline RandomizedQueueBound<Rational> randomized_queue_bound_exact(std::size_t n) {
  if (n < 1) throw BadConfig("randomized_queue_bound needs n >= 1");
  RandomizedQueueBound<Rational> b;
  b.a = 1 + Rational(1, n);
  const Rational a_n1 = rational_pow(b.a, n + 1);
  b.M = a_n1 - Rational(n) * (b.a - 1);
  b.R = a_n1 / b.M;
  b.v.resize(n + 1);
  for (std::size_t k = 0; k < n; ++k) b.v[k] = rational_pow(b.a, n - k) * (b.a - 1) / b.M;
  b.v[n] = (b.a - Rational(n) * (b.a - 1)) / b.M;
  return b;
}

struct PressureResult {
  std::size_t best_k = 0;
  double ratio = 0.0;
};

/// Ratio forced by adversary strategy k against the collection distribution
/// q over weights a^0..a^n, maximized over k (ties to the lowest k).
inline PressureResult lb_randomized_queue_pressure(const std::vector<double>& q, std::size_t n) {
  if (n < 1 || q.size() != n + 1) throw BadDistribution("q must have n+1 entries");
  double total = 0.0;
  for (double x : q) {
    if (!(x >= 0.0)) throw BadDistribution("negative probability");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) throw BadDistribution("probabilities do not sum to 1");
  const double a = 1.0 + 1.0 / static_cast<double>(n);
  std::vector<double> pw(n + 1, 1.0);
  for (std::size_t j = 1; j <= n; ++j) pw[j] = pw[j - 1] * a;
  double alg = 0.0;
  for (std::size_t j = 0; j <= n; ++j) alg += q[j] * pw[j];
  // suffix[k] = sum_{j > k} q_j a^j
  std::vector<double> suffix(n + 1, 0.0);
  for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] + q[k + 1] * pw[k + 1];
  PressureResult best;
  for (std::size_t k = 0; k <= n; ++k) {
    const double r = (pw[k] + suffix[k]) / alg;
    if (k == 0 || r > best.ratio) best = {k, r};
  }
  return best;
}

}  // namespace whacamole
