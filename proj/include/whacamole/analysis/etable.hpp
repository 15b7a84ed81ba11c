#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "whacamole/error.hpp"

namespace whacamole {

using Rational = boost::multiprecision::cpp_rational;

/// Expected number of items the uniform random collector gets from a
/// configuration with `a` active items of which `p` are pending, when the
/// adversary repeatedly takes one item and deletes it.
class ETable {
 public:
  explicit ETable(std::size_t a_max) : e_(a_max + 1) {
    for (std::size_t a = 0; a <= a_max; ++a) {
      e_[a].assign(a + 1, Rational(0));
      if (a >= 1) e_[a][1] = 1;
      for (std::size_t p = 2; p <= a; ++p) {
        e_[a][p] = Rational(a - p + 1, a) * e_[a - 1][p - 1] +
                   Rational(p - 1, a) * e_[a - 1][p - 2] + 1;
      }
    }
  }

  std::size_t a_max() const { return e_.size() - 1; }
  const Rational& at(std::size_t a, std::size_t p) const { return e_.at(a).at(p); }

 private:
  std::vector<std::vector<Rational>> e_;
};

inline ETable e_table(std::size_t a_max) {
  if (a_max < 1) throw BadConfig("e_table needs a_max >= 1");
  return ETable(a_max);
}

inline Rational rational_pow(const Rational& base, std::size_t k) {
  Rational r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= base;
  return r;
}

/// a(1 - (1 - 1/a)^p), exactly.
inline Rational e_lower_bound(std::size_t a, std::size_t p) {
  return Rational(a) * (1 - rational_pow(1 - Rational(1, a), p));
}

/// A double that is provably <= (a+1)(1 - e^{-p/a}) + 1: every rounding step
/// is pushed downwards (exp is taken as up to 2 ulp too small).
inline double e_upper_bound_rounded_down(std::size_t a, std::size_t p) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  auto up = [&](double x, int ulps) {
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, inf);
    return x;
  };
  auto down = [&](double x) { return std::nextafter(x, -inf); };
  const double ratio_lo = down(static_cast<double>(p) / static_cast<double>(a));
  const double ex_hi = up(std::exp(-ratio_lo), 2);
  const double one_minus = down(1.0 - ex_hi);
  return down(down(static_cast<double>(a + 1) * one_minus) + 1.0);
}

/// Both closed-form bounds hold for every entry with a >= 1.
inline bool check_e_bounds(const ETable& table) {
  for (std::size_t a = 1; a <= table.a_max(); ++a) {
    for (std::size_t p = 0; p <= a; ++p) {
      const Rational& e = table.at(a, p);
      if (e < e_lower_bound(a, p)) return false;
      if (e > Rational(e_upper_bound_rounded_down(a, p))) return false;
    }
  }
  return true;
}

/// Rational strictly below e/(e-1): built from an upper bound on e.
inline Rational e_ratio_lower() {
  const Rational e_hi(271828183, 100000000);
  return e_hi / (e_hi - 1);
}

}  // namespace whacamole
