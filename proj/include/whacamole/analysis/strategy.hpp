#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "whacamole/analysis/etable.hpp"
#include "whacamole/error.hpp"

namespace whacamole {

/// A word over {t, d}: t = adversary collects (the collector takes a pending
/// item if it has one), d = adversary deletes an item chosen uniformly.
struct Strategy {
  std::string word;

  static Strategy parse(std::string_view w) {
    for (char c : w) {
      if (c != 't' && c != 'd') throw BadConfig("strategy letters must be t or d");
    }
    return Strategy{std::string(w)};
  }
  static Strategy natural(std::size_t k) {
    std::string w;
    for (std::size_t i = 0; i < k; ++i) w += "td";
    return Strategy{w};
  }
  std::size_t count(char c) const { return static_cast<std::size_t>(std::count(word.begin(), word.end(), c)); }
};

inline bool is_feasible(const Strategy& s, std::size_t a, std::size_t p) {
  if (p > a || s.count('d') != a) return false;
  long balance = 0;  // d minus t over the current suffix
  for (auto it = s.word.rbegin(); it != s.word.rend(); ++it) {
    balance += (*it == 'd') ? 1 : -1;
    if (balance < 0) return false;
  }
  return true;
}

/// Expected collector gain for the word from (a, p), no feasibility check.
/// Throws Infeasible when a d is applied to an empty set.
inline Rational evaluate_word(const Strategy& s, std::size_t a, std::size_t p) {
  if (p > a) throw Infeasible("more pending than active items");
  std::map<std::size_t, Rational> dist{{p, Rational(1)}};
  Rational gain = 0;
  for (char c : s.word) {
    std::map<std::size_t, Rational> next;
    if (c == 't') {
      for (const auto& [q, pr] : dist) {
        if (q > 0) gain += pr;
        next[q > 0 ? q - 1 : 0] += pr;
      }
    } else {
      if (a == 0) throw Infeasible("delete from an empty set");
      for (const auto& [q, pr] : dist) {
        if (q > 0) next[q - 1] += pr * Rational(q, a);
        if (q < a) next[q] += pr * Rational(a - q, a);
      }
      --a;
    }
    dist = std::move(next);
  }
  return gain;
}

inline Rational expected_gain(const Strategy& s, std::size_t a, std::size_t p) {
  if (a > 12) throw TooLarge("strategy evaluation is limited to a <= 12");
  if (!is_feasible(s, a, p)) throw Infeasible("'" + s.word + "' is not feasible for (" +
                                              std::to_string(a) + ", " + std::to_string(p) + ")");
  return evaluate_word(s, a, p);
}

/// Every feasible word for a active items (any number of t's).
inline std::vector<Strategy> feasible_words(std::size_t a) {
  std::vector<Strategy> out;
  std::string w;
  // build right to left so the suffix condition is a running balance
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t d_used, std::size_t t_used) {
    out.push_back(Strategy{std::string(w.rbegin(), w.rend())});
    if (d_used < a) {
      w.push_back('d');
      rec(d_used + 1, t_used);
      w.pop_back();
    }
    if (t_used < d_used) {
      w.push_back('t');
      rec(d_used, t_used + 1);
      w.pop_back();
    }
  };
  rec(0, 0);
  std::erase_if(out, [&](const Strategy& s) { return s.count('d') != a; });
  std::sort(out.begin(), out.end(), [](const Strategy& x, const Strategy& y) { return x.word < y.word; });
  return out;
}

struct StrategyLemmaReport {
  std::size_t words = 0;
  std::size_t comparisons = 0;
  std::size_t monotone_violations = 0;
  std::size_t inversion_violations = 0;
  std::size_t k_strategy_violations = 0;
  std::vector<std::string> counterexamples;

  bool ok() const { return monotone_violations + inversion_violations + k_strategy_violations == 0; }
};

inline StrategyLemmaReport verify_strategy_lemmas(std::size_t a_max) {
  if (a_max > 6) throw TooLarge("lemma enumeration is limited to a_max <= 6");
  StrategyLemmaReport rep;
  auto note = [&](std::size_t& counter, const std::string& what) {
    ++counter;
    if (rep.counterexamples.size() < 20) rep.counterexamples.push_back(what);
  };
  for (std::size_t a = 1; a <= a_max; ++a) {
    const auto words = feasible_words(a);
    rep.words += words.size();
    for (const Strategy& s : words) {
      std::vector<Rational> e(a + 1);
      for (std::size_t p = 0; p <= a; ++p) e[p] = evaluate_word(s, a, p);
      for (std::size_t p = 0; p < a; ++p) {
        ++rep.comparisons;
        if (e[p + 1] < e[p]) note(rep.monotone_violations, "monotone " + s.word + " p=" + std::to_string(p));
      }
      for (std::size_t i = 0; i + 1 < s.word.size(); ++i) {
        if (s.word[i] != 't' || s.word[i + 1] != 'd') continue;
        Strategy swapped = s;
        std::swap(swapped.word[i], swapped.word[i + 1]);
        for (std::size_t p = 0; p <= a; ++p) {
          if (!is_feasible(swapped, a, p)) continue;
          ++rep.comparisons;
          if (e[p] < evaluate_word(swapped, a, p)) {
            note(rep.inversion_violations, "td-inversion " + s.word + " p=" + std::to_string(p));
          }
        }
      }
      const std::size_t k = s.count('t');
      ++rep.comparisons;
      if (e[a] < evaluate_word(Strategy::natural(k), k, k)) {
        note(rep.k_strategy_violations, "k-strategy " + s.word);
      }
    }
  }
  return rep;
}

}  // namespace whacamole
