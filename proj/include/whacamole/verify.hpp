#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "whacamole/adversaries.hpp"
#include "whacamole/algorithms.hpp"
#include "whacamole/analysis.hpp"
#include "whacamole/engine.hpp"
#include "whacamole/experiment.hpp"
#include "whacamole/generators.hpp"
#include "whacamole/offline.hpp"
#include "whacamole/parallel.hpp"

namespace whacamole {

struct VerifyOptions {
  std::uint64_t seed = 20240607;
  std::size_t jobs = 1;
  std::size_t random_count = 100000;  // random instances per family
  std::size_t yao_trials = 100000;
  std::size_t pressure_samples = 1000;
  /// Sabotage switches, used to check that the suite can fail.
  std::optional<double> decque_beta;
  bool greedy_matching_oracle = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::string measured;
  std::string bound;
  bool pass = false;
  double seconds = 0.0;
};

namespace detail {

inline std::string fmt(double x, int digits = 10) {
  std::ostringstream o;
  o << std::setprecision(digits) << x;
  return o.str();
}

struct Worst {
  double ratio = 0.0;
  std::size_t count = 0;

  void add(double r) {
    ratio = std::max(ratio, r);
    ++count;
  }
};

inline double instance_ratio(const Instance& inst, OnlineAlgorithm& alg) {
  return competitive_ratio(optimal_gain_matching(inst).gain, simulate(inst, alg, 0).gain);
}

/// Worst ratio of `alg` over `count` random instances; instance i depends on
/// (seed, i) only, so the result is independent of `jobs`.
inline Worst worst_random(const OnlineAlgorithm& alg, Flavor flavor, std::size_t max_n, std::size_t max_steps,
                          bool nondecreasing, std::size_t count, std::uint64_t seed, std::size_t jobs) {
  jobs = std::max<std::size_t>(1, jobs);
  std::vector<std::unique_ptr<OnlineAlgorithm>> algs;
  for (std::size_t w = 0; w < jobs; ++w) algs.push_back(alg.clone());
  std::vector<Worst> per(jobs);
  const WeightDist dist = WeightDist::uniform(0.05, 1.0);
  parallel_for(count, jobs, [&](std::size_t w, std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_n)(rng);
    const std::size_t steps = std::uniform_int_distribution<std::size_t>(1, max_steps)(rng);
    const Instance inst = random_instance(flavor, n, steps, dist, rng(), nondecreasing);
    per[w].add(instance_ratio(inst, *algs[w]));
  });
  Worst all;
  for (const auto& p : per) {
    all.ratio = std::max(all.ratio, p.ratio);
    all.count += p.count;
  }
  return all;
}

using Family = std::function<void(const std::function<void(const Instance&)>&)>;

inline Family dynamic_set_family() {
  return [](const auto& fn) { for_each_dynamic_set(4, 4, {1.0, 2.0, 3.0}, fn); };
}
inline Family decremental_queue_family() {
  return [](const auto& fn) { for_each_decremental_queue(6, 6, {0.5, 0.578125, 0.78125, 1.0}, fn); };
}
inline Family fifo_queue_family() {
  return [](const auto& fn) { for_each_fifo_queue(4, 5, {0.5, 2.0 / 3.0, 0.75, 1.0}, fn); };
}

inline Worst worst_family(const Family& family, OnlineAlgorithm& alg) {
  Worst w;
  family([&](const Instance& inst) { w.add(instance_ratio(inst, alg)); });
  return w;
}

inline std::vector<std::unique_ptr<OnlineAlgorithm>> deterministic_battery(const VerifyOptions& o) {
  std::vector<std::unique_ptr<OnlineAlgorithm>> out;
  out.push_back(std::make_unique<Greedy>());
  DecQueEFHParams dq;
  if (o.decque_beta) dq.beta = *o.decque_beta;
  out.push_back(std::make_unique<DecQueEFH>(dq));
  out.push_back(std::make_unique<FIFOQueEH>());
  out.push_back(std::make_unique<MarkAndPick>(MarkAndPickParams{false}));
  out.push_back(std::make_unique<ConstantIndex>(ConstantIndex::End::first));
  out.push_back(std::make_unique<ConstantIndex>(ConstantIndex::End::last));
  return out;
}

inline double decque_bound() { return 2.0 * (std::sqrt(13.0) - 1.0) / 3.0; }

}  // namespace detail

inline CriterionResult criterion_greedy_sets(const VerifyOptions&) {
  CriterionResult c{1, "Greedy is 2-competitive on dynamic sets", "", "worst <= 2, two-item game = 2", false};
  Greedy g;
  const auto w = detail::worst_family(detail::dynamic_set_family(), g);
  const GameResult game = lb_two_item_set_game(g);
  c.measured = "worst " + detail::fmt(w.ratio) + " over " + std::to_string(w.count) +
               " instances, game " + detail::fmt(game.ratio);
  c.pass = w.ratio <= 2.0 && game.ratio == 2.0;
  return c;
}

inline CriterionResult criterion_phi_game(const VerifyOptions& o) {
  CriterionResult c{2, "phi lower bound on decremental queues", "", "every ratio >= phi - 1e-12", false};
  double lo = std::numeric_limits<double>::infinity();
  for (auto& alg : detail::deterministic_battery(o)) lo = std::min(lo, lb_phi_queue_game(*alg).ratio);
  c.measured = "min ratio " + detail::fmt(lo, 15);
  c.pass = lo >= std::numbers::phi - 1e-12;
  return c;
}

inline CriterionResult criterion_lb_sequence(const VerifyOptions& o) {
  CriterionResult c{3, "decremental queue lower bound constants and game", "",
                    "R3 in [1.6328,1.6330], z2 in [0.6123,0.6124], R5 in [1.6360,1.6375], R(n) up and < 1.6379, "
                    "game >= 1.6329 - 1e-6",
                    false};
  const LBSequence s3 = solve_lb_sequence(3);
  const LBSequence s5 = solve_lb_sequence(5);
  bool mono = true;
  double prev = 0.0, r12 = 0.0;
  for (std::size_t n = 3; n <= 12; ++n) {
    const double r = solve_lb_sequence(n).R;
    mono = mono && r >= prev && r < 1.6379;
    prev = r12 = r;
  }
  double game = std::numeric_limits<double>::infinity();
  for (auto& alg : detail::deterministic_battery(o)) game = std::min(game, lb_decremental_queue_game(*alg, s3).ratio);
  c.measured = "R3 " + detail::fmt(s3.R) + ", z2 " + detail::fmt(s3.z[2]) + ", R5 " + detail::fmt(s5.R) +
               ", R12 " + detail::fmt(r12) + (mono ? "" : " (not monotone)") + ", game min " + detail::fmt(game);
  c.pass = s3.R >= 1.6328 && s3.R <= 1.6330 && s3.z[2] >= 0.6123 && s3.z[2] <= 0.6124 && s5.R >= 1.6360 &&
           s5.R <= 1.6375 && mono && game >= 1.6329 - 1e-6;
  return c;
}

inline CriterionResult criterion_decque(const VerifyOptions& o) {
  CriterionResult c{4, "DecQueEFH upper bound on decremental queues", "",
                    "worst <= 2(sqrt13-1)/3 + 1e-9 = " + detail::fmt(detail::decque_bound()), false};
  DecQueEFHParams p;
  if (o.decque_beta) p.beta = *o.decque_beta;
  DecQueEFH alg(p);
  const auto ex = detail::worst_family(detail::decremental_queue_family(), alg);
  const auto rnd = detail::worst_random(alg, Flavor::decremental_queue, 8, 8, false, o.random_count,
                                        derive_seed(o.seed, 4), o.jobs);
  c.measured = "exhaustive " + detail::fmt(ex.ratio) + " (" + std::to_string(ex.count) + "), random " +
               detail::fmt(rnd.ratio) + " (" + std::to_string(rnd.count) + ")";
  c.pass = std::max(ex.ratio, rnd.ratio) <= detail::decque_bound() + 1e-9;
  return c;
}

inline CriterionResult criterion_fifo(const VerifyOptions& o) {
  CriterionResult c{5, "FIFOQueEH 1.8 upper bound and tightness", "",
                    "worst <= 1.8 + 1e-9, tight instances >= 1.8 - 5e-3", false};
  FIFOQueEH alg;
  const auto ex = detail::worst_family(detail::fifo_queue_family(), alg);
  const auto rnd = detail::worst_random(alg, Flavor::fifo_queue, 8, 10, false, o.random_count,
                                        derive_seed(o.seed, 5), o.jobs);
  const double t1 = detail::instance_ratio(named_instance("fifo_tight_1", 1e-3), alg);
  const double t2 = detail::instance_ratio(named_instance("fifo_tight_2", 1e-3), alg);
  c.measured = "exhaustive " + detail::fmt(ex.ratio) + " (" + std::to_string(ex.count) + "), random " +
               detail::fmt(rnd.ratio) + " (" + std::to_string(rnd.count) + "), tight " + detail::fmt(t1) + " / " +
               detail::fmt(t2);
  c.pass = std::max(ex.ratio, rnd.ratio) <= 1.8 + 1e-9 && std::min(t1, t2) >= 1.8 - 5e-3;
  return c;
}

inline CriterionResult criterion_mark_and_pick(const VerifyOptions& o) {
  CriterionResult c{6, "MarkAndPick is phi-competitive on nondecreasing queues", "", "worst <= phi + 1e-9", false};
  MarkAndPick alg;
  const auto rnd = detail::worst_random(alg, Flavor::dynamic_queue, 8, 10, true, o.random_count,
                                        derive_seed(o.seed, 6), o.jobs);
  c.measured = "random " + detail::fmt(rnd.ratio) + " (" + std::to_string(rnd.count) + ")";
  c.pass = rnd.ratio <= std::numbers::phi + 1e-9;
  return c;
}

inline CriterionResult criterion_uniform_sets(const VerifyOptions& o) {
  CriterionResult c{7, "uniform decremental sets: E table, UniRand, bounds", "",
                    "bounds hold for a <= 50, |mean - E30,30| <= 3 stderr, n/E < e/(e-1)", false};
  const ETable t = e_table(50);
  const bool bounds = check_e_bounds(t);
  bool ratio_ok = true, lower_ok = true;
  const Rational limit = e_ratio_lower();
  for (std::size_t n = 1; n <= 50; ++n) {
    ratio_ok = ratio_ok && Rational(n) / t.at(n, n) < limit;
    lower_ok = lower_ok && t.at(n, n) / n >= 1 - rational_pow(1 - Rational(1, n), n);
  }
  UniRand u;
  const GameResult y = yao_uniform_process(u, 30, o.yao_trials, derive_seed(o.seed, 7), o.jobs);
  const double exact = static_cast<double>(t.at(30, 30));
  const bool mc = std::abs(y.alg_gain - exact) <= 3.0 * y.alg_stderr;
  c.measured = std::string("bounds ") + (bounds ? "ok" : "FAIL") + ", mean " + detail::fmt(y.alg_gain) +
               " +- " + detail::fmt(y.alg_stderr, 3) + " vs " + detail::fmt(exact) + ", ratio " +
               (ratio_ok ? "ok" : "FAIL") + ", lower " + (lower_ok ? "ok" : "FAIL");
  c.pass = bounds && ratio_ok && lower_ok && mc;
  return c;
}

inline CriterionResult criterion_strategy_lemmas(const VerifyOptions&) {
  CriterionResult c{8, "strategy lemmas", "", "no counterexamples, (td)^a matches E[a][a] for a <= 8", false};
  const auto rep = verify_strategy_lemmas(5);
  const ETable t = e_table(8);
  bool match = true;
  for (std::size_t a = 1; a <= 8; ++a) match = match && expected_gain(Strategy::natural(a), a, a) == t.at(a, a);
  c.measured = std::to_string(rep.words) + " words, " + std::to_string(rep.comparisons) + " comparisons, " +
               std::to_string(rep.monotone_violations + rep.inversion_violations + rep.k_strategy_violations) +
               " counterexamples, table " + (match ? "matches" : "differs");
  c.pass = rep.ok() && match;
  return c;
}

inline CriterionResult criterion_dominance(const VerifyOptions&) {
  CriterionResult c{9, "dominance characterizations and updates", "", "0 disagreements, 0 update violations", false};
  const auto rep = verify_dominance({1, 2, 3, 4, 5, 6});
  c.measured = std::to_string(rep.pairs) + " pairs, " + std::to_string(rep.disagreements) + " disagreements, " +
               std::to_string(rep.update_checks) + " update checks, " +
               std::to_string(rep.update_violations[0] + rep.update_violations[1] + rep.update_violations[2]) +
               " violations";
  c.pass = rep.pairs == 4096 && rep.ok();
  return c;
}

inline CriterionResult criterion_randomized_queue(const VerifyOptions& o) {
  CriterionResult c{10, "randomized memoryless queue bound", "",
                    "sum v = 1, R(1) = 4/3, R increasing, |R(1e6) - e/(e-1)| < 1e-5, pressure >= R(20)", false};
  bool sums = true, mono = true;
  double prev = 0.0;
  for (std::size_t n = 1; n <= 200; ++n) {
    const auto b = randomized_queue_bound(n);
    double s = 0.0;
    for (double v : b.v) s += v;
    sums = sums && std::abs(s - 1.0) <= 1e-12 && *std::min_element(b.v.begin(), b.v.end()) >= 0.0;
    mono = mono && b.R > prev;
    prev = b.R;
  }
  const bool exact = randomized_queue_bound_exact(1).R == Rational(4, 3);
  const double limit = std::numbers::e / (std::numbers::e - 1.0);
  const double far = randomized_queue_bound(1000000).R;
  const double r20 = randomized_queue_bound(20).R;
  Rng rng(derive_seed(o.seed, 10));
  std::exponential_distribution<double> ex(1.0);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < o.pressure_samples; ++i) {
    std::vector<double> q(21);
    double t = 0.0;
    for (auto& x : q) t += (x = ex(rng));
    for (auto& x : q) x /= t;
    // renormalize the rounding residue onto the largest entry
    double s = 0.0;
    for (double x : q) s += x;
    *std::max_element(q.begin(), q.end()) += 1.0 - s;
    worst = std::min(worst, lb_randomized_queue_pressure(q, 20).ratio);
  }
  c.measured = std::string("sums ") + (sums ? "ok" : "FAIL") + ", R(1) " + (exact ? "4/3" : "wrong") +
               ", monotone " + (mono ? "yes" : "no") + ", R(1e6) " + detail::fmt(far, 12) + ", min pressure " +
               detail::fmt(worst) + " vs R(20) " + detail::fmt(r20);
  c.pass = sums && exact && mono && std::abs(far - limit) < 1e-5 && worst >= r20 - 1e-12;
  return c;
}

inline CriterionResult criterion_oracle(const VerifyOptions& o) {
  CriterionResult c{11, "matching optimum equals exhaustive optimum", "", "0 mismatches", false};
  std::size_t count = 0, mismatches = 0;
  auto check = [&](const Instance& inst) {
    ++count;
    const double m = o.greedy_matching_oracle ? greedy_matching_gain(inst) : optimal_gain_matching(inst).gain;
    if (m != optimal_gain_bruteforce(inst)) ++mismatches;
  };
  detail::dynamic_set_family()(check);
  detail::decremental_queue_family()(check);
  c.measured = std::to_string(mismatches) + " mismatches over " + std::to_string(count) + " instances" +
               (o.greedy_matching_oracle ? " (greedy matching)" : "");
  c.pass = mismatches == 0;
  return c;
}

inline CriterionResult criterion_memoryless(const VerifyOptions&) {
  CriterionResult c{12, "memoryless queue lower bound", "", "|ratio - 2| < 1e-2, ratio >= closed form", false};
  Greedy g;
  const GameResult r = lb_memoryless_queue_game(g, 100, 1000000);
  const double closed = memoryless_closed_form(100, 1000000, r.branch.value_or(0));
  c.measured = "ratio " + detail::fmt(r.ratio) + " at k = " + std::to_string(r.branch.value_or(0)) +
               ", closed form " + detail::fmt(closed);
  c.pass = r.branch == 100u && std::abs(r.ratio - 2.0) < 1e-2 && r.ratio >= closed - 1e-12 &&
           std::abs(r.ratio - closed) < 1e-2;
  return c;
}

using CriterionFn = CriterionResult (*)(const VerifyOptions&);

inline const std::vector<CriterionFn>& criteria() {
  static const std::vector<CriterionFn> all = {
      criterion_greedy_sets, criterion_phi_game,     criterion_lb_sequence,     criterion_decque,
      criterion_fifo,        criterion_mark_and_pick, criterion_uniform_sets,   criterion_strategy_lemmas,
      criterion_dominance,   criterion_randomized_queue, criterion_oracle,      criterion_memoryless};
  return all;
}

/// Runs one criterion, turning exceptions into a failed verdict.
inline CriterionResult run_criterion(std::size_t id, const VerifyOptions& o) {
  if (id < 1 || id > criteria().size()) throw BadConfig("no criterion " + std::to_string(id));
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult c;
  try {
    c = criteria()[id - 1](o);
  } catch (const std::exception& e) {
    c.id = static_cast<int>(id);
    c.title = "criterion " + std::to_string(id);
    c.measured = std::string("error: ") + e.what();
    c.pass = false;
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

inline std::string format_criterion(const CriterionResult& c) {
  std::ostringstream o;
  o << (c.pass ? "PASS" : "FAIL") << "  [" << std::setw(2) << c.id << "] " << c.title << " | measured: " << c.measured
    << " | bound: " << c.bound << " | " << std::fixed << std::setprecision(1) << c.seconds << "s";
  return o.str();
}

/// Runs the selected criteria (all when empty), printing one line each.
inline std::vector<CriterionResult> verify_all(const VerifyOptions& o, std::ostream& out,
                                               const std::vector<std::size_t>& only = {}) {
  std::vector<std::size_t> ids = only;
  if (ids.empty()) {
    for (std::size_t i = 1; i <= criteria().size(); ++i) ids.push_back(i);
  }
  std::vector<CriterionResult> res;
  for (std::size_t id : ids) {
    res.push_back(run_criterion(id, o));
    out << format_criterion(res.back()) << std::endl;
  }
  return res;
}

}  // namespace whacamole
