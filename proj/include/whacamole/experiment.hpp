#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "whacamole/algorithms.hpp"
#include "whacamole/engine.hpp"
#include "whacamole/error.hpp"
#include "whacamole/generators.hpp"
#include "whacamole/json_io.hpp"
#include "whacamole/offline.hpp"
#include "whacamole/parallel.hpp"

namespace whacamole {

struct AlgorithmSpec {
  std::string name;
  AlgorithmParams params;
  std::optional<double> ceiling;  // worst allowed OPT/ALG ratio
};

struct GeneratorSpec {
  enum class Kind { random, exhaustive, named };
  Kind kind = Kind::random;
  // random
  std::size_t n = 4;
  std::size_t steps = 4;
  std::size_t count = 100;
  WeightDist weights = WeightDist::uniform(0.0, 1.0);
  bool nondecreasing = false;
  // exhaustive
  std::size_t max_items = 3;
  std::vector<double> grid = {1.0, 2.0};
  // named
  std::vector<std::string> names;
  double epsilon = 1e-3;
};

struct ExperimentConfig {
  Flavor flavor = Flavor::dynamic_set;
  std::vector<AlgorithmSpec> algorithms;
  GeneratorSpec generator;
  std::size_t trials = 100;  // per randomized algorithm
  std::optional<std::uint64_t> seed;
  double tolerance = 1e-9;
};

namespace detail {

inline AlgorithmParams algorithm_params_from_json(const Json& j) {
  AlgorithmParams p;
  if (j.contains("alpha")) p.alpha = j.at("alpha").get<double>();
  if (j.contains("beta")) p.beta = j.at("beta").get<double>();
  if (j.contains("xi")) p.xi = j.at("xi").get<double>();
  if (j.contains("require_nondecreasing")) p.require_nondecreasing = j.at("require_nondecreasing").get<bool>();
  return p;
}

inline WeightDist weights_from_json(const Json& j) {
  const std::string kind = j.value("kind", "uniform");
  if (kind == "uniform") return WeightDist::uniform(j.value("lo", 0.0), j.value("hi", 1.0));
  if (kind == "grid") return WeightDist::grid(j.at("values").get<std::vector<double>>());
  throw BadConfig("weight distribution kind '" + kind + "'");
}

}  // namespace detail

/// Parses a config; `default_seed` fills in a missing "seed".
inline ExperimentConfig experiment_config_from_json(const Json& j,
                                                    std::optional<std::uint64_t> default_seed = std::nullopt) {
  ExperimentConfig c;
  try {
    if (j.contains("flavor")) c.flavor = parse_flavor(j.at("flavor").get<std::string>());
    for (const Json& a : j.at("algorithms")) {
      AlgorithmSpec s;
      if (a.is_string()) {
        s.name = a.get<std::string>();
      } else {
        s.name = a.at("name").get<std::string>();
        if (a.contains("params")) s.params = detail::algorithm_params_from_json(a.at("params"));
        if (a.contains("ceiling")) s.ceiling = a.at("ceiling").get<double>();
      }
      make_algorithm(s.name, s.params);  // rejects unknown names early
      c.algorithms.push_back(std::move(s));
    }
    if (c.algorithms.empty()) throw BadConfig("no algorithms configured");

    const Json& g = j.at("generator");
    const std::string kind = g.at("kind").get<std::string>();
    GeneratorSpec& gen = c.generator;
    if (kind == "random") {
      gen.kind = GeneratorSpec::Kind::random;
      gen.n = g.at("n").get<std::size_t>();
      gen.steps = g.at("steps").get<std::size_t>();
      gen.count = g.value("count", std::size_t{100});
      if (g.contains("weights")) gen.weights = detail::weights_from_json(g.at("weights"));
      gen.nondecreasing = g.value("nondecreasing", false);
    } else if (kind == "exhaustive") {
      gen.kind = GeneratorSpec::Kind::exhaustive;
      gen.max_items = g.at("max_items").get<std::size_t>();
      gen.steps = g.at("steps").get<std::size_t>();
      gen.grid = g.at("weights").get<std::vector<double>>();
      if (gen.max_items > 8 || gen.steps > 8) throw BadConfig("exhaustive bounds are capped at 8 items and 8 steps");
      if (gen.grid.empty()) throw BadConfig("exhaustive generator needs weights");
    } else if (kind == "named") {
      gen.kind = GeneratorSpec::Kind::named;
      gen.names = g.at("names").get<std::vector<std::string>>();
      gen.epsilon = g.value("epsilon", 1e-3);
      for (const auto& n : gen.names) named_instance(n, gen.epsilon);
    } else {
      throw BadConfig("generator kind '" + kind + "'");
    }

    c.trials = j.value("trials", std::size_t{100});
    if (c.trials < 1) throw BadConfig("trials must be positive");
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    else c.seed = default_seed;
    c.tolerance = j.value("tolerance", 1e-9);
  } catch (const Json::exception& e) {
    throw BadConfig(e.what());
  }
  const bool randomized_alg = std::any_of(c.algorithms.begin(), c.algorithms.end(), [](const AlgorithmSpec& a) {
    return !make_algorithm(a.name, a.params)->deterministic();
  });
  if (!c.seed && (c.generator.kind == GeneratorSpec::Kind::random || randomized_alg)) {
    throw BadConfig("a seed is required for randomized generators or algorithms");
  }
  return c;
}

struct NamedInstance {
  std::string id;
  Instance instance;
};

inline std::vector<NamedInstance> generate_instances(const ExperimentConfig& c) {
  std::vector<NamedInstance> out;
  const GeneratorSpec& g = c.generator;
  switch (g.kind) {
    case GeneratorSpec::Kind::random:
      for (std::size_t i = 0; i < g.count; ++i) {
        out.push_back({"random-" + std::to_string(i),
                       random_instance(c.flavor, g.n, g.steps, g.weights, derive_seed(*c.seed, i), g.nondecreasing)});
      }
      break;
    case GeneratorSpec::Kind::exhaustive: {
      auto sink = [&](const Instance& inst) {
        out.push_back({"exhaustive-" + std::to_string(out.size()), inst});
      };
      if (c.flavor == Flavor::dynamic_set) for_each_dynamic_set(g.max_items, g.steps, g.grid, sink);
      else if (c.flavor == Flavor::decremental_queue) for_each_decremental_queue(g.max_items, g.steps, g.grid, sink);
      else if (c.flavor == Flavor::fifo_queue) for_each_fifo_queue(g.max_items, g.steps, g.grid, sink);
      else throw BadConfig("no exhaustive enumerator for " + std::string(to_string(c.flavor)));
      break;
    }
    case GeneratorSpec::Kind::named:
      for (const auto& n : g.names) out.push_back({n, named_instance(n, g.epsilon)});
      break;
  }
  return out;
}

struct RatioRow {
  std::string instance_id;
  Flavor flavor = Flavor::dynamic_set;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  double alg_gain = 0.0;
  double alg_stderr = 0.0;
  double opt_gain = 0.0;
  double ratio = 0.0;
};

struct AlgorithmSummary {
  std::string algorithm;
  std::size_t instances = 0;
  double worst_ratio = 0.0;
  std::string worst_instance;
  std::optional<double> ceiling;
  bool violated = false;
};

struct RatioReport {
  std::vector<RatioRow> rows;
  std::vector<AlgorithmSummary> summary;

  bool violated() const {
    return std::any_of(summary.begin(), summary.end(), [](const AlgorithmSummary& s) { return s.violated; });
  }
};

/// OPT/ALG with the conventions 0/0 = 1 and x/0 = inf.
inline double competitive_ratio(double opt, double alg) {
  if (alg > 0.0) return opt / alg;
  return opt > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
}

/// One row per (instance, algorithm). Randomized algorithms are averaged
/// over `trials` runs whose seeds derive from the row seed.
inline RatioReport run_experiment(const ExperimentConfig& c, std::size_t jobs = 1) {
  const auto instances = generate_instances(c);
  const std::uint64_t base = c.seed.value_or(0);
  const std::size_t A = c.algorithms.size();
  jobs = std::max<std::size_t>(1, jobs);
  std::vector<std::vector<std::unique_ptr<OnlineAlgorithm>>> algs(jobs);
  for (auto& per_worker : algs) {
    for (const auto& s : c.algorithms) per_worker.push_back(make_algorithm(s.name, s.params));
  }
  std::vector<RatioRow> rows(instances.size() * A);
  parallel_for(instances.size(), jobs, [&](std::size_t w, std::size_t i) {
    const Instance& inst = instances[i].instance;
    const double opt = optimal_gain_matching(inst).gain;
    for (std::size_t a = 0; a < A; ++a) {
      OnlineAlgorithm& alg = *algs[w][a];
      RatioRow& row = rows[i * A + a];
      row.instance_id = instances[i].id;
      row.flavor = inst.flavor();
      row.algorithm = alg.name();
      row.seed = derive_seed(base, i);
      row.opt_gain = opt;
      if (alg.deterministic()) {
        row.alg_gain = simulate(inst, alg, row.seed).gain;
      } else {
        row.trials = c.trials;
        double s = 0.0, ss = 0.0;
        for (std::size_t t = 0; t < c.trials; ++t) {
          const double g = simulate(inst, alg, derive_seed(row.seed, t)).gain;
          s += g;
          ss += g * g;
        }
        const double N = static_cast<double>(c.trials);
        row.alg_gain = s / N;
        row.alg_stderr = c.trials > 1 ? std::sqrt(std::max(0.0, (ss - N * row.alg_gain * row.alg_gain) / (N - 1)) / N) : 0.0;
      }
      row.ratio = competitive_ratio(opt, row.alg_gain);
    }
  });

  RatioReport rep;
  rep.rows = std::move(rows);
  for (std::size_t a = 0; a < A; ++a) {
    AlgorithmSummary s;
    s.algorithm = algs[0][a]->name();
    s.ceiling = c.algorithms[a].ceiling;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const RatioRow& r = rep.rows[i * A + a];
      ++s.instances;
      if (s.worst_instance.empty() || r.ratio > s.worst_ratio) {
        s.worst_ratio = r.ratio;
        s.worst_instance = r.instance_id;
      }
    }
    s.violated = s.ceiling && !(s.worst_ratio <= *s.ceiling + c.tolerance);
    rep.summary.push_back(std::move(s));
  }
  return rep;
}

inline std::string report_csv(const RatioReport& rep) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "instance_id,flavor,algorithm,seed,trials,alg_gain,alg_stderr,opt_gain,ratio\n";
  for (const RatioRow& r : rep.rows) {
    out << r.instance_id << ',' << to_string(r.flavor) << ',' << r.algorithm << ',' << r.seed << ','
        << r.trials << ',' << r.alg_gain << ',' << r.alg_stderr << ',' << r.opt_gain << ',' << r.ratio << '\n';
  }
  return out.str();
}

inline Json report_json(const RatioReport& rep) {
  auto num = [](double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); };
  Json rows = Json::array();
  for (const RatioRow& r : rep.rows) {
    rows.push_back({{"instance_id", r.instance_id},
                    {"flavor", std::string(to_string(r.flavor))},
                    {"algorithm", r.algorithm},
                    {"seed", r.seed},
                    {"trials", r.trials},
                    {"alg_gain", r.alg_gain},
                    {"alg_stderr", r.alg_stderr},
                    {"opt_gain", r.opt_gain},
                    {"ratio", num(r.ratio)}});
  }
  Json summary = Json::array();
  for (const AlgorithmSummary& s : rep.summary) {
    summary.push_back({{"algorithm", s.algorithm},
                       {"instances", s.instances},
                       {"worst_ratio", num(s.worst_ratio)},
                       {"worst_instance", s.worst_instance},
                       {"ceiling", s.ceiling ? Json(*s.ceiling) : Json(nullptr)},
                       {"violated", s.violated}});
  }
  return {{"rows", rows}, {"summary", summary}, {"violated", rep.violated()}};
}

}  // namespace whacamole
