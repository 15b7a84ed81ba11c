#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "whacamole/whacamole.hpp"

using namespace whacamole;

namespace {

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kError = 2;

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("WHACAMOLE_SEED");
  if (!s || !*s) return std::nullopt;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw BadConfig("WHACAMOLE_SEED is not an integer");
  }
}

std::optional<std::uint64_t> pick_seed(const std::optional<std::uint64_t>& flag) {
  return flag ? flag : env_seed();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") std::cout << text;
  else write_text_file(out, text);
}

struct AlgFlags {
  std::optional<double> alpha, beta, xi;
  bool loose = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "FIFOQueEH alpha");
    cmd->add_option("--beta", beta, "DecQueEFH / FIFOQueEH beta");
    cmd->add_option("--xi", xi, "DecQueEFH xi");
    cmd->add_flag("--allow-unsorted", loose, "MarkAndPick: do not require a nondecreasing queue");
  }
  AlgorithmParams params() const {
    AlgorithmParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.xi = xi;
    if (loose) p.require_nondecreasing = false;
    return p;
  }
};

int cmd_run(const std::string& config, const std::string& out_dir, std::optional<std::uint64_t> seed,
            std::size_t jobs) {
  const ExperimentConfig cfg = experiment_config_from_json(read_json_file(config), pick_seed(seed));
  const RatioReport rep = run_experiment(cfg, jobs);
  std::filesystem::create_directories(out_dir);
  write_text_file((std::filesystem::path(out_dir) / "report.csv").string(), report_csv(rep));
  Json j = report_json(rep);
  j["seed"] = cfg.seed ? Json(*cfg.seed) : Json(nullptr);
  j["config"] = config;
  write_text_file((std::filesystem::path(out_dir) / "report.json").string(), j.dump(2) + "\n");
  for (const auto& s : rep.summary) {
    std::cout << s.algorithm << ": " << s.instances << " instances, worst ratio " << s.worst_ratio << " ("
              << s.worst_instance << ")";
    if (s.ceiling) std::cout << ", ceiling " << *s.ceiling << (s.violated ? " VIOLATED" : " ok");
    std::cout << "\n";
  }
  return rep.violated() ? kViolation : kPass;
}

int cmd_game(const std::string& adversary, const std::string& algorithm, const AlgFlags& af, GameParams p,
             std::optional<std::uint64_t> seed, const std::string& out) {
  p.seed = pick_seed(seed).value_or(0);
  auto alg = make_algorithm(algorithm, af.params());
  const GameResult r = run_game(adversary, *alg, p);
  std::cout << r.game << " vs " << r.algorithm << ": alg " << r.alg_gain << ", adversary " << r.adv_gain
            << ", ratio " << r.ratio;
  if (r.trials > 1) std::cout << " +- " << r.ratio_stderr << " (" << r.trials << " trials)";
  if (!r.note.empty()) std::cout << " [" << r.note << "]";
  std::cout << "\n";
  if (!out.empty()) write_text_file(out, game_result_to_json(r).dump(2) + "\n");
  return kPass;
}

int cmd_analyze(const std::string& what, std::size_t amax, std::size_t n, const std::string& format,
                const std::string& out) {
  const bool csv = format == "csv";
  if (format != "json" && format != "csv") throw BadConfig("format must be json or csv");
  std::ostringstream o;
  o << std::setprecision(17);
  if (what == "e_table") {
    const ETable t = e_table(amax);
    Json rows = Json::array();
    if (csv) o << "a,p,value,approx,lower,upper\n";
    for (std::size_t a = 1; a <= amax; ++a) {
      for (std::size_t p = 0; p <= a; ++p) {
        const Rational& v = t.at(a, p);
        const double lower = static_cast<double>(e_lower_bound(a, p));
        const double upper = e_upper_bound_rounded_down(a, p);
        if (csv) o << a << ',' << p << ',' << v << ',' << static_cast<double>(v) << ',' << lower << ',' << upper << '\n';
        else rows.push_back({{"a", a}, {"p", p}, {"value", v.str()}, {"approx", static_cast<double>(v)},
                             {"lower", lower}, {"upper", upper}});
      }
    }
    if (!csv) o << Json{{"a_max", amax}, {"bounds_hold", check_e_bounds(t)}, {"entries", rows}}.dump(2) << "\n";
  } else if (what == "lb_sequence") {
    const LBSequence s = solve_lb_sequence(n);
    if (csv) {
      o << "index,weight\n";
      o << "0," << s.z[0] << '\n';
      for (std::size_t i : s.indices()) o << i << ',' << s.z[i] << '\n';
    } else {
      Json z = Json::object();
      for (std::size_t i : s.indices()) z[std::to_string(i)] = s.z[i];
      o << Json{{"n", s.n}, {"R", s.R}, {"z", z}, {"ordered", s.ordered}, {"max_residual", s.max_residual},
                {"inequalities_hold", check_lb_inequalities(s)}}.dump(2)
        << "\n";
    }
  } else if (what == "rand_queue_bound") {
    const auto b = randomized_queue_bound(n);
    if (csv) {
      o << "k,v\n";
      for (std::size_t k = 0; k < b.v.size(); ++k) o << k << ',' << b.v[k] << '\n';
    } else {
      o << Json{{"n", n}, {"a", b.a}, {"M", b.M}, {"R", b.R}, {"v", b.v}}.dump(2) << "\n";
    }
  } else if (what == "r_curve") {
    // R of both lower-bound constructions as n grows
    o << "n,lb_sequence_R,rand_queue_R\n";
    for (std::size_t k = 2; k <= std::max<std::size_t>(n, 2); ++k) {
      o << k << ',';
      if (k <= 12) o << solve_lb_sequence(k).R;
      o << ',' << randomized_queue_bound(k).R << '\n';
    }
  } else {
    throw UnknownName("analysis '" + what + "' (e_table, lb_sequence, rand_queue_bound, r_curve)");
  }
  emit(o.str(), out);
  return kPass;
}

int cmd_verify(const std::vector<std::size_t>& only, VerifyOptions opts, std::optional<std::uint64_t> seed) {
  if (auto s = pick_seed(seed)) opts.seed = *s;
  const auto res = verify_all(opts, std::cout, only);
  std::size_t failed = 0;
  for (const auto& r : res) failed += r.pass ? 0 : 1;
  std::cout << (res.size() - failed) << "/" << res.size() << " criteria passed\n";
  return failed ? kViolation : kPass;
}

int cmd_gen(const std::string& flavor, std::size_t n, std::size_t steps, std::size_t count, double lo, double hi,
            bool nondecreasing, const std::string& named, double eps, std::optional<std::uint64_t> seed,
            const std::string& out) {
  if (!named.empty()) {
    emit(instance_to_json(named_instance(named, eps)).dump(2) + "\n", out);
    return kPass;
  }
  const auto s = pick_seed(seed);
  if (!s) throw BadConfig("random generation needs --seed or WHACAMOLE_SEED");
  const Flavor f = parse_flavor(flavor);
  const WeightDist dist = WeightDist::uniform(lo, hi);
  Json j;
  if (count == 1) {
    j = instance_to_json(random_instance(f, n, steps, dist, *s, nondecreasing));
  } else {
    j = Json::array();
    for (std::size_t i = 0; i < count; ++i) {
      j.push_back(instance_to_json(random_instance(f, n, steps, dist, derive_seed(*s, i), nondecreasing)));
    }
  }
  emit(j.dump(2) + "\n", out);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"whacamole: online collection of weighted items from dynamic sets and queues"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;

  auto* run = app.add_subcommand("run", "run an experiment config and write report.csv / report.json");
  std::string config, out_dir = ".";
  run->add_option("--config", config, "experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed, "default seed when the config has none");
  run->add_option("--jobs", jobs, "worker threads");

  auto* game = app.add_subcommand("game", "play an adversary game against an algorithm");
  std::string adversary, algorithm, game_out;
  GameParams gp;
  AlgFlags af;
  game->add_option("--adversary", adversary, "two_item_set, phi_queue, decremental_queue, memoryless_queue, "
                                              "adaptive_set, yao_uniform")->required();
  game->add_option("--algorithm", algorithm, "algorithm name")->required();
  game->add_option("--n", gp.n, "size parameter");
  game->add_option("--T", gp.T, "rounds (memoryless game)");
  game->add_option("--trials", gp.trials, "Monte Carlo trials");
  game->add_option("--seed", seed, "seed");
  game->add_option("--jobs", gp.jobs, "worker threads");
  game->add_option("--out", game_out, "write the result as JSON");
  af.attach(game);

  auto* analyze = app.add_subcommand("analyze", "tables and constants as JSON or CSV");
  std::string what, format = "json", analyze_out;
  std::size_t amax = 10, an = 3;
  analyze->add_option("--what", what, "e_table, lb_sequence, rand_queue_bound, r_curve")->required();
  analyze->add_option("--amax", amax, "largest a for e_table");
  analyze->add_option("--n", an, "n for lb_sequence / rand_queue_bound / r_curve");
  analyze->add_option("--format", format, "json or csv");
  analyze->add_option("--out", analyze_out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  std::vector<std::size_t> only;
  VerifyOptions vopts;
  std::optional<double> sabotage_beta;
  verify->add_option("--only", only, "criterion ids");
  verify->add_option("--seed", seed, "seed");
  verify->add_option("--jobs", vopts.jobs, "worker threads");
  verify->add_option("--random-count", vopts.random_count, "random instances per family");
  verify->add_option("--yao-trials", vopts.yao_trials, "trials for the uniform process");
  verify->add_option("--decque-beta", sabotage_beta, "replace DecQueEFH's beta");
  verify->add_flag("--greedy-oracle", vopts.greedy_matching_oracle, "replace the matching optimum by greedy");

  auto* gen = app.add_subcommand("gen", "generate instances as JSON");
  std::string flavor = "dynamic_set", named, gen_out;
  std::size_t gn = 5, gsteps = 5, gcount = 1;
  double lo = 0.1, hi = 1.0, eps = 1e-3;
  bool nondecreasing = false;
  gen->add_option("--flavor", flavor, "instance flavor");
  gen->add_option("--n", gn, "items");
  gen->add_option("--steps", gsteps, "steps");
  gen->add_option("--count", gcount, "number of instances");
  gen->add_option("--lo", lo, "smallest weight");
  gen->add_option("--hi", hi, "largest weight");
  gen->add_flag("--nondecreasing", nondecreasing, "queue order follows weight order");
  gen->add_option("--named", named, "fifo_tight_1, fifo_tight_2, set_two_item, queue_phi");
  gen->add_option("--epsilon", eps, "epsilon for named instances");
  gen->add_option("--seed", seed, "seed");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (*run) return cmd_run(config, out_dir, seed, jobs);
    if (*game) return cmd_game(adversary, algorithm, af, gp, seed, game_out);
    if (*analyze) return cmd_analyze(what, amax, an, format, analyze_out);
    if (*verify) {
      vopts.decque_beta = sabotage_beta;
      return cmd_verify(only, vopts, seed);
    }
    if (*gen) return cmd_gen(flavor, gn, gsteps, gcount, lo, hi, nondecreasing, named, eps, seed, gen_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
