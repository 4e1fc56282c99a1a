#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "colearn/dataset.hpp"
#include "colearn/errors.hpp"
#include "colearn/hard_instances.hpp"
#include "colearn/harness.hpp"
#include "colearn/instance_io.hpp"
#include "colearn/mw.hpp"
#include "colearn/text.hpp"

using namespace colearn;

namespace {

struct Options {
  std::string algo = "mweights";
  std::string epsilon = "0.1";
  double delta = 0.9;
  std::string delta_reading = "literal";
  std::string profile = "tuned";
  double theory_constant = 1.0;
  std::string log_base = "natural";
  std::string test_mode = "sampled";
  std::size_t rounds = 0;
  std::size_t runs = 100;
  std::uint64_t seed = 0;
  std::string out;
  std::string diagnostics;

  std::string target_rate = "0.9";
  double ladder_start = 1.0;
  double ladder_factor = 1.25;
  double ladder_max = 1e7;
  std::size_t threads = 1;
  std::size_t holdout = kDefaultHoldout;

  std::string instance_file;
  std::string instance_id;
  std::string generator = "psi";
  std::size_t k = 8;
  std::size_t d = 2;
  std::size_t outlier_points = 0;
  std::size_t common_points = 0;
  double gen_epsilon = 0.0;
  std::uint64_t instance_seed = 0;
  bool fixed_instance = false;
  double capacity = 0.0;

  std::string dataset;
  std::string label_col = "label";
  std::string partition = "random";
  std::string class_a;
  std::string class_b;
  std::size_t feature = 0;
  std::string threshold;
  std::size_t feature_x = 0;
  std::size_t feature_y = 1;
  std::size_t grid_rows = 0;
  std::size_t max_depth = 12;
  std::size_t min_leaf = 1;
};

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) out.push_back(parse_real(tok, "--epsilon"));
  detail::require(!out.empty(), "--epsilon: empty grid");
  return out;
}

std::vector<Algorithm> parse_algorithms(const std::string& s) {
  std::vector<Algorithm> out;
  for (const auto& tok : split(s, ',')) out.push_back(parse_algorithm(trim(tok)));
  return out;
}

double effective_delta(const Options& o) {
  if (o.delta_reading == "literal") return o.delta;
  if (o.delta_reading == "confidence") return 1.0 - o.delta;
  throw PreconditionError("--delta-reading: expected literal|confidence");
}

SampleSizeProfile make_profile(const Options& o) {
  const LogBase base = o.log_base == "two" ? LogBase::two : LogBase::natural;
  if (o.log_base != "two" && o.log_base != "natural") throw PreconditionError("--log-base: expected natural|two");
  SampleSizeProfile p = parse_profile_mode(o.profile) == ProfileMode::tuned ? SampleSizeProfile::tuned(base)
                                                                             : SampleSizeProfile::theory(o.theory_constant);
  p.tuned_log = base;
  return p;
}

TreeParams tree_params(const Options& o) { return TreeParams{o.max_depth, o.min_leaf}; }

PartitionSpec partition_spec(const Options& o) {
  PartitionSpec spec;
  spec.strategy = parse_partition_strategy(o.partition);
  spec.k = o.k;
  if (!o.class_a.empty()) spec.class_a = o.class_a;
  if (!o.class_b.empty()) spec.class_b = o.class_b;
  spec.feature = o.feature;
  if (!o.threshold.empty()) spec.threshold = parse_real(o.threshold, "--threshold");
  spec.feature_x = o.feature_x;
  spec.feature_y = o.feature_y;
  if (o.grid_rows > 0) spec.grid_rows = o.grid_rows;
  return spec;
}

HardInstance make_hard(const Options& o, std::uint64_t seed, double epsilon) {
  const double eps = o.gen_epsilon > 0.0 ? o.gen_epsilon : epsilon;
  if (o.generator == "class-dup") {
    const std::size_t outlier = o.outlier_points ? o.outlier_points : o.d;
    HardInstance h = gen_class_dup(o.k, outlier, o.common_points ? o.common_points : outlier, seed);
    h.epsilon = eps;
    return h;
  }
  return generate(o.generator, o.generator == "phi" ? 1 : o.k, o.d, eps, seed);
}

struct Source {
  InstanceFactory factory;
  std::string id;
};

Source make_source(const Options& o) {
  Source src;
  if (!o.instance_file.empty()) {
    auto loaded = std::make_shared<const LoadedInstance>(load_instance(o.instance_file, tree_params(o)));
    src.factory = [loaded](std::uint64_t, double) { return loaded->instance; };
    src.id = loaded->header.generator;
  } else if (!o.dataset.empty()) {
    auto ds = std::make_shared<const Dataset>(load_csv(o.dataset, o.label_col));
    const PartitionSpec spec = partition_spec(o);
    const double capacity = o.capacity > 0.0 ? o.capacity : 1.0;
    auto inst = std::make_shared<const Instance>(dataset_instance(*ds, spec, o.seed, tree_params(o), capacity));
    src.factory = [inst](std::uint64_t, double) { return *inst; };
    std::string stem = o.dataset.substr(o.dataset.find_last_of('/') + 1);
    stem = stem.substr(0, stem.find('.'));
    src.id = stem + "-" + std::string(to_string(spec.strategy)) + "-k" + std::to_string(spec.k);
  } else {
    const Options copy = o;
    src.factory = [copy](std::uint64_t seed, double eps) {
      return make_hard(copy, copy.fixed_instance ? copy.instance_seed : seed, eps).instance();
    };
    src.id = o.generator + "-k" + std::to_string(o.generator == "phi" ? 1 : o.k) + "-d" + std::to_string(o.d);
  }
  if (!o.instance_id.empty()) src.id = o.instance_id;
  return src;
}

BudgetSearchSpec search_spec(const Options& o) {
  BudgetSearchSpec spec;
  spec.epsilons = parse_grid(o.epsilon);
  spec.runs = o.runs;
  spec.target = Rate::parse(o.target_rate);
  spec.ladder = BudgetLadder{o.ladder_start, o.ladder_factor, o.ladder_max};
  spec.delta = effective_delta(o);
  spec.profile = make_profile(o);
  spec.test_mode = parse_test_mode(o.test_mode);
  if (o.rounds > 0) spec.rounds_override = o.rounds;
  spec.seed = o.seed;
  spec.threads = o.threads;
  spec.holdout = o.holdout;
  return spec;
}

void write_rows(const Options& o, const std::vector<ResultRow>& rows) {
  if (o.out.empty()) write_results(std::cout, rows);
  else emit_results(rows, o.out);
}

int cmd_run(const Options& o) {
  const Source src = make_source(o);
  const auto algorithms = parse_algorithms(o.algo);
  detail::require(algorithms.size() == 1, "run: give exactly one --algo");
  const double eps = parse_grid(o.epsilon).front();
  const Instance inst = src.factory(o.fixed_instance ? o.instance_seed : o.seed, eps);

  RunConfig config;
  config.epsilon = eps;
  config.delta = effective_delta(o);
  config.d = o.capacity > 0.0 ? o.capacity : inst.capacity;
  config.profile = make_profile(o);
  if (o.rounds > 0) config.rounds_override = o.rounds;
  config.test_mode = parse_test_mode(o.test_mode);
  config.algorithm = algorithms.front();
  config.seed = o.seed;
  const RunResult r = run_algorithm(inst, config);
  if (!o.diagnostics.empty()) emit_diagnostics(r.diagnostics, o.diagnostics);

  const auto errors = r.player_errors ? *r.player_errors
                                      : player_errors(inst, r.hypothesis, derive_seed(o.seed, {0x686f6c64}), o.holdout);
  const bool ok = config.algorithm == Algorithm::single ? errors.front() <= eps : evaluate_success(errors, eps);
  ResultRow row;
  row.instance = src.id;
  row.algorithm = std::string(to_string(config.algorithm));
  row.epsilon = eps;
  row.budget = config.d;
  row.learning_samples = static_cast<double>(r.ledger.total(Phase::learning));
  row.test_samples = static_cast<double>(r.ledger.total(Phase::test));
  row.total_samples = *row.learning_samples + *row.test_samples;
  row.success_rate = ok ? 1.0 : 0.0;
  row.balance_ratio = balance_ratio(r.ledger);
  row.seed_base = o.seed;
  write_rows(o, {row});
  return 0;
}

int cmd_budget_search(const Options& o) {
  const Source src = make_source(o);
  const BudgetSearchSpec spec = search_spec(o);
  std::vector<ResultRow> rows;
  for (const Algorithm a : parse_algorithms(o.algo)) {
    auto part = budget_search(src.factory, src.id, a, spec);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  write_rows(o, rows);
  return 0;
}

int cmd_gen_instance(const Options& o) {
  const HardInstance h = make_hard(o, o.seed, parse_grid(o.epsilon).front());
  if (o.out.empty()) write_instance(std::cout, h);
  else save_instance(o.out, h);
  return 0;
}

int cmd_partition(const Options& o) {
  detail::require(!o.dataset.empty(), "partition: --dataset is required");
  const Dataset ds = load_csv(o.dataset, o.label_col);
  const PartitionSpec spec = partition_spec(o);
  const auto parts = partition_rows(ds, spec, o.seed);
  std::vector<PointMassDistribution> players;
  for (const auto& rows : parts) {
    const std::vector<double> masses(rows.size(), 1.0 / static_cast<double>(rows.size()));
    if (players.size() >= 2 && rows == parts[1]) players.push_back(players[1]);
    else players.emplace_back(ds.table, rows, masses);
  }
  const InstanceHeader header{parts.size(), o.capacity > 0.0 ? o.capacity : 1.0, parse_grid(o.epsilon).front(),
                              std::string(to_string(spec.strategy)), o.seed};
  if (o.out.empty()) write_instance(std::cout, header, players);
  else save_instance(o.out, header, players);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Collaborative PAC learning with multiplicative weights"};
  app.set_config("--config", "", "flat key = value file; command-line flags win");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--algo", o.algo, "naive|basicmw|mweights|single (comma list for budget-search)");
  app.add_option("--epsilon", o.epsilon, "epsilon or comma-separated grid");
  app.add_option("--delta", o.delta, "failure probability (default 0.9)");
  app.add_option("--delta-reading", o.delta_reading, "literal: use --delta as is; confidence: use 1 - delta");
  app.add_option("--profile", o.profile, "theory|tuned");
  app.add_option("--theory-constant", o.theory_constant, "constant of the theory sample size");
  app.add_option("--log-base", o.log_base, "natural|two (tuned formulas)");
  app.add_option("--test-mode", o.test_mode, "sampled|exact");
  app.add_option("--rounds", o.rounds, "override the round count");
  app.add_option("--runs", o.runs, "trials per ladder rung");
  app.add_option("--seed", o.seed, "base seed");
  app.add_option("--out", o.out, "output file (default stdout)");
  app.add_option("--diagnostics", o.diagnostics, "per-round diagnostics CSV (run)");
  app.add_option("--target-rate", o.target_rate, "required success fraction");
  app.add_option("--ladder-start", o.ladder_start, "first capacity rung");
  app.add_option("--ladder-factor", o.ladder_factor, "rung growth factor");
  app.add_option("--ladder-max", o.ladder_max, "last admissible rung");
  app.add_option("--threads", o.threads, "concurrent trials");
  app.add_option("--holdout", o.holdout, "holdout draws per player for dataset-backed errors");
  app.add_option("--instance", o.instance_file, "instance file");
  app.add_option("--instance-id", o.instance_id, "id written to results");
  app.add_option("--generator", o.generator, "phi|big-phi|psi|class-dup");
  app.add_option("--k", o.k, "players");
  app.add_option("--d", o.d, "generator size parameter");
  app.add_option("--outlier-points", o.outlier_points, "class-dup: support of player 0");
  app.add_option("--common-points", o.common_points, "class-dup: support of the copied players");
  app.add_option("--gen-epsilon", o.gen_epsilon, "generator epsilon (default: the searched epsilon)");
  app.add_flag("--fixed-instance", o.fixed_instance, "use --instance-seed for every trial's instance");
  app.add_option("--instance-seed", o.instance_seed, "generator seed with --fixed-instance");
  app.add_option("--capacity", o.capacity, "capacity knob d for run/partition");
  app.add_option("--dataset", o.dataset, "CSV dataset");
  app.add_option("--label-col", o.label_col, "label column name");
  app.add_option("--partition", o.partition, "random|class-dup|feature-threshold|feature-grid");
  app.add_option("--class-a", o.class_a, "class-dup: label of player 0");
  app.add_option("--class-b", o.class_b, "class-dup: label of the copied part");
  app.add_option("--feature", o.feature, "feature-threshold: feature index");
  app.add_option("--threshold", o.threshold, "feature-threshold: cut (default median)");
  app.add_option("--feature-x", o.feature_x, "feature-grid: first feature");
  app.add_option("--feature-y", o.feature_y, "feature-grid: second feature");
  app.add_option("--grid-rows", o.grid_rows, "feature-grid: cells along the first feature");
  app.add_option("--max-depth", o.max_depth, "tree depth limit");
  app.add_option("--min-leaf", o.min_leaf, "tree leaf size");

  auto* run = app.add_subcommand("run", "one algorithm, one instance, one epsilon; prints a result row");
  auto* search = app.add_subcommand("budget-search", "smallest ladder rung meeting the success rate, per epsilon");
  auto* gen = app.add_subcommand("gen-instance", "write a hard instance file");
  auto* part = app.add_subcommand("partition", "partition a dataset into an instance file");

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(o);
    if (search->parsed()) return cmd_budget_search(o);
    if (gen->parsed()) return cmd_gen_instance(o);
    if (part->parsed()) return cmd_partition(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
