#include "colearn/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "colearn/errors.hpp"
#include "colearn/rng.hpp"
#include "colearn/text.hpp"

namespace colearn {
namespace {

constexpr std::uint64_t kAlgorithmTag = 0x616c67;
constexpr std::uint64_t kHoldoutTag = 0x686f6c64;

}  // namespace

std::vector<double> player_errors(const Instance& instance, const Hypothesis& g, std::uint64_t holdout_seed,
                                  std::size_t holdout) {
  if (instance.has_exact_errors()) return instance.exact_errors(g);
  detail::require(holdout > 0, "player_errors: holdout size must be positive");
  std::vector<double> errs(instance.k());
  for (std::size_t i = 0; i < instance.k(); ++i) {
    const Sample s = instance.players[i].draw(holdout, DrawContext{holdout_seed, 0, Phase::holdout, nullptr});
    errs[i] = empirical_error(g, s);
  }
  return errs;
}

bool evaluate_success(std::span<const double> errors, double epsilon) {
  for (double e : errors)
    if (!(e <= epsilon)) return false;
  return true;
}

bool evaluate_success(const Instance& instance, const Hypothesis& g, double epsilon, std::uint64_t holdout_seed,
                      std::size_t holdout, std::optional<std::size_t> only_player) {
  if (only_player) {
    detail::require(*only_player < instance.k(), "evaluate_success: player out of range");
    Instance one;
    one.players.push_back(instance.players[*only_player].reassigned(0));
    one.learner = instance.learner;
    return evaluate_success(player_errors(one, g, holdout_seed, holdout), epsilon);
  }
  return evaluate_success(player_errors(instance, g, holdout_seed, holdout), epsilon);
}

Rate Rate::parse(std::string_view s) {
  const auto t = trim(s);
  Rate r;
  const auto slash = t.find('/');
  if (slash != std::string_view::npos) {
    r.num = parse_u64(t.substr(0, slash), "target rate numerator");
    r.den = parse_u64(t.substr(slash + 1), "target rate denominator");
  } else {
    const auto dot = t.find('.');
    const std::string_view whole = t.substr(0, dot);
    const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : t.substr(dot + 1);
    detail::require(!(whole.empty() && frac.empty()), "target rate: empty value");
    detail::require(frac.size() <= 18, "target rate: too many decimals");
    r.den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) r.den *= 10;
    const std::uint64_t w = whole.empty() ? 0 : parse_u64(whole, "target rate");
    const std::uint64_t f = frac.empty() ? 0 : parse_u64(frac, "target rate");
    r.num = w * r.den + f;
  }
  detail::require(r.den > 0 && r.num > 0 && r.num <= r.den, "target rate must lie in (0, 1]");
  const auto g = std::gcd(r.num, r.den);
  r.num /= g;
  r.den /= g;
  return r;
}

bool Rate::met(std::uint64_t successes, std::uint64_t runs) const {
  return static_cast<unsigned __int128>(successes) * den >= static_cast<unsigned __int128>(num) * runs;
}

std::uint64_t Rate::needed(std::uint64_t runs) const {
  const auto p = static_cast<unsigned __int128>(num) * runs;
  return static_cast<std::uint64_t>((p + den - 1) / den);
}

std::vector<double> BudgetLadder::rungs() const {
  detail::require(start > 0.0, "budget ladder: start must be positive");
  detail::require(factor > 1.0, "budget ladder: factor must exceed 1");
  detail::require(max >= start, "budget ladder: max below start");
  std::vector<double> out;
  for (int r = 0;; ++r) {
    const double v = static_cast<double>(ceil_count(start * std::pow(factor, r)));
    if (v > max) break;
    if (out.empty() || v > out.back()) out.push_back(v);
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed_base, std::size_t run) { return derive_seed(seed_base, {run}); }

TrialOutcome run_trial(const Instance& instance, Algorithm algorithm, double epsilon, double d,
                       const BudgetSearchSpec& spec, std::uint64_t seed) {
  RunConfig config;
  config.epsilon = epsilon;
  config.delta = spec.delta;
  config.d = d;
  config.profile = spec.profile;
  config.rounds_override = spec.rounds_override;
  config.test_mode = spec.test_mode;
  config.algorithm = algorithm;
  config.seed = derive_seed(seed, {kAlgorithmTag});
  config.exact_diagnostics = false;
  if (algorithm == Algorithm::naive) config.budget = sample_size(epsilon, spec.delta, d, spec.profile);
  const RunResult r = run_algorithm(instance, config);

  TrialOutcome out;
  const std::uint64_t holdout_seed = derive_seed(seed, {kHoldoutTag});
  if (algorithm == Algorithm::single) {
    out.success = evaluate_success(instance, r.hypothesis, epsilon, holdout_seed, spec.holdout, 0);
  } else if (r.player_errors) {
    out.success = evaluate_success(*r.player_errors, epsilon);
  } else {
    out.success = evaluate_success(instance, r.hypothesis, epsilon, holdout_seed, spec.holdout);
  }
  out.learning_samples = r.ledger.total(Phase::learning);
  out.test_samples = r.ledger.total(Phase::test);
  out.balance_ratio = balance_ratio(r.ledger);
  return out;
}

ResultRow budget_search_one(const InstanceFactory& make, const std::string& instance_id, Algorithm algorithm,
                            double epsilon, const BudgetSearchSpec& spec) {
  detail::require(spec.runs >= 1, "budget_search: runs must be at least 1");
  detail::require(epsilon > 0.0 && epsilon < 1.0 + 1e-15, "budget_search: epsilon must lie in (0, 1]");
  const std::size_t threads = std::max<std::size_t>(1, spec.threads);
  const std::uint64_t needed = spec.target.needed(spec.runs);
  const std::uint64_t allowed_failures = spec.runs - needed;

  ResultRow row;
  row.instance = instance_id;
  row.algorithm = std::string(to_string(algorithm));
  row.epsilon = epsilon;
  row.seed_base = spec.seed;

  std::vector<std::optional<Instance>> instances(spec.runs);
  auto instance_for = [&](std::size_t run) -> const Instance& {
    if (!instances[run]) instances[run] = make(trial_seed(spec.seed, run), epsilon);
    return *instances[run];
  };

  for (const double d : spec.ladder.rungs()) {
    std::vector<TrialOutcome> outcomes(spec.runs);
    std::uint64_t failures = 0;
    std::size_t done = 0;
    while (done < spec.runs && failures <= allowed_failures) {
      const std::size_t end = std::min(spec.runs, done + threads);
      for (std::size_t run = done; run < end; ++run) instance_for(run);
      auto work = [&](std::size_t run) {
        outcomes[run] = run_trial(*instances[run], algorithm, epsilon, d, spec, trial_seed(spec.seed, run));
      };
      if (end - done == 1) {
        work(done);
      } else {
        std::vector<std::exception_ptr> errors(end - done);
        std::vector<std::thread> pool;
        for (std::size_t run = done; run < end; ++run)
          pool.emplace_back([&, run] {
            try {
              work(run);
            } catch (...) {
              errors[run - done] = std::current_exception();
            }
          });
        for (auto& t : pool) t.join();
        for (auto& e : errors)
          if (e) std::rethrow_exception(e);
      }
      for (std::size_t run = done; run < end; ++run) failures += outcomes[run].success ? 0 : 1;
      done = end;
    }
    if (done < spec.runs || !spec.target.met(spec.runs - failures, spec.runs)) continue;

    double learning = 0.0, test = 0.0, balance = 0.0;
    for (const auto& o : outcomes) {
      learning += static_cast<double>(o.learning_samples);
      test += static_cast<double>(o.test_samples);
      balance += o.balance_ratio;
    }
    const auto n = static_cast<double>(spec.runs);
    row.budget = d;
    row.learning_samples = learning / n;
    row.test_samples = test / n;
    row.total_samples = *row.learning_samples + *row.test_samples;
    row.success_rate = static_cast<double>(spec.runs - failures) / n;
    row.balance_ratio = balance / n;
    return row;
  }
  return row;
}

std::vector<ResultRow> budget_search(const InstanceFactory& make, const std::string& instance_id,
                                     Algorithm algorithm, const BudgetSearchSpec& spec) {
  detail::require(!spec.epsilons.empty(), "budget_search: empty epsilon grid");
  std::vector<ResultRow> rows;
  for (double eps : spec.epsilons) rows.push_back(budget_search_one(make, instance_id, algorithm, eps, spec));
  return rows;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_real(*v) : "NA"; }

std::optional<double> parse_opt(const std::string& s, const std::string& what) {
  if (s == "NA") return std::nullopt;
  return parse_real(s, what);
}

void check_field(const std::string& s, const char* what) {
  detail::require(s.find_first_of(",\n\r") == std::string::npos,
                  std::string("result ") + what + " must not contain commas or newlines");
}

}  // namespace

void write_results(std::ostream& out, std::span<const ResultRow> rows) {
  for (std::size_t c = 0; c < kResultColumns.size(); ++c) out << (c ? "," : "") << kResultColumns[c];
  out << '\n';
  for (const auto& r : rows) {
    check_field(r.instance, "instance id");
    check_field(r.algorithm, "algorithm");
    out << r.instance << ',' << r.algorithm << ',' << format_real(r.epsilon) << ','
        << (r.budget ? format_real(*r.budget) : std::string(kNotFound)) << ',' << opt(r.total_samples) << ','
        << opt(r.learning_samples) << ',' << opt(r.test_samples) << ',' << opt(r.success_rate) << ','
        << opt(r.balance_ratio) << ',' << r.seed_base << '\n';
  }
}

void emit_results(std::span<const ResultRow> rows, const std::string& path) {
  detail::require(!rows.empty(), "emit_results: no rows");
  std::ostringstream buf;
  write_results(buf, rows);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << buf.str();
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::vector<ResultRow> read_results(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw PreconditionError("results: empty input");
  const auto header = split(trim(line), ',');
  detail::require(header.size() == kResultColumns.size(), "results: wrong column count in header");
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] != kResultColumns[c])
      throw PreconditionError("results: expected column '" + std::string(kResultColumns[c]) + "', found '" +
                              header[c] + "'");
  std::vector<ResultRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    const std::string where = "results line " + std::to_string(lineno);
    detail::require(f.size() == kResultColumns.size(), where + ": wrong field count");
    ResultRow r;
    r.instance = f[0];
    r.algorithm = f[1];
    r.epsilon = parse_real(f[2], where + " epsilon");
    if (f[3] != kNotFound) r.budget = parse_real(f[3], where + " budget");
    r.total_samples = parse_opt(f[4], where + " total_samples");
    r.learning_samples = parse_opt(f[5], where + " learning_samples");
    r.test_samples = parse_opt(f[6], where + " test_samples");
    r.success_rate = parse_opt(f[7], where + " success_rate");
    r.balance_ratio = parse_opt(f[8], where + " balance_ratio");
    r.seed_base = parse_u64(f[9], where + " seed_base");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ResultRow> load_results(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open results '" + path + "'");
  return read_results(in);
}

void write_diagnostics(std::ostream& out, std::span<const RoundDiagnostics> diagnostics) {
  out << "t,W,Q,chi,psi_count\n";
  for (const auto& d : diagnostics) {
    const bool psi_known = !d.psi.empty() && std::all_of(d.psi.begin(), d.psi.end(), [](const auto& v) { return v.has_value(); });
    out << d.t << ',' << format_real(d.weight) << ',' << format_real(d.q) << ','
        << (d.chi ? (*d.chi ? "1" : "0") : "NA") << ',' << (psi_known ? std::to_string(d.psi_count()) : "NA") << '\n';
  }
}

void emit_diagnostics(std::span<const RoundDiagnostics> diagnostics, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_diagnostics(out, diagnostics);
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace colearn
