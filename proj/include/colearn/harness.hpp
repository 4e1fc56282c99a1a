#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "colearn/diagnostics.hpp"
#include "colearn/instance.hpp"
#include "colearn/mw.hpp"

namespace colearn {

inline constexpr std::size_t kDefaultHoldout = 10000;

/// err_{D_i}(g) per player: exact for point-mass players, otherwise the
/// error on `holdout` fresh draws per player (never charged).
std::vector<double> player_errors(const Instance& instance, const Hypothesis& g, std::uint64_t holdout_seed,
                                  std::size_t holdout = kDefaultHoldout);

/// max_i err_{D_i}(g) <= epsilon, over all players or just `only_player`.
bool evaluate_success(const Instance& instance, const Hypothesis& g, double epsilon, std::uint64_t holdout_seed,
                      std::size_t holdout = kDefaultHoldout, std::optional<std::size_t> only_player = std::nullopt);
bool evaluate_success(std::span<const double> errors, double epsilon);

/// Exact rational success threshold, parsed from a decimal such as "0.9".
struct Rate {
  std::uint64_t num = 9;
  std::uint64_t den = 10;

  static Rate parse(std::string_view s);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  /// successes / runs >= num / den, compared in integers.
  bool met(std::uint64_t successes, std::uint64_t runs) const;
  /// Fewest successes out of `runs` that meet the rate.
  std::uint64_t needed(std::uint64_t runs) const;
};

/// Capacity-parameter ladder: the distinct values ceil(start * factor^r)
/// that do not exceed max.
struct BudgetLadder {
  double start = 1.0;
  double factor = 1.25;
  double max = 1e7;

  std::vector<double> rungs() const;
};

struct BudgetSearchSpec {
  std::vector<double> epsilons{0.1};
  std::size_t runs = 100;
  Rate target;
  BudgetLadder ladder;
  double delta = 0.9;
  SampleSizeProfile profile = SampleSizeProfile::tuned();
  TestMode test_mode = TestMode::sampled;
  std::optional<std::size_t> rounds_override;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::size_t holdout = kDefaultHoldout;
};

/// Builds the instance for one trial. Called with the trial's seed and the
/// epsilon being searched; equal arguments must give equal instances.
using InstanceFactory = std::function<Instance(std::uint64_t seed, double epsilon)>;

/// One row of the results table. Empty optionals are written as NA; an
/// empty budget means the ladder ran out ("not-found").
struct ResultRow {
  std::string instance;
  std::string algorithm;
  double epsilon = 0.0;
  std::optional<double> budget;
  std::optional<double> total_samples;
  std::optional<double> learning_samples;
  std::optional<double> test_samples;
  std::optional<double> success_rate;
  std::optional<double> balance_ratio;
  std::uint64_t seed_base = 0;

  bool found() const noexcept { return budget.has_value(); }
  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

inline constexpr std::array<std::string_view, 10> kResultColumns{
    "instance",     "algorithm",     "epsilon",       "budget",        "total_samples",
    "learning_samples", "test_samples", "success_rate", "balance_ratio", "seed_base"};
inline constexpr std::string_view kNotFound = "not-found";

/// Seed of trial `run`; shared by every rung and algorithm of a search.
std::uint64_t trial_seed(std::uint64_t seed_base, std::size_t run);

struct TrialOutcome {
  bool success = false;
  std::uint64_t learning_samples = 0;
  std::uint64_t test_samples = 0;
  double balance_ratio = 0.0;
};

/// One trial of `algorithm` at capacity knob `d`. Naive and single get the
/// base-learner budget sample_size(epsilon, delta, d); single is judged on
/// player 0 alone.
TrialOutcome run_trial(const Instance& instance, Algorithm algorithm, double epsilon, double d,
                       const BudgetSearchSpec& spec, std::uint64_t seed);

/// Walks the ladder for one epsilon; rungs stop early once the target rate
/// is out of reach.
ResultRow budget_search_one(const InstanceFactory& make, const std::string& instance_id, Algorithm algorithm,
                            double epsilon, const BudgetSearchSpec& spec);
std::vector<ResultRow> budget_search(const InstanceFactory& make, const std::string& instance_id,
                                     Algorithm algorithm, const BudgetSearchSpec& spec);

void write_results(std::ostream& out, std::span<const ResultRow> rows);
/// Throws PreconditionError on an empty row list, IoError on write failure.
void emit_results(std::span<const ResultRow> rows, const std::string& path);
std::vector<ResultRow> read_results(std::istream& in);
std::vector<ResultRow> load_results(const std::string& path);

/// Columns t, W, Q, chi, psi_count; unknown values are NA.
void write_diagnostics(std::ostream& out, std::span<const RoundDiagnostics> diagnostics);
void emit_diagnostics(std::span<const RoundDiagnostics> diagnostics, const std::string& path);

}  // namespace colearn
