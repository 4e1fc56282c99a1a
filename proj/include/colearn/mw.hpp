#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "colearn/diagnostics.hpp"
#include "colearn/hypothesis.hpp"
#include "colearn/instance.hpp"
#include "colearn/ledger.hpp"
#include "colearn/oracle.hpp"
#include "colearn/sample_size.hpp"
#include "colearn/weights.hpp"

namespace colearn {

enum class Algorithm { naive, basic_mw, mweights, single };
enum class TestMode { sampled, exact };

Algorithm parse_algorithm(std::string_view s);
std::string_view to_string(Algorithm a);
TestMode parse_test_mode(std::string_view s);
std::string_view to_string(TestMode m);

struct RunConfig {
  double epsilon = 0.1;
  double delta = 0.1;
  /// Capacity parameter fed to the sample-size formula.
  double d = 1.0;
  SampleSizeProfile profile;
  std::optional<std::size_t> rounds_override;
  TestMode test_mode = TestMode::sampled;
  Algorithm algorithm = Algorithm::mweights;
  std::uint64_t seed = 0;
  /// Total draws for naive; defaults to sample_size(epsilon, delta, d).
  std::optional<std::uint64_t> budget;
  /// Record per-round exact errors (chi, psi, player errors) when available.
  bool exact_diagnostics = true;
};

struct RunResult {
  Hypothesis hypothesis;
  SampleLedger ledger;
  std::vector<RoundDiagnostics> diagnostics;
  std::optional<WeightState> weights;
  /// err_{D_i}(hypothesis) when every player has a point-mass law.
  std::optional<std::vector<double>> player_errors;
};

// Round and test-size formulas, all rounded up.

/// ceil(10 ln k); 1 for k = 1.
std::uint64_t basic_round_count(std::size_t k);
/// ceil(2000 ln(k / delta)).
std::uint64_t mw_round_count(std::size_t k, double delta);
/// ceil(10 log k), at least 1 (tuned profile, both MW variants).
std::uint64_t tuned_round_count(std::size_t k, LogBase base = LogBase::natural);
/// ceil((432 / epsilon) ln(4 k (t+1)^2 / delta)) draws per player.
std::uint64_t test_sample_count(double epsilon, double delta, std::size_t k, std::size_t t);
/// ceil((432 / epsilon) ln 100) draws per player.
std::uint64_t weak_test_sample_count(double epsilon);
/// ceil(30 / epsilon) draws per player (tuned profile).
std::uint64_t tuned_test_sample_count(double epsilon);

/// Draw count and acceptance threshold of one accuracy test.
struct TestPlan {
  std::uint64_t draws = 0;
  double threshold = 0.0;
};

/// Players whose (sampled or exact) error of g is at most plan.threshold,
/// in increasing index order. Sampled mode charges plan.draws per player to
/// ctx.ledger under the test phase; exact mode draws nothing.
std::vector<std::size_t> accuracy_test(const Hypothesis& g, std::span<const SampleOracle> players,
                                       const TestPlan& plan, TestMode mode, const DrawContext& ctx);

/// The high-confidence test used by BasicMW at round t (threshold eps/6).
std::vector<std::size_t> test(const Hypothesis& g, std::span<const SampleOracle> players, std::size_t t,
                              double epsilon, double delta, TestMode mode, const DrawContext& ctx);

/// The constant-confidence test used by MWeights (threshold eps/6).
std::vector<std::size_t> weak_test(const Hypothesis& g, std::span<const SampleOracle> players, double epsilon,
                                   TestMode mode, const DrawContext& ctx);

/// Collaborative learner with per-round confidence delta / (4 (t+1)^2).
RunResult basic_mw(const Instance& instance, const RunConfig& config);
/// Collaborative learner with fixed learner confidence 1/100 and weak tests.
RunResult mweights(const Instance& instance, const RunConfig& config);
/// One learner trained on `budget` draws from the uniform mixture.
RunResult naive(const Instance& instance, std::uint64_t budget, const RunConfig& config);
/// One learner trained on player 0 alone (single-distribution baseline).
RunResult single_player(const Instance& instance, const RunConfig& config);

/// Dispatches on config.algorithm.
RunResult run_algorithm(const Instance& instance, const RunConfig& config);

}  // namespace colearn
