#include "colearn/mw.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "colearn/errors.hpp"
#include "colearn/learner.hpp"

namespace colearn {

Algorithm parse_algorithm(std::string_view s) {
  if (s == "naive") return Algorithm::naive;
  if (s == "basicmw") return Algorithm::basic_mw;
  if (s == "mweights") return Algorithm::mweights;
  if (s == "single") return Algorithm::single;
  throw PreconditionError("unknown algorithm '" + std::string(s) + "' (expected naive|basicmw|mweights|single)");
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::naive: return "naive";
    case Algorithm::basic_mw: return "basicmw";
    case Algorithm::mweights: return "mweights";
    case Algorithm::single: return "single";
  }
  return "?";
}

TestMode parse_test_mode(std::string_view s) {
  if (s == "sampled") return TestMode::sampled;
  if (s == "exact") return TestMode::exact;
  throw PreconditionError("unknown test mode '" + std::string(s) + "' (expected sampled|exact)");
}

std::string_view to_string(TestMode m) { return m == TestMode::sampled ? "sampled" : "exact"; }

std::uint64_t basic_round_count(std::size_t k) {
  detail::require(k >= 1, "basic_round_count: k must be positive");
  if (k == 1) return 1;
  return ceil_count(10.0 * std::log(static_cast<double>(k)));
}

std::uint64_t mw_round_count(std::size_t k, double delta) {
  detail::require(k >= 1, "mw_round_count: k must be positive");
  detail::require(delta > 0.0 && delta < 1.0, "mw_round_count: delta must lie in (0, 1)");
  return std::max<std::uint64_t>(1, ceil_count(2000.0 * std::log(static_cast<double>(k) / delta)));
}

std::uint64_t tuned_round_count(std::size_t k, LogBase base) {
  detail::require(k >= 1, "tuned_round_count: k must be positive");
  return std::max<std::uint64_t>(1, ceil_count(10.0 * log_in(base, static_cast<double>(k))));
}

std::uint64_t test_sample_count(double epsilon, double delta, std::size_t k, std::size_t t) {
  detail::require(epsilon > 0.0 && epsilon <= 1.0, "test: epsilon must lie in (0, 1]");
  detail::require(delta > 0.0 && delta < 1.0, "test: delta must lie in (0, 1)");
  const double tp1 = static_cast<double>(t) + 1.0;
  return ceil_count(432.0 / epsilon * std::log(4.0 * static_cast<double>(k) * tp1 * tp1 / delta));
}

std::uint64_t weak_test_sample_count(double epsilon) {
  detail::require(epsilon > 0.0 && epsilon <= 1.0, "weak_test: epsilon must lie in (0, 1]");
  return ceil_count(432.0 / epsilon * std::log(100.0));
}

std::uint64_t tuned_test_sample_count(double epsilon) {
  detail::require(epsilon > 0.0 && epsilon <= 1.0, "tuned test: epsilon must lie in (0, 1]");
  return ceil_count(30.0 / epsilon);
}

namespace {

std::vector<std::size_t> members_of(const std::vector<bool>& included) {
  std::vector<std::size_t> z;
  for (std::size_t i = 0; i < included.size(); ++i)
    if (included[i]) z.push_back(i);
  return z;
}

// Inclusion flags; `errors` supplies exact errors in exact mode.
std::vector<bool> run_accuracy_test(const Hypothesis& g, std::span<const SampleOracle> players, const TestPlan& plan,
                                    TestMode mode, const DrawContext& ctx, const std::vector<double>* errors) {
  std::vector<bool> included(players.size(), false);
  if (mode == TestMode::exact) {
    for (std::size_t i = 0; i < players.size(); ++i) {
      double err;
      if (errors != nullptr) {
        err = (*errors)[i];
      } else {
        const auto* d = players[i].point_mass();
        detail::require(d != nullptr, "exact test mode needs point-mass players (dataset-backed instance?)");
        err = exact_error(g, *d);
      }
      included[i] = err <= plan.threshold;
    }
    return included;
  }
  detail::require(plan.draws > 0, "accuracy test: no draws planned");
  DrawContext test_ctx = ctx;
  test_ctx.phase = Phase::test;
  for (std::size_t i = 0; i < players.size(); ++i) {
    const Sample s = players[i].draw(plan.draws, test_ctx);
    const double err = static_cast<double>(count_errors(g, s)) / static_cast<double>(plan.draws);
    included[i] = err <= plan.threshold;
  }
  return included;
}

struct Schedule {
  std::uint64_t rounds = 1;
  std::function<double(std::size_t)> learner_delta;
  std::function<TestPlan(std::size_t)> test_plan;
  bool skip_test = false;
};

void require_config(const Instance& instance, const RunConfig& c) {
  instance.validate();
  detail::require(c.epsilon > 0.0 && c.epsilon < 1.0, "run: epsilon must lie in (0, 1)");
  detail::require(c.delta > 0.0 && c.delta < 1.0, "run: delta must lie in (0, 1)");
  if (c.test_mode == TestMode::exact)
    detail::require(instance.has_exact_errors(), "exact test mode needs point-mass players (dataset-backed instance?)");
}

RunResult multiplicative_weights(const Instance& instance, const RunConfig& config, const Schedule& schedule) {
  const std::size_t k = instance.k();
  const double eps = config.epsilon;
  const bool exact_available = instance.has_exact_errors();
  const bool want_errors = exact_available && (config.exact_diagnostics || config.test_mode == TestMode::exact);

  RunResult result{Hypothesis::stump({}), SampleLedger(k), {}, WeightState(k), std::nullopt};
  auto& weights = *result.weights;
  std::vector<Hypothesis> round_hypotheses;
  round_hypotheses.reserve(schedule.rounds);

  for (std::size_t t = 0; t < schedule.rounds; ++t) {
    RoundDiagnostics diag;
    diag.t = t;
    diag.log_weight = weights.log_total();
    diag.weight = 0.0;
    for (std::size_t i = 0; i < k; ++i) diag.weight += weights.weight(i);
    diag.probabilities = weights.probabilities();

    const SampleOracle mixture = mixture_sampler(diag.probabilities, instance.players);
    const DrawContext learn_ctx{config.seed, t, Phase::learning, &result.ledger};
    Hypothesis g = pac_learn(mixture, eps / 120.0, schedule.learner_delta(t), config.d, instance.learner,
                             config.profile, learn_ctx);

    std::optional<std::vector<double>> errors;
    if (want_errors) errors = instance.exact_errors(g);

    std::vector<bool> included(k, true);
    if (!schedule.skip_test) {
      const DrawContext test_ctx{config.seed, t, Phase::test, &result.ledger};
      included = run_accuracy_test(g, instance.players, schedule.test_plan(t), config.test_mode, test_ctx,
                                   errors ? &*errors : nullptr);
    }
    diag.excluded.resize(k);
    for (std::size_t i = 0; i < k; ++i) diag.excluded[i] = !included[i];

    diag.psi.assign(k, std::nullopt);
    if (errors && config.exact_diagnostics) {
      double mix_err = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        const double e = (*errors)[i];
        mix_err += diag.probabilities[i] * e;
        diag.psi[i] = (e <= eps / 12.0 && diag.excluded[i]) || (e > eps / 4.0 && !diag.excluded[i]);
      }
      diag.mixture_error = mix_err;
      diag.chi = mix_err > eps / 120.0;
      diag.player_errors = std::move(*errors);
    }

    diag.q = std::log1p(diag.excluded_mass());
    weights.advance(diag.excluded);
    result.diagnostics.push_back(std::move(diag));
    round_hypotheses.push_back(std::move(g));
  }

  result.hypothesis = plurality(round_hypotheses, instance.domain);
  if (exact_available) result.player_errors = instance.exact_errors(result.hypothesis);
  return result;
}

TestPlan tuned_plan(double eps) { return {tuned_test_sample_count(eps), eps / 2.0}; }

}  // namespace

std::vector<std::size_t> accuracy_test(const Hypothesis& g, std::span<const SampleOracle> players,
                                       const TestPlan& plan, TestMode mode, const DrawContext& ctx) {
  return members_of(run_accuracy_test(g, players, plan, mode, ctx, nullptr));
}

std::vector<std::size_t> test(const Hypothesis& g, std::span<const SampleOracle> players, std::size_t t,
                              double epsilon, double delta, TestMode mode, const DrawContext& ctx) {
  const TestPlan plan{mode == TestMode::sampled ? test_sample_count(epsilon, delta, players.size(), t) : 0,
                      epsilon / 6.0};
  return accuracy_test(g, players, plan, mode, ctx);
}

std::vector<std::size_t> weak_test(const Hypothesis& g, std::span<const SampleOracle> players, double epsilon,
                                   TestMode mode, const DrawContext& ctx) {
  const TestPlan plan{mode == TestMode::sampled ? weak_test_sample_count(epsilon) : 0, epsilon / 6.0};
  return accuracy_test(g, players, plan, mode, ctx);
}

RunResult basic_mw(const Instance& instance, const RunConfig& config) {
  require_config(instance, config);
  const std::size_t k = instance.k();
  const bool tuned = config.profile.mode == ProfileMode::tuned;
  const double eps = config.epsilon;
  const double delta = config.delta;
  Schedule s;
  s.rounds = config.rounds_override.value_or(tuned ? tuned_round_count(k, config.profile.tuned_log)
                                                   : basic_round_count(k));
  detail::require(s.rounds >= 1, "basic_mw: need at least one round");
  s.learner_delta = [delta](std::size_t t) {
    const double tp1 = static_cast<double>(t) + 1.0;
    return delta / (4.0 * tp1 * tp1);
  };
  s.test_plan = [=](std::size_t t) {
    return tuned ? tuned_plan(eps) : TestPlan{test_sample_count(eps, delta, k, t), eps / 6.0};
  };
  // A single player needs no reweighting: one round, one learner call.
  if (k == 1 && !config.rounds_override) {
    s.rounds = 1;
    s.skip_test = true;
  }
  return multiplicative_weights(instance, config, s);
}

RunResult mweights(const Instance& instance, const RunConfig& config) {
  require_config(instance, config);
  const std::size_t k = instance.k();
  const bool tuned = config.profile.mode == ProfileMode::tuned;
  const double eps = config.epsilon;
  Schedule s;
  s.rounds = config.rounds_override.value_or(tuned ? tuned_round_count(k, config.profile.tuned_log)
                                                   : mw_round_count(k, config.delta));
  detail::require(s.rounds >= 1, "mweights: need at least one round");
  s.learner_delta = [](std::size_t) { return 1.0 / 100.0; };
  s.test_plan = [=](std::size_t) {
    return tuned ? tuned_plan(eps) : TestPlan{weak_test_sample_count(eps), eps / 6.0};
  };
  return multiplicative_weights(instance, config, s);
}

RunResult naive(const Instance& instance, std::uint64_t budget, const RunConfig& config) {
  require_config(instance, config);
  detail::require(budget >= 1, "naive: budget must be at least 1");
  const std::size_t k = instance.k();
  const std::vector<double> uniform(k, 1.0 / static_cast<double>(k));
  RunResult result{Hypothesis::stump({}), SampleLedger(k), {}, std::nullopt, std::nullopt};
  const SampleOracle mixture = mixture_sampler(uniform, instance.players);
  const Sample s = mixture.draw(budget, DrawContext{config.seed, 0, Phase::learning, &result.ledger});
  result.hypothesis = fit(instance.learner, s);
  if (instance.has_exact_errors()) result.player_errors = instance.exact_errors(result.hypothesis);
  return result;
}

RunResult single_player(const Instance& instance, const RunConfig& config) {
  require_config(instance, config);
  RunResult result{Hypothesis::stump({}), SampleLedger(instance.k()), {}, std::nullopt, std::nullopt};
  result.hypothesis = pac_learn(instance.players.front(), config.epsilon, config.delta, config.d, instance.learner,
                                config.profile, DrawContext{config.seed, 0, Phase::learning, &result.ledger});
  if (instance.has_exact_errors()) result.player_errors = instance.exact_errors(result.hypothesis);
  return result;
}

RunResult run_algorithm(const Instance& instance, const RunConfig& config) {
  switch (config.algorithm) {
    case Algorithm::naive:
      return naive(instance,
                   config.budget.value_or(sample_size(config.epsilon, config.delta, config.d, config.profile)),
                   config);
    case Algorithm::basic_mw: return basic_mw(instance, config);
    case Algorithm::mweights: return mweights(instance, config);
    case Algorithm::single: return single_player(instance, config);
  }
  throw PreconditionError("run_algorithm: unknown algorithm");
}

}  // namespace colearn
