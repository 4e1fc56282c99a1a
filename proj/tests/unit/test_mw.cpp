#include <doctest.h>

#include <cmath>

#include "colearn/errors.hpp"
#include "colearn/hard_instances.hpp"
#include "colearn/mw.hpp"
#include "helpers.hpp"

using namespace colearn;
using namespace colearn::testing;

namespace {

std::uint64_t ceil_ld(long double x) { return static_cast<std::uint64_t>(std::ceil(x)); }

// k = 2, disjoint supports: player 0 on point 0 (label 1), player 1 on point 1 (label 0).
Instance disjoint_pair() {
  const FiniteDomain dom{0, 2, false};
  const auto table = ExampleTable::finite(std::vector<PointId>{0, 1}, std::vector<Label>{1, 0});
  Instance inst;
  inst.players.push_back(SampleOracle::point_mass(0, PointMassDistribution(table, {0}, {1.0})));
  inst.players.push_back(SampleOracle::point_mass(1, PointMassDistribution(table, {1}, {1.0})));
  inst.learner = FiniteHypothesisClass::all_binary(dom);
  inst.capacity = 2;
  inst.domain = dom;
  return inst;
}

// Same players, but the class holds only the target: a learner that always returns f*.
Instance perfect_learner(Instance inst, const std::vector<Label>& target) {
  inst.learner = FiniteHypothesisClass::explicit_members(*inst.domain, {target}, 1);
  return inst;
}

}  // namespace

TEST_CASE("round and test sizes") {
  CHECK(basic_round_count(10) == 24);
  CHECK(basic_round_count(10) == ceil_ld(10 * std::log(10.0L)));
  CHECK(basic_round_count(4) == 14);
  CHECK(basic_round_count(1) == 1);
  CHECK(mw_round_count(10, 0.1) == 9211);
  CHECK(mw_round_count(10, 0.1) == ceil_ld(2000 * std::log(100.0L)));
  CHECK(mw_round_count(1, 1.0 / std::exp(1.0)) == 2000);
  for (std::size_t k : {3u, 10u, 50u}) {
    const auto diff = mw_round_count(2 * k, 0.1) - mw_round_count(k, 0.1);
    CHECK((diff == 1386 || diff == 1387));
  }
  CHECK(test_sample_count(0.1, 0.1, 10, 0) == 25884);
  CHECK(test_sample_count(0.1, 0.1, 10, 0) == ceil_ld(4320 * std::log(400.0L)));
  CHECK(weak_test_sample_count(0.1) == 19895);
  CHECK(weak_test_sample_count(0.1) == ceil_ld(4320 * std::log(100.0L)));
  CHECK(tuned_test_sample_count(0.1) == 300);
  CHECK(tuned_round_count(10) == 24);
  CHECK(tuned_round_count(1) == 1);
  CHECK(tuned_round_count(10, LogBase::two) == 34);
}

TEST_CASE("accuracy tests in exact mode") {
  const auto h = gen_psi(4, 2, 0.1, 3);
  const auto inst = h.instance();
  const auto z = test(h.target, inst.players, 0, 0.1, 0.1, TestMode::exact, DrawContext{});
  CHECK(z == std::vector<std::size_t>{0, 1, 2, 3});

  // Flip every label: error 2 eps on active players, 0 on all-⊥ players.
  std::vector<Label> flipped = h.target_table;
  for (std::size_t s = 0; s + 1 < flipped.size(); ++s) flipped[s] = 1 - flipped[s];
  const auto bad = Hypothesis::member(TableMember{"x", std::nullopt, h.domain, flipped, 0});
  const auto errs = inst.exact_errors(bad);
  const auto wz = weak_test(bad, inst.players, 0.1, TestMode::exact, DrawContext{});
  for (std::size_t i = 0; i < 4; ++i) {
    const bool in = std::find(wz.begin(), wz.end(), i) != wz.end();
    CHECK(in == (errs[i] <= 0.1 / 6));
  }
}

TEST_CASE("sampled tests charge their draws") {
  const auto inst = gen_psi(2, 2, 0.1, 1).instance();
  SampleLedger l(2);
  weak_test(*inst.target, inst.players, 0.1, TestMode::sampled, DrawContext{4, 0, Phase::test, &l});
  CHECK(l.total(Phase::test) == 2 * 19895);
  CHECK(l.total(Phase::learning) == 0);
}

TEST_CASE("perfect learner fixpoint") {
  const auto inst = perfect_learner(disjoint_pair(), {1, 0});
  for (auto algo : {Algorithm::basic_mw, Algorithm::mweights}) {
    RunConfig c;
    c.epsilon = 0.2;
    c.delta = 0.1;
    c.d = 2;
    c.test_mode = TestMode::exact;
    c.algorithm = algo;
    c.rounds_override = algo == Algorithm::mweights ? std::optional<std::size_t>(50) : std::nullopt;
    const auto r = run_algorithm(inst, c);
    for (const auto& d : r.diagnostics) {
      for (bool ex : d.excluded) CHECK(!ex);
      CHECK(d.weight == 2.0);
    }
    for (auto e : r.weights->exponents()) CHECK(e == 0);
    CHECK(*r.player_errors == std::vector{0.0, 0.0});
  }
}

TEST_CASE("basic_mw on disjoint supports") {
  const auto inst = disjoint_pair();
  int good = 0;
  std::size_t rounds_checked = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RunConfig c;
    c.epsilon = 0.2;
    c.delta = 0.1;
    c.d = 2;
    c.test_mode = TestMode::exact;
    c.algorithm = Algorithm::basic_mw;
    c.seed = seed;
    const auto r = basic_mw(inst, c);
    CHECK(r.diagnostics.size() == basic_round_count(2));
    good += std::max((*r.player_errors)[0], (*r.player_errors)[1]) <= 0.2;
    for (std::size_t t = 0; t + 1 < r.diagnostics.size(); ++t) {
      const auto& d = r.diagnostics[t];
      if (*d.chi) continue;
      CHECK(r.diagnostics[t + 1].weight <= 1.1 * d.weight);
      ++rounds_checked;
    }
  }
  CHECK(good >= 90);
  CHECK(rounds_checked > 0);
}

TEST_CASE("exact-mode invariants on hard instances") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = gen_psi(8, 2, 0.1, seed).instance();
    for (auto algo : {Algorithm::basic_mw, Algorithm::mweights}) {
      RunConfig c;
      c.epsilon = 0.1;
      c.delta = 0.1;
      c.d = 2;
      c.test_mode = TestMode::exact;
      c.algorithm = algo;
      c.seed = seed;
      c.rounds_override = algo == Algorithm::mweights ? std::optional<std::size_t>(60) : std::nullopt;
      const auto r = run_algorithm(inst, c);
      std::vector<std::size_t> excluded(8, 0), above(8, 0);
      for (const auto& d : r.diagnostics) {
        REQUIRE(d.chi.has_value());
        const auto& errs = *d.player_errors;
        double mix = 0.0, bad_mass = 0.0;
        for (std::size_t i = 0; i < 8; ++i) {
          mix += d.probabilities[i] * errs[i];
          if (errs[i] > c.epsilon / 12) bad_mass += d.probabilities[i];
          excluded[i] += d.excluded[i];
          above[i] += errs[i] > c.epsilon / 4;
          CHECK(d.excluded[i] == (errs[i] > c.epsilon / 6));
          CHECK(*d.psi[i] == false);
        }
        CHECK(*d.chi == (mix > c.epsilon / 120));
        CHECK(d.q <= std::log(2.0));
        if (!*d.chi) CHECK(bad_mass <= 0.1);
      }
      for (std::size_t i = 0; i < 8; ++i) {
        CHECK(r.weights->exponents()[i] == excluded[i]);
        CHECK(above[i] <= excluded[i]);
      }
    }
  }
}

TEST_CASE("mweights sample-count identity") {
  const auto inst = gen_psi(4, 2, 0.2, 9).instance();
  RunConfig c;
  c.epsilon = 0.2;
  c.delta = 0.1;
  c.d = 2;
  c.algorithm = Algorithm::mweights;
  c.rounds_override = 6;
  const auto r = mweights(inst, c);
  CHECK(r.ledger.total(Phase::learning) == 6 * sample_size(0.2 / 120, 0.01, 2, c.profile));
  CHECK(r.ledger.total(Phase::test) == 6 * 4 * weak_test_sample_count(0.2));
  CHECK(r.diagnostics.size() == 6);

  c.profile = SampleSizeProfile::tuned();
  c.rounds_override.reset();
  const auto t = mweights(inst, c);
  CHECK(t.diagnostics.size() == tuned_round_count(4));
  CHECK(t.ledger.total(Phase::test) == tuned_round_count(4) * 4 * 150);
  CHECK(t.ledger.total(Phase::learning) == tuned_round_count(4) * sample_size(0.2 / 120, 0.01, 2, c.profile));
}

TEST_CASE("mweights learner failures stay rare") {
  const auto inst = gen_big_phi(2, 4, 0.1, 17).instance();
  RunConfig c;
  c.epsilon = 0.2;
  c.delta = 0.5;
  c.d = 4;
  c.test_mode = TestMode::exact;
  c.algorithm = Algorithm::mweights;
  const auto r = mweights(inst, c);
  REQUIRE(r.diagnostics.size() == mw_round_count(2, 0.5));
  double chis = 0;
  for (const auto& d : r.diagnostics) chis += *d.chi;
  CHECK(chis / static_cast<double>(r.diagnostics.size()) <= 0.01 + 0.01);
}

TEST_CASE("basic_mw with one player") {
  const auto inst = gen_phi(3, 0.05, 2).instance();
  RunConfig c;
  c.algorithm = Algorithm::basic_mw;
  c.d = 3;
  const auto r = basic_mw(inst, c);
  CHECK(r.diagnostics.size() == 1);
  CHECK(r.ledger.total(Phase::test) == 0);
  CHECK(r.ledger.total() == sample_size(c.epsilon / 120, c.delta / 4, 3, c.profile));
}

TEST_CASE("naive") {
  SUBCASE("ledger") {
    const auto inst = gen_psi(4, 2, 0.1, 1).instance();
    RunConfig c;
    const auto r = naive(inst, 1234, c);
    CHECK(r.ledger.total() == 1234);
    CHECK(r.ledger.total(Phase::test) == 0);
  }
  SUBCASE("identical players behave like one") {
    const auto one = gen_phi(6, 0.05, 8);
    Instance many = one.instance();
    for (std::size_t i = 1; i < 5; ++i) many.players.push_back(many.players[0].reassigned(i));
    double diff = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      RunConfig c;
      c.seed = seed;
      const auto a = naive(one.instance(), 40, c);
      const auto b = naive(many, 40, c);
      diff += (*a.player_errors)[0] - (*b.player_errors)[0];
    }
    CHECK(std::abs(diff / 100) <= 0.02);
  }
  SUBCASE("k = 1 draws only from the single player") {
    const auto inst = gen_phi(2, 0.05, 8).instance();
    RunConfig c;
    const auto r = naive(inst, 50, c);
    CHECK(r.ledger.player_total(0) == 50);
  }
  SUBCASE("budget must be positive") {
    CHECK_THROWS_AS(naive(gen_phi(2, 0.05, 8).instance(), 0, RunConfig{}), PreconditionError);
  }
}

TEST_CASE("runs replay exactly") {
  const auto inst = gen_psi(8, 2, 0.1, 4).instance();
  for (auto algo : {Algorithm::basic_mw, Algorithm::mweights, Algorithm::naive}) {
    RunConfig c;
    c.algorithm = algo;
    c.seed = 31;
    c.profile = SampleSizeProfile::tuned();
    const auto a = run_algorithm(inst, c), b = run_algorithm(inst, c);
    CHECK(a.hypothesis == b.hypothesis);
    CHECK(a.ledger == b.ledger);
    REQUIRE(a.diagnostics.size() == b.diagnostics.size());
    for (std::size_t t = 0; t < a.diagnostics.size(); ++t) {
      CHECK(a.diagnostics[t].probabilities == b.diagnostics[t].probabilities);
      CHECK(a.diagnostics[t].excluded == b.diagnostics[t].excluded);
      CHECK(a.diagnostics[t].chi == b.diagnostics[t].chi);
    }
  }
}

TEST_CASE("config validation") {
  const auto inst = gen_psi(2, 2, 0.1, 4).instance();
  RunConfig c;
  c.epsilon = 1.5;
  CHECK_THROWS_AS(mweights(inst, c), PreconditionError);
  c.epsilon = 0.1;
  c.delta = 0.0;
  CHECK_THROWS_AS(basic_mw(inst, c), PreconditionError);
  CHECK_THROWS_AS(parse_algorithm("boost"), PreconditionError);
  CHECK(parse_algorithm("basicmw") == Algorithm::basic_mw);
  CHECK(parse_test_mode("exact") == TestMode::exact);
}
