#include <doctest.h>

#include <cmath>

#include "colearn/errors.hpp"
#include "colearn/hypothesis_class.hpp"
#include "colearn/learner.hpp"
#include "colearn/sample_size.hpp"
#include "colearn/tree.hpp"
#include "helpers.hpp"

using namespace colearn;
using namespace colearn::testing;

namespace {

std::uint64_t member_index(const Hypothesis& h) {
  return *std::get<TableMember>(h.body()).index;
}

LabeledExample bot(Label y = 0) { return {kBottom, {-1.0}, y}; }

}  // namespace

TEST_CASE("sample_size") {
  CHECK(sample_size(0.1, 0.1, 10, SampleSizeProfile::tuned()) == 13);
  CHECK(sample_size(1.0, 1.0 / std::exp(1.0), 1, SampleSizeProfile::theory()) == 2);
  CHECK(sample_size(0.1, 0.1, 10, SampleSizeProfile::theory(2.0)) ==
        static_cast<std::uint64_t>(std::ceil(2.0 * (10 + std::log(10.0)) / 0.1)));
  CHECK(sample_size(0.1, 0.1, 10, SampleSizeProfile::tuned(LogBase::two)) ==
        static_cast<std::uint64_t>(std::ceil((10 + std::log2(10.0)) / 1.0)));
  for (auto prof : {SampleSizeProfile::theory(), SampleSizeProfile::tuned()}) {
    CHECK(sample_size_real(0.05, 0.2, 3, prof) == doctest::Approx(2 * sample_size_real(0.1, 0.2, 3, prof)));
    CHECK(sample_size(0.05, 0.1, 3, prof) >= sample_size(0.1, 0.1, 3, prof));
    CHECK(sample_size(0.1, 0.05, 3, prof) >= sample_size(0.1, 0.1, 3, prof));
    CHECK(sample_size(0.1, 0.1, 4, prof) >= sample_size(0.1, 0.1, 3, prof));
  }
  CHECK_THROWS_AS(sample_size(0.0, 0.1, 1, SampleSizeProfile::theory()), PreconditionError);
  CHECK_THROWS_AS(sample_size(0.1, 1.0, 1, SampleSizeProfile::theory()), PreconditionError);
  CHECK(ceil_count(2000.0 * std::log(std::exp(1.0))) == 2000);
}

TEST_CASE("erm_learn examples") {
  const auto c = FiniteHypothesisClass::all_binary(FiniteDomain{0, 2, true});
  std::vector<LabeledExample> ex;
  for (int i = 0; i < 3; ++i) ex.push_back(pt(0, 1));
  ex.push_back(pt(1, 0));
  for (int i = 0; i < 6; ++i) ex.push_back(bot());
  const auto s = Sample::from_examples(ex);
  CHECK(member_index(erm_learn(s, c)) == 1);
  CHECK(member_index(erm_learn_exhaustive(s, c)) == 1);

  const auto only_bot = Sample::from_examples(std::vector{bot(), bot()});
  CHECK(member_index(erm_learn(only_bot, c)) == 0);

  const auto unique = FiniteHypothesisClass::explicit_members(FiniteDomain{0, 2, false}, {{0, 0}, {1, 0}, {0, 1}}, 1);
  CHECK(member_index(erm_learn(Sample::from_examples(std::vector{pt(0, 1), pt(1, 0)}), unique)) == 1);
  CHECK_THROWS_AS(FiniteHypothesisClass::explicit_members(FiniteDomain{0, 2, false}, {}, 1), PreconditionError);
}

TEST_CASE("erm_learn minimizes empirical error (exhaustive oracle)") {
  Rng r(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const bool explicit_class = trial % 3 == 0;
    const std::int64_t n = 1 + static_cast<std::int64_t>(r.below(explicit_class ? 10 : 16));
    const bool has_bot = r.bernoulli(0.5);
    const FiniteDomain dom{0, n, has_bot};
    FiniteHypothesisClass c = FiniteHypothesisClass::all_binary(dom);
    if (explicit_class) {
      std::vector<std::vector<Label>> tables(1 + r.below(40), std::vector<Label>(dom.slots()));
      for (auto& t : tables)
        for (auto& v : t) v = static_cast<Label>(r.below(3));
      c = FiniteHypothesisClass::explicit_members(dom, tables, 2);
    }
    std::vector<LabeledExample> ex;
    const std::size_t m = 1 + r.below(60);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t slot = r.below(dom.slots());
      const PointId id = dom.id_at(slot);
      ex.push_back({id, {static_cast<double>(id)}, static_cast<Label>(r.below(2))});
    }
    const auto s = Sample::from_examples(ex);

    // Independent scan: count mistakes of every member directly.
    std::uint64_t best = 0;
    std::size_t best_err = SIZE_MAX;
    for (std::uint64_t idx = 0; idx < *c.size(); ++idx) {
      std::size_t err = 0;
      for (const auto& e : ex) err += c.label(idx, *dom.slot(e.point)) != e.label;
      if (err < best_err) {
        best_err = err;
        best = idx;
      }
    }
    const auto fast = erm_learn(s, c);
    CHECK(member_index(fast) == best);
    CHECK(member_index(erm_learn_exhaustive(s, c)) == best);
    CHECK(count_errors(fast, s) == best_err);
  }
}

TEST_CASE("pac_learn") {
  const FiniteDomain dom{0, 10, false};
  const auto c = FiniteHypothesisClass::all_binary(dom);
  const auto table = ExampleTable::finite(std::vector<PointId>{3}, std::vector<Label>{1});

  SUBCASE("singleton support") {
    const auto d = PointMassDistribution(table, {0}, {1.0});
    const auto o = SampleOracle::point_mass(0, d);
    SampleLedger l(1);
    const auto g = pac_learn(o, 0.1, 0.1, 10, c, SampleSizeProfile::theory(), DrawContext{1, 0, Phase::learning, &l});
    CHECK(exact_error(g, d) == 0.0);
    CHECK(l.total() == sample_size(0.1, 0.1, 10, SampleSizeProfile::theory()));
  }

  SUBCASE("PAC contract over seeds") {
    Rng r(99);
    int good = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      std::vector<PointId> ids(10);
      std::vector<Label> ys(10);
      for (int j = 0; j < 10; ++j) {
        ids[j] = j;
        ys[j] = static_cast<Label>(r.below(2));
      }
      const auto t = ExampleTable::finite(ids, ys);
      std::vector<std::uint32_t> rows(10);
      for (std::uint32_t j = 0; j < 10; ++j) rows[j] = j;
      const PointMassDistribution d(t, rows, std::vector<double>(10, 0.1));
      const auto g = pac_learn(SampleOracle::point_mass(0, d), 0.2, 0.1, 10, c, SampleSizeProfile::theory(),
                               DrawContext{seed, 0, Phase::learning, nullptr});
      good += exact_error(g, d) <= 0.2;
    }
    CHECK(good >= 90);
  }

  SUBCASE("replay") {
    const auto d = PointMassDistribution(ExampleTable::finite(std::vector<PointId>{0, 1, 2}, std::vector<Label>{1, 0, 1}),
                                         {0, 1, 2}, {0.2, 0.3, 0.5});
    const auto o = SampleOracle::point_mass(0, d);
    const DrawContext ctx{77, 4, Phase::learning, nullptr};
    CHECK(pac_learn(o, 0.3, 0.2, 3, c, SampleSizeProfile::tuned(), ctx) ==
          pac_learn(o, 0.3, 0.2, 3, c, SampleSizeProfile::tuned(), ctx));
  }
}

namespace {

LabeledExample row(std::vector<double> x, Label y) { return {0, std::move(x), y}; }

std::size_t train_errors(const Hypothesis& h, const Sample& s) { return count_errors(h, s); }

}  // namespace

TEST_CASE("tree_learn") {
  SUBCASE("pure node") {
    const auto s = Sample::from_examples(std::vector{row({0.0}, 4), row({5.0}, 4), row({9.0}, 4)});
    const auto h = tree_learn(s);
    const auto& t = std::get<DecisionTree>(h.body());
    CHECK(t.nodes.size() == 1);
    CHECK(t.nodes[0].label == 4);
  }
  SUBCASE("separable pair") {
    const auto s = Sample::from_examples(std::vector{row({0.0}, 0), row({1.0}, 1)});
    const auto h = tree_learn(s, TreeParams{1, 1});
    const auto& t = std::get<DecisionTree>(h.body());
    REQUIRE(t.nodes.size() == 3);
    CHECK(t.nodes[0].threshold > 0.0);
    CHECK(t.nodes[0].threshold < 1.0);
    CHECK(train_errors(h, s) == 0);
  }
  SUBCASE("xor at depth 2") {
    const auto s = Sample::from_examples(
        std::vector{row({0, 0}, 0), row({0, 1}, 1), row({1, 0}, 1), row({1, 1}, 0)});
    CHECK(train_errors(tree_learn(s, TreeParams{2, 1}), s) == 0);
  }
  SUBCASE("majority leaf ties to the smallest label") {
    const auto s = Sample::from_examples(std::vector{row({1.0}, 3), row({1.0}, 2)});
    const auto h = tree_learn(s);
    const double x = 1.0;
    CHECK(h(PointView{0, {&x, 1}}) == 2);
  }
  SUBCASE("training error nonincreasing in depth") {
    Rng r(5);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<LabeledExample> ex;
      for (int i = 0; i < 80; ++i) ex.push_back(row({r.uniform(), r.uniform(), std::floor(r.uniform() * 4)}, static_cast<Label>(r.below(3))));
      const auto s = Sample::from_examples(ex);
      std::size_t prev = SIZE_MAX;
      for (std::size_t depth = 0; depth <= 8; ++depth) {
        const auto e = train_errors(tree_learn(s, TreeParams{depth, 1}), s);
        CHECK(e <= prev);
        prev = e;
      }
    }
  }
  SUBCASE("rejects non-finite features and empty samples") {
    CHECK_THROWS_AS(tree_learn(Sample::from_examples(std::vector{row({NAN}, 0)})), PreconditionError);
    CHECK_THROWS_AS(tree_learn(Sample::from_examples(std::vector<LabeledExample>{})), PreconditionError);
  }
}
