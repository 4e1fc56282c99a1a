#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "colearn/dataset.hpp"
#include "colearn/errors.hpp"
#include "colearn/hard_instances.hpp"
#include "colearn/harness.hpp"
#include "colearn/text.hpp"

using namespace colearn;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "colearn-unit";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Two Gaussian-ish blobs on two features, labels by blob.
std::string blob_csv(std::size_t n, std::uint64_t seed) {
  Rng r(seed);
  std::ostringstream s;
  s << "f0,f1,cls\n";
  for (std::size_t i = 0; i < n; ++i) {
    const bool a = r.bernoulli(0.5);
    s << format_real((a ? 1.0 : -1.0) + r.uniform() - 0.5) << ',' << format_real(r.uniform() * 4 - 2) << ','
      << (a ? "gamma" : "hadron") << '\n';
  }
  return s.str();
}

ResultRow sample_row() {
  ResultRow r;
  r.instance = "psi-k8-d2";
  r.algorithm = "mweights";
  r.epsilon = 0.1;
  r.budget = 12;
  r.learning_samples = 1234.56;
  r.test_samples = 0.1 + 0.2;
  r.total_samples = *r.learning_samples + *r.test_samples;
  r.success_rate = 0.92;
  r.balance_ratio = 1.0 / 3.0;
  r.seed_base = 18446744073709551615ull;
  return r;
}

}  // namespace

TEST_CASE("rate parsing and exact comparison") {
  const auto r = Rate::parse("0.9");
  CHECK(r.num == 9);
  CHECK(r.den == 10);
  CHECK(r.met(90, 100));
  CHECK_FALSE(r.met(89, 100));
  CHECK(r.met(45, 50));
  CHECK_FALSE(r.met(44, 50));
  CHECK(r.needed(50) == 45);
  CHECK(r.needed(7) == 7);
  CHECK(Rate::parse("1").needed(13) == 13);
  CHECK(Rate::parse("2/3").met(2, 3));
  CHECK(Rate::parse("0.125").den == 8);
  CHECK_THROWS_AS(Rate::parse("1.5"), PreconditionError);
  CHECK_THROWS_AS(Rate::parse("0"), PreconditionError);
  CHECK_THROWS_AS(Rate::parse("abc"), PreconditionError);
}

TEST_CASE("budget ladder") {
  const auto rungs = BudgetLadder{1.0, 1.25, 10.0}.rungs();
  CHECK(rungs == std::vector<double>{1, 2, 3, 4, 5, 6, 8, 10});
  for (std::size_t i = 1; i < rungs.size(); ++i) CHECK(rungs[i] > rungs[i - 1]);
  CHECK_THROWS_AS(BudgetLadder({1.0, 1.0, 10.0}).rungs(), PreconditionError);
}

TEST_CASE("result rows") {
  SUBCASE("single row is two lines and parses back exactly") {
    const std::vector<ResultRow> rows{sample_row()};
    const auto path = scratch("one.csv");
    emit_results(rows, path.string());
    const auto text = slurp(path);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    CHECK(text.rfind("instance,algorithm,epsilon,budget,total_samples,learning_samples,test_samples,"
                     "success_rate,balance_ratio,seed_base\n",
                     0) == 0);
    const auto back = load_results(path.string());
    REQUIRE(back.size() == 1);
    CHECK(back[0] == rows[0]);
    CHECK(*back[0].total_samples == *back[0].learning_samples + *back[0].test_samples);
  }
  SUBCASE("not-found rows") {
    ResultRow r;
    r.instance = "x";
    r.algorithm = "naive";
    r.epsilon = 0.2;
    std::ostringstream out;
    write_results(out, std::vector{r});
    CHECK(out.str().find("x,naive,0.2,not-found,NA,NA,NA,NA,NA,0\n") != std::string::npos);
    std::istringstream in(out.str());
    CHECK(read_results(in)[0] == r);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(emit_results(std::vector<ResultRow>{}, scratch("none.csv").string()), PreconditionError);
    CHECK_THROWS_AS(emit_results(std::vector{sample_row()}, "/nonexistent-dir/x.csv"), IoError);
    std::istringstream bad("instance,algo\n");
    CHECK_THROWS_AS(read_results(bad), PreconditionError);
  }
}

TEST_CASE("evaluate_success") {
  const auto h = gen_psi(4, 2, 0.1, 2);
  const auto inst = h.instance();
  CHECK(evaluate_success(inst, h.target, 1e-9, 0));
  CHECK_FALSE(evaluate_success(std::vector{0.0, 0.3}, 0.2));
  CHECK(evaluate_success(std::vector{0.2, 0.1}, 0.2));
}

TEST_CASE("holdout estimates track exact errors") {
  // A resampled partition's exact error is its fraction of mislabeled rows.
  const auto ds = parse_csv(blob_csv(400, 3), "cls");
  PartitionSpec spec;
  spec.k = 3;
  const auto parts = partition_rows(ds, spec, 8);
  const auto inst = dataset_instance(ds, spec, 8);
  const auto g = Hypothesis::stump(Stump{0, 0.0, 1, 0});
  int within = 0;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    const auto est = player_errors(inst, g, trial);
    bool ok = true;
    for (std::size_t i = 0; i < 3; ++i) {
      std::size_t wrong = 0;
      for (auto r : parts[i]) wrong += g(ds.table->point(r)) != ds.table->label(r);
      const double exact = static_cast<double>(wrong) / static_cast<double>(parts[i].size());
      ok = ok && std::abs(est[i] - exact) <= 0.02;
    }
    within += ok;
  }
  CHECK(within >= 190);
}

TEST_CASE("budget search") {
  const InstanceFactory psi = [](std::uint64_t seed, double eps) { return gen_psi(4, 2, std::min(eps, 0.2), seed).instance(); };
  BudgetSearchSpec spec;
  spec.runs = 10;
  spec.ladder.max = 400;

  SUBCASE("loose epsilon stops at the first rungs") {
    spec.epsilons = {0.99};
    for (auto a : {Algorithm::naive, Algorithm::mweights}) {
      const auto row = budget_search_one(psi, "psi", a, 0.99, spec);
      REQUIRE(row.found());
      CHECK(*row.budget <= 2.0);
      CHECK(*row.success_rate >= 0.9);
      CHECK(*row.total_samples == *row.learning_samples + *row.test_samples);
    }
  }
  SUBCASE("found budget shrinks as epsilon grows") {
    spec.epsilons = {0.02, 0.05, 0.1, 0.2};
    const InstanceFactory phi = [](std::uint64_t seed, double) { return gen_big_phi(2, 16, 0.1, seed).instance(); };
    const auto rows = budget_search(phi, "big-phi", Algorithm::naive, spec);
    int inversions = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      REQUIRE(rows[i].found());
      inversions += *rows[i].total_samples > *rows[i - 1].total_samples;
    }
    CHECK(inversions <= 1);
  }
  SUBCASE("exhausted ladder reports not-found") {
    spec.ladder.max = 2;
    const InstanceFactory phi = [](std::uint64_t seed, double) { return gen_phi(64, 0.1, seed).instance(); };
    const auto row = budget_search_one(phi, "phi", Algorithm::naive, 0.01, spec);
    CHECK_FALSE(row.found());
    CHECK_FALSE(row.total_samples.has_value());
  }
  SUBCASE("threads do not change results") {
    spec.epsilons = {0.1};
    const auto a = budget_search(psi, "psi", Algorithm::mweights, spec);
    spec.threads = 3;
    const auto b = budget_search(psi, "psi", Algorithm::mweights, spec);
    CHECK(a == b);
  }
}

TEST_CASE("csv datasets") {
  const auto path = scratch("tiny.csv");
  {
    std::ofstream out(path);
    out << "a,b,label\n1,2,x\n3.5,-4,y\n0.1,1e-300,x\n";
  }
  const auto ds = load_csv(path.string(), "label");
  CHECK(ds.rows() == 3);
  CHECK(ds.features() == 2);
  CHECK(ds.feature_names() == std::vector<std::string>{"a", "b"});
  CHECK(ds.table->label(1) == ds.label_of("y"));
  CHECK_THROWS_WITH_AS(load_csv(path.string(), "class"), doctest::Contains("'class'"), PreconditionError);
  CHECK_THROWS_WITH_AS(parse_csv("a,label\n1,x\nfoo,y\n", "label"), doctest::Contains("row 3, column 'a'"),
                       PreconditionError);
  CHECK_THROWS_AS(load_csv("/nonexistent.csv", "label"), IoError);

  SUBCASE("round trip is bit exact") {
    Rng r(1);
    std::ostringstream s;
    s << "u,v,label\n";
    for (int i = 0; i < 200; ++i) s << format_real(r.uniform() * 1e6 - 5e5) << ',' << format_real(std::ldexp(r.uniform(), -900)) << ',' << r.below(3) << '\n';
    const auto a = parse_csv(s.str(), "label");
    const auto out = scratch("rt.csv");
    write_csv(a, out.string());
    const auto b = load_csv(out.string(), "label");
    REQUIRE(b.rows() == a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      CHECK(b.table->label(i) == a.table->label(i));
      for (std::size_t j = 0; j < 2; ++j) CHECK(b.table->point(i).x[j] == a.table->point(i).x[j]);
    }
  }
}

TEST_CASE("partitions") {
  const auto ds = parse_csv(blob_csv(100, 4), "cls");
  SUBCASE("random-k conserves rows") {
    PartitionSpec spec;
    spec.k = 10;
    const auto parts = partition_rows(ds, spec, 7);
    std::size_t total = 0;
    for (const auto& p : parts) {
      CHECK(p.size() >= 1);
      total += p.size();
    }
    CHECK(total == 100);
    CHECK(partition_rows(ds, spec, 7) == parts);
  }
  SUBCASE("class-dup copies the second class") {
    PartitionSpec spec;
    spec.strategy = PartitionStrategy::class_dup;
    spec.k = 10;
    const auto parts = partition_rows(ds, spec, 0);
    for (std::size_t i = 2; i < 10; ++i) CHECK(parts[i] == parts[1]);
    CHECK(parts[0].size() + parts[1].size() == 100);
    for (auto r : parts[0]) CHECK(ds.label_names.at(ds.table->label(r)) == "gamma");
    const auto oracles = partition(ds, spec, 0);
    CHECK(oracles.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) CHECK(oracles[i].player() == i);
  }
  SUBCASE("feature-threshold splits at the median") {
    PartitionSpec spec;
    spec.strategy = PartitionStrategy::feature_threshold;
    spec.k = 4;
    const auto parts = partition_rows(ds, spec, 0);
    CHECK(parts[0].size() == 50);
    CHECK(parts[1].size() == 50);
    CHECK(parts[3] == parts[1]);
  }
  SUBCASE("feature-grid gives quantile cells") {
    PartitionSpec spec;
    spec.strategy = PartitionStrategy::feature_grid;
    spec.k = 4;
    const auto parts = partition_rows(ds, spec, 0);
    REQUIRE(parts.size() == 4);
    std::size_t total = 0;
    for (const auto& p : parts) {
      CHECK(!p.empty());
      total += p.size();
    }
    CHECK(total == 100);
    CHECK(parts[0].size() + parts[1].size() == 50);
  }
  SUBCASE("empty parts are rejected") {
    PartitionSpec spec;
    spec.k = 200;
    CHECK_THROWS_AS(partition_rows(ds, spec, 0), PreconditionError);
  }
  SUBCASE("dataset instances refuse exact tests") {
    PartitionSpec spec;
    spec.k = 3;
    const auto inst = dataset_instance(ds, spec, 1);
    RunConfig c;
    c.test_mode = TestMode::exact;
    CHECK_THROWS_AS(mweights(inst, c), PreconditionError);
    c.test_mode = TestMode::sampled;
    c.rounds_override = 3;
    c.profile = SampleSizeProfile::tuned();
    const auto r = mweights(inst, c);
    CHECK_FALSE(r.player_errors.has_value());
    CHECK_FALSE(r.diagnostics[0].chi.has_value());
  }
}

TEST_CASE("diagnostics csv") {
  const auto inst = gen_psi(4, 2, 0.1, 1).instance();
  RunConfig c;
  c.algorithm = Algorithm::basic_mw;
  c.test_mode = TestMode::exact;
  const auto r = run_algorithm(inst, c);
  std::ostringstream out;
  write_diagnostics(out, r.diagnostics);
  const auto text = out.str();
  CHECK(text.rfind("t,W,Q,chi,psi_count\n0,4,", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(r.diagnostics.size() + 1));
}
