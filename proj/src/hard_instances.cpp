#include "colearn/hard_instances.hpp"

#include <numeric>
#include <utility>

#include "colearn/errors.hpp"
#include "colearn/rng.hpp"

namespace colearn {
namespace {

constexpr std::uint64_t kTargetTag = 1;
constexpr std::uint64_t kCoinTag = 2;
constexpr std::uint64_t kShuffleTag = 3;

std::vector<Label> random_target(const FiniteDomain& domain, std::uint64_t seed) {
  Rng rng = Rng::stream(seed, {kTargetTag});
  std::vector<Label> table(domain.slots(), 0);
  for (std::int64_t j = 0; j < domain.count; ++j) table[static_cast<std::size_t>(j)] = rng.bernoulli(0.5) ? 1 : 0;
  return table;
}

Hypothesis table_hypothesis(const FiniteHypothesisClass& c, const std::vector<Label>& table) {
  std::optional<std::uint64_t> index;
  if (c.domain().count < 64) {
    std::uint64_t v = 0;
    for (std::int64_t j = 0; j < c.domain().count; ++j)
      if (table[static_cast<std::size_t>(j)] != 0) v |= std::uint64_t{1} << j;
    index = v;
  }
  return Hypothesis::member(TableMember{c.name(), index, c.domain(), table, 0});
}

// One table row per domain slot, labeled by the target.
std::shared_ptr<const ExampleTable> domain_table(const FiniteDomain& domain, const std::vector<Label>& target) {
  std::vector<PointId> ids(domain.slots());
  for (std::size_t s = 0; s < ids.size(); ++s) ids[s] = domain.id_at(s);
  return ExampleTable::finite(ids, target);
}

HardInstance skeleton(std::string generator, std::uint64_t seed, std::size_t k, std::size_t d, double eps,
                      FiniteDomain domain, std::vector<Label> target) {
  HardInstance h;
  h.generator = std::move(generator);
  h.seed = seed;
  h.k = k;
  h.d = d;
  h.epsilon = eps;
  h.domain = domain;
  h.hypothesis_class = FiniteHypothesisClass::all_binary(domain);
  h.target = table_hypothesis(h.hypothesis_class, target);
  h.target_table = std::move(target);
  h.permutation.resize(k);
  std::iota(h.permutation.begin(), h.permutation.end(), std::size_t{0});
  return h;
}

// Law over domain slots: (slot, mass) pairs.
PointMassDistribution law(const std::shared_ptr<const ExampleTable>& table,
                          const std::vector<std::pair<std::size_t, double>>& support) {
  std::vector<std::uint32_t> rows;
  std::vector<double> masses;
  for (const auto& [slot, m] : support) {
    rows.push_back(static_cast<std::uint32_t>(slot));
    masses.push_back(m);
  }
  return PointMassDistribution(table, std::move(rows), std::move(masses));
}

}  // namespace

Instance HardInstance::instance() const {
  Instance inst;
  inst.id = generator + "-k" + std::to_string(k) + "-d" + std::to_string(d);
  for (std::size_t i = 0; i < players.size(); ++i) inst.players.push_back(SampleOracle::point_mass(i, players[i]));
  inst.learner = hypothesis_class;
  inst.capacity = static_cast<double>(hypothesis_class.vc_dimension());
  inst.target = target;
  inst.domain = domain;
  return inst;
}

HardInstance gen_phi(std::size_t d, double epsilon, std::uint64_t seed) {
  detail::require(d >= 1, "gen_phi: d must be at least 1");
  detail::require(epsilon > 0.0 && 8.0 * epsilon < 1.0, "gen_phi: need 0 < 8 eps < 1");
  const FiniteDomain domain{0, static_cast<std::int64_t>(d), true};
  HardInstance h = skeleton("phi", seed, 1, d, epsilon, domain, random_target(domain, seed));
  const auto table = domain_table(domain, h.target_table);
  std::vector<std::pair<std::size_t, double>> support;
  for (std::size_t j = 0; j < d; ++j) support.emplace_back(j, 8.0 * epsilon / static_cast<double>(d));
  support.emplace_back(d, 1.0 - 8.0 * epsilon);
  h.players.push_back(law(table, support));
  return h;
}

HardInstance gen_big_phi(std::size_t k, std::size_t d, double epsilon, std::uint64_t seed) {
  detail::require(k >= 1, "gen_big_phi: k must be at least 1");
  detail::require(d > k, "gen_big_phi: need d > k");
  detail::require(d % k == 0, "gen_big_phi: k must divide d");
  detail::require(epsilon > 0.0 && 8.0 * epsilon < 1.0, "gen_big_phi: need 0 < 8 eps < 1");
  const FiniteDomain domain{0, static_cast<std::int64_t>(d), true};
  HardInstance h = skeleton("big-phi", seed, k, d, epsilon, domain, random_target(domain, seed));
  const auto table = domain_table(domain, h.target_table);
  const std::size_t block = d / k;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::pair<std::size_t, double>> support;
    for (std::size_t j = 0; j < block; ++j) support.emplace_back(i * block + j, 8.0 * epsilon / static_cast<double>(block));
    support.emplace_back(d, 1.0 - 8.0 * epsilon);
    h.players.push_back(law(table, support));
  }
  return h;
}

HardInstance gen_psi(std::size_t k, std::size_t d, double epsilon, std::uint64_t seed) {
  detail::require(d >= 1, "gen_psi: d must be at least 1");
  detail::require(k >= d && k % d == 0, "gen_psi: d must divide k");
  detail::require(epsilon > 0.0 && 2.0 * epsilon < 1.0, "gen_psi: need 0 < 2 eps < 1");
  const FiniteDomain domain{1, static_cast<std::int64_t>(d), true};
  HardInstance h = skeleton("psi", seed, k, d, epsilon, domain, random_target(domain, seed));
  const auto table = domain_table(domain, h.target_table);
  const std::size_t bottom = d;

  Rng coins = Rng::stream(seed, {kCoinTag});
  std::vector<PointMassDistribution> base;
  for (std::size_t i = 0; i < d; ++i) {
    if (coins.bernoulli(0.5)) {
      base.push_back(law(table, {{bottom, 1.0}}));
    } else {
      base.push_back(law(table, {{i, 2.0 * epsilon}, {bottom, 1.0 - 2.0 * epsilon}}));
    }
  }

  Rng shuffle = Rng::stream(seed, {kShuffleTag});
  for (std::size_t i = k; i > 1; --i) std::swap(h.permutation[i - 1], h.permutation[shuffle.below(i)]);
  for (std::size_t p = 0; p < k; ++p) h.players.push_back(base[h.permutation[p] % d]);
  return h;
}

HardInstance gen_class_dup(std::size_t k, std::size_t outlier_points, std::size_t common_points,
                           std::uint64_t seed) {
  detail::require(k >= 2, "gen_class_dup: need at least two players");
  detail::require(outlier_points >= 1 && common_points >= 1, "gen_class_dup: empty support");
  const std::size_t n = outlier_points + common_points;
  const FiniteDomain domain{0, static_cast<std::int64_t>(n), false};
  std::vector<Label> target(n, 0);
  for (std::size_t j = 0; j < outlier_points; ++j) target[j] = 1;
  HardInstance h = skeleton("class-dup", seed, k, outlier_points, 0.0, domain, std::move(target));
  const auto table = domain_table(domain, h.target_table);

  std::vector<std::pair<std::size_t, double>> outlier, common;
  for (std::size_t j = 0; j < outlier_points; ++j) outlier.emplace_back(j, 1.0 / static_cast<double>(outlier_points));
  for (std::size_t j = 0; j < common_points; ++j)
    common.emplace_back(outlier_points + j, 1.0 / static_cast<double>(common_points));
  h.players.push_back(law(table, outlier));
  const auto shared = law(table, common);
  for (std::size_t i = 1; i < k; ++i) h.players.push_back(shared);
  return h;
}

HardInstance generate(const std::string& generator, std::size_t k, std::size_t d, double epsilon,
                      std::uint64_t seed) {
  if (generator == "phi") {
    detail::require(k == 1, "phi instances have exactly one player");
    return gen_phi(d, epsilon, seed);
  }
  if (generator == "big-phi") return gen_big_phi(k, d, epsilon, seed);
  if (generator == "psi") return gen_psi(k, d, epsilon, seed);
  if (generator == "class-dup") {
    HardInstance h = gen_class_dup(k, d, d, seed);
    h.epsilon = epsilon;
    return h;
  }
  throw PreconditionError("unknown generator '" + generator + "' (expected phi|big-phi|psi|class-dup)");
}

}  // namespace colearn
