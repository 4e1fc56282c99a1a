#include "colearn/distribution.hpp"

#include <cmath>
#include <numeric>
#include <unordered_set>

#include "colearn/errors.hpp"

namespace colearn {

AliasTable::AliasTable(std::span<const double> p) : prob_(p.size()), alias_(p.size()) {
  detail::require(!p.empty(), "AliasTable: empty distribution");
  const double n = static_cast<double>(p.size());
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  std::vector<double> scaled(p.size());
  std::vector<std::uint32_t> small, large;
  for (std::size_t i = 0; i < p.size(); ++i) {
    scaled[i] = p[i] / total * n;
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const auto s = small.back();
    small.pop_back();
    const auto l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (auto i : large) {
    prob_[i] = 1.0;
    alias_[i] = i;
  }
  // Leftovers from rounding drift carry (nearly) full probability.
  for (auto i : small) {
    prob_[i] = 1.0;
    alias_[i] = i;
  }
}

PointMassDistribution::PointMassDistribution(std::shared_ptr<const ExampleTable> table,
                                             std::vector<std::uint32_t> rows, std::vector<double> masses) {
  detail::require(table != nullptr, "PointMassDistribution: null table");
  detail::require(!rows.empty() && rows.size() == masses.size(),
                  "PointMassDistribution: rows and masses must be nonempty and equal length");
  double total = 0.0;
  std::unordered_set<PointId> seen;
  seen.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!(masses[i] >= 0.0)) throw InvariantError("PointMassDistribution: negative or NaN mass");
    if (rows[i] >= table->size()) throw PreconditionError("PointMassDistribution: row out of range");
    if (!seen.insert(table->id(rows[i])).second)
      throw InvariantError("PointMassDistribution: duplicate support point");
    total += masses[i];
  }
  if (std::abs(total - 1.0) > kMassTolerance)
    throw InvariantError("PointMassDistribution: masses must sum to 1");
  AliasTable alias(masses);
  data_ = std::make_shared<const Data>(Data{std::move(table), std::move(rows), std::move(masses), std::move(alias)});
}

PointMassDistribution PointMassDistribution::from_examples(
    std::span<const std::pair<LabeledExample, double>> support) {
  detail::require(!support.empty(), "PointMassDistribution: empty support");
  auto table = std::make_shared<ExampleTable>(support.front().first.features.size());
  std::vector<std::uint32_t> rows;
  std::vector<double> masses;
  for (const auto& [example, mass] : support) {
    rows.push_back(table->add(example));
    masses.push_back(mass);
  }
  return PointMassDistribution(std::move(table), std::move(rows), std::move(masses));
}

double PointMassDistribution::mass_of(PointId id) const noexcept {
  const auto& d = *data_;
  for (std::size_t i = 0; i < d.rows.size(); ++i)
    if (d.table->id(d.rows[i]) == id) return d.masses[i];
  return 0.0;
}

double exact_error(const Hypothesis& g, const PointMassDistribution& d) {
  const auto& table = *d.table();
  double err = 0.0;
  const auto rows = d.rows();
  const auto masses = d.masses();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (masses[i] == 0.0) continue;
    if (g(table.point(rows[i])) != table.label(rows[i])) err += masses[i];
  }
  return err;
}

std::size_t count_errors(const Hypothesis& g, const Sample& s) {
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (g(s.point(i)) != s.label(i)) ++wrong;
  return wrong;
}

double empirical_error(const Hypothesis& g, const Sample& s) {
  detail::require(!s.empty(), "empirical_error: empty sample");
  return static_cast<double>(count_errors(g, s)) / static_cast<double>(s.size());
}

}  // namespace colearn
