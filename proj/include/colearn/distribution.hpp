#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "colearn/example.hpp"
#include "colearn/hypothesis.hpp"
#include "colearn/rng.hpp"

namespace colearn {

inline constexpr double kMassTolerance = 1e-12;

/// Walker/Vose alias table: O(1) draws from a fixed discrete law.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(std::span<const double> probabilities);

  std::size_t draw(Rng& rng) const noexcept {
    const double u = rng.uniform() * static_cast<double>(prob_.size());
    auto i = static_cast<std::size_t>(u);
    if (i >= prob_.size()) i = prob_.size() - 1;
    return (u - static_cast<double>(i)) < prob_[i] ? i : alias_[i];
  }
  std::size_t size() const noexcept { return prob_.size(); }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

/// Finite labeled distribution: rows of a table with probability masses.
/// Masses are nonnegative and sum to one within 1e-12; support ids are distinct.
class PointMassDistribution {
 public:
  PointMassDistribution(std::shared_ptr<const ExampleTable> table, std::vector<std::uint32_t> rows,
                        std::vector<double> masses);

  static PointMassDistribution from_examples(std::span<const std::pair<LabeledExample, double>> support);

  const std::shared_ptr<const ExampleTable>& table() const noexcept { return data_->table; }
  std::span<const std::uint32_t> rows() const noexcept { return data_->rows; }
  std::span<const double> masses() const noexcept { return data_->masses; }
  std::size_t support_size() const noexcept { return data_->rows.size(); }

  /// Mass assigned to point `id` (0 when off-support).
  double mass_of(PointId id) const noexcept;

  /// One draw; returns a table row.
  std::uint32_t draw(Rng& rng) const noexcept { return data_->rows[data_->alias.draw(rng)]; }

  /// Copies share their data; equal identities mean the same law.
  const void* identity() const noexcept { return data_.get(); }

 private:
  struct Data {
    std::shared_ptr<const ExampleTable> table;
    std::vector<std::uint32_t> rows;
    std::vector<double> masses;
    AliasTable alias;
  };
  std::shared_ptr<const Data> data_;
};

/// Probability mass of support points that g mislabels.
double exact_error(const Hypothesis& g, const PointMassDistribution& d);

/// Fraction of the sample g mislabels, counted with multiplicity. Throws on
/// an empty sample.
double empirical_error(const Hypothesis& g, const Sample& s);

/// Number of mislabeled sample elements.
std::size_t count_errors(const Hypothesis& g, const Sample& s);

}  // namespace colearn
