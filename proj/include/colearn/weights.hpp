#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace colearn {

/// Multiplicative weights over k players. Every weight is an exact power of
/// two, w_i = 2^{c_i}, where c_i counts the past rounds that excluded player i;
/// the state stores the exponents so long runs cannot overflow.
class WeightState {
 public:
  explicit WeightState(std::size_t k);

  std::size_t players() const noexcept { return exponents_.size(); }
  std::size_t round() const noexcept { return round_; }
  std::span<const std::uint32_t> exponents() const noexcept { return exponents_; }

  /// 2^{c_i}; +inf once the exponent leaves the double range.
  double weight(std::size_t i) const;
  /// ln of the total weight, computed relative to the largest exponent.
  double log_total() const;
  /// p(i) = w_i / sum_j w_j.
  std::vector<double> probabilities() const;

  /// Doubles the weight of every player flagged in `excluded`, then advances
  /// the round counter.
  void advance(const std::vector<bool>& excluded);

  friend bool operator==(const WeightState&, const WeightState&) = default;

 private:
  std::vector<std::uint32_t> exponents_;
  std::size_t round_ = 0;
};

/// Normalizes positive weights into a probability vector. Throws
/// InvariantError on a zero, negative or non-finite weight.
std::vector<double> normalize_weights(std::span<const double> weights);
std::vector<double> normalize_weights(const WeightState& state);

}  // namespace colearn
