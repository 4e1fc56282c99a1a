#include "colearn/weights.hpp"

#include <algorithm>
#include <cmath>

#include "colearn/errors.hpp"

namespace colearn {

WeightState::WeightState(std::size_t k) : exponents_(k, 0) {
  detail::require(k >= 1, "WeightState: need at least one player");
}

double WeightState::weight(std::size_t i) const {
  return std::ldexp(1.0, static_cast<int>(exponents_.at(i)));
}

double WeightState::log_total() const {
  const auto top = *std::max_element(exponents_.begin(), exponents_.end());
  double scaled = 0.0;
  for (auto c : exponents_) scaled += std::ldexp(1.0, static_cast<int>(c) - static_cast<int>(top));
  return static_cast<double>(top) * std::log(2.0) + std::log(scaled);
}

std::vector<double> WeightState::probabilities() const {
  const auto top = *std::max_element(exponents_.begin(), exponents_.end());
  std::vector<double> p(exponents_.size());
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::ldexp(1.0, static_cast<int>(exponents_[i]) - static_cast<int>(top));
    total += p[i];
  }
  for (auto& v : p) v /= total;
  return p;
}

void WeightState::advance(const std::vector<bool>& excluded) {
  detail::require(excluded.size() == exponents_.size(), "WeightState::advance: size mismatch");
  for (std::size_t i = 0; i < excluded.size(); ++i)
    if (excluded[i]) ++exponents_[i];
  ++round_;
}

std::vector<double> normalize_weights(std::span<const double> weights) {
  detail::require(!weights.empty(), "normalize_weights: no weights");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InvariantError("normalize_weights: weights must be positive and finite");
    total += w;
  }
  std::vector<double> p(weights.begin(), weights.end());
  for (auto& v : p) v /= total;
  return p;
}

std::vector<double> normalize_weights(const WeightState& state) { return state.probabilities(); }

}  // namespace colearn
