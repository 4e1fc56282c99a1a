#include "colearn/chernoff.hpp"

#include <cmath>

#include "colearn/errors.hpp"
#include "colearn/sample_size.hpp"

namespace colearn {
namespace {

void check(double r, double mu) {
  detail::require(r >= 0.0 && r <= 1.0, "chernoff: relative deviation must lie in [0, 1]");
  detail::require(mu >= 0.0 && mu <= 1.0, "chernoff: mean must lie in [0, 1]");
}

}  // namespace

double chernoff_lower_tail(double r, std::uint64_t n, double mu) {
  check(r, mu);
  return std::exp(-r * r * static_cast<double>(n) * mu / 2.0);
}

double chernoff_upper_tail(double r, std::uint64_t n, double mu) {
  check(r, mu);
  return std::exp(-r * r * static_cast<double>(n) * mu / 3.0);
}

std::uint64_t chernoff_lower_draws(double r, double mu, double failure) {
  check(r, mu);
  detail::require(r > 0.0 && mu > 0.0, "chernoff: need positive deviation and mean");
  detail::require(failure > 0.0 && failure < 1.0, "chernoff: failure must lie in (0, 1)");
  return ceil_count(2.0 * std::log(1.0 / failure) / (r * r * mu));
}

std::uint64_t chernoff_upper_draws(double r, double mu, double failure) {
  check(r, mu);
  detail::require(r > 0.0 && mu > 0.0, "chernoff: need positive deviation and mean");
  detail::require(failure > 0.0 && failure < 1.0, "chernoff: failure must lie in (0, 1)");
  return ceil_count(3.0 * std::log(1.0 / failure) / (r * r * mu));
}

TestErrorBounds accuracy_test_bounds(double epsilon, std::uint64_t draws) {
  detail::require(epsilon > 0.0 && epsilon <= 1.0, "accuracy_test_bounds: epsilon must lie in (0, 1]");
  // Worst cases sit on the boundaries: mean eps/12 must not exceed eps/6
  // (r = 1), mean eps/4 must not fall to eps/6 (r = 1/3).
  return {chernoff_upper_tail(1.0, draws, epsilon / 12.0), chernoff_lower_tail(1.0 / 3.0, draws, epsilon / 4.0)};
}

}  // namespace colearn
