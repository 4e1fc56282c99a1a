#pragma once

#include <cstdint>

namespace colearn {

// Multiplicative Chernoff bounds for the mean X of n independent [0,1]
// variables with mean mu, relative deviation r in [0,1]:
//   P[X < (1-r) mu] < exp(-r^2 n mu / 2)
//   P[X > (1+r) mu] < exp(-r^2 n mu / 3)

double chernoff_lower_tail(double r, std::uint64_t n, double mu);
double chernoff_upper_tail(double r, std::uint64_t n, double mu);

/// Smallest n with chernoff_lower_tail(r, n, mu) <= failure.
std::uint64_t chernoff_lower_draws(double r, double mu, double failure);
/// Smallest n with chernoff_upper_tail(r, n, mu) <= failure.
std::uint64_t chernoff_upper_draws(double r, double mu, double failure);

/// Bounds on an accuracy test with `draws` samples and threshold eps/6 going
/// wrong: keeping out a player at error <= eps/12, or letting in one above
/// eps/4.
struct TestErrorBounds {
  double miss_good = 0.0;
  double admit_bad = 0.0;
};
TestErrorBounds accuracy_test_bounds(double epsilon, std::uint64_t draws);

}  // namespace colearn
