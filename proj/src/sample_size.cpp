#include "colearn/sample_size.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "colearn/errors.hpp"

namespace colearn {

std::uint64_t ceil_count(double x) {
  detail::require(std::isfinite(x) && x >= 0.0, "ceil_count: count must be finite and nonnegative");
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, nearest)) return static_cast<std::uint64_t>(nearest);
  return static_cast<std::uint64_t>(std::ceil(x));
}

double log_in(LogBase base, double x) { return base == LogBase::natural ? std::log(x) : std::log2(x); }

double sample_size_real(double epsilon, double delta, double d, const SampleSizeProfile& profile) {
  detail::require(epsilon > 0.0 && epsilon <= 1.0, "sample_size: epsilon must lie in (0, 1]");
  detail::require(delta > 0.0 && delta < 1.0, "sample_size: delta must lie in (0, 1)");
  detail::require(d >= 0.0 && std::isfinite(d), "sample_size: d must be nonnegative");
  if (profile.mode == ProfileMode::theory) {
    detail::require(profile.theory_constant > 0.0, "sample_size: theory constant must be positive");
    return profile.theory_constant * (d + std::log(1.0 / delta)) / epsilon;
  }
  return (d + log_in(profile.tuned_log, 1.0 / delta)) / (10.0 * epsilon);
}

std::uint64_t sample_size(double epsilon, double delta, double d, const SampleSizeProfile& profile) {
  return std::max<std::uint64_t>(1, ceil_count(sample_size_real(epsilon, delta, d, profile)));
}

ProfileMode parse_profile_mode(std::string_view s) {
  if (s == "theory") return ProfileMode::theory;
  if (s == "tuned") return ProfileMode::tuned;
  throw PreconditionError("unknown profile '" + std::string(s) + "' (expected theory|tuned)");
}

std::string_view to_string(ProfileMode m) { return m == ProfileMode::theory ? "theory" : "tuned"; }

}  // namespace colearn
