#pragma once

#include <cstdint>
#include <string_view>

namespace colearn {

enum class ProfileMode { theory, tuned };
enum class LogBase { natural, two };

/// Which sample-size formula the base learner uses.
///   theory: ceil(c * (d + ln(1/delta)) / epsilon)
///   tuned:  ceil((d + log(1/delta)) / (10 * epsilon))
/// `tuned_log` picks the base of that log (and of the tuned round count).
struct SampleSizeProfile {
  ProfileMode mode = ProfileMode::theory;
  double theory_constant = 1.0;
  LogBase tuned_log = LogBase::natural;

  static SampleSizeProfile theory(double constant = 1.0) { return {ProfileMode::theory, constant, LogBase::natural}; }
  static SampleSizeProfile tuned(LogBase base = LogBase::natural) { return {ProfileMode::tuned, 1.0, base}; }
};

/// Ceiling that ignores floating-point noise within 1e-9 (relative) of an
/// integer, so ceil(2000 * ln(e)) is 2000 rather than 2001.
std::uint64_t ceil_count(double x);

double log_in(LogBase base, double x);

/// Unrounded base-learner sample size; epsilon in (0,1], delta in (0,1), d >= 0.
double sample_size_real(double epsilon, double delta, double d, const SampleSizeProfile& profile);
/// ceil of sample_size_real, at least 1.
std::uint64_t sample_size(double epsilon, double delta, double d, const SampleSizeProfile& profile);

ProfileMode parse_profile_mode(std::string_view s);
std::string_view to_string(ProfileMode m);

}  // namespace colearn
