#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace colearn {

/// Philox4x32-10 block function: encrypts a 128-bit counter under a 64-bit key.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// SplitMix64 finalizer; used to fold stream paths into Philox keys.
std::uint64_t mix64(std::uint64_t x);

/// Counter-based generator. Every (seed, path) pair names an independent
/// stream, so draws for one player/round/phase never depend on how many
/// values another stream consumed.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t key) noexcept;

  /// Stream keyed by a seed and a path of tags, e.g. {player, round, phase}.
  static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept { return next_u64(); }

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform integer on [0, n); n must be positive. Lemire's multiply-shift
  /// with rejection, so the result is exactly uniform.
  std::uint64_t below(std::uint64_t n) noexcept;
  bool bernoulli(double p) noexcept { return uniform() < p; }

  std::uint64_t key() const noexcept { return key_; }

 private:
  void refill() noexcept;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
};

/// Seed derivation for nested experiment structure (run index, rung, ...).
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept;

}  // namespace colearn
