#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace colearn {

/// Sampling phases. Only learning and test draws are charged; holdout draws
/// used for evaluation are free.
enum class Phase : std::uint8_t { learning = 0, test = 1, holdout = 2 };

/// Per-player, per-round, per-phase draw counts. Counters only grow.
class SampleLedger {
 public:
  explicit SampleLedger(std::size_t k = 0);

  void charge(std::size_t player, std::size_t round, Phase phase, std::uint64_t n);

  std::size_t players() const noexcept { return totals_.size(); }
  std::size_t rounds() const noexcept { return by_round_.size(); }

  std::uint64_t total() const noexcept;
  std::uint64_t total(Phase phase) const noexcept;
  std::uint64_t player_total(std::size_t player) const;
  std::uint64_t player_total(std::size_t player, Phase phase) const;
  std::uint64_t round_total(std::size_t round) const;
  std::uint64_t count(std::size_t round, std::size_t player, Phase phase) const;

  /// Per-player counts, optionally restricted to one phase.
  std::vector<std::uint64_t> per_player(std::optional<Phase> phase = std::nullopt) const;

  friend bool operator==(const SampleLedger&, const SampleLedger&) = default;

 private:
  using Counts = std::array<std::uint64_t, 2>;
  std::vector<Counts> totals_;
  std::vector<std::vector<Counts>> by_round_;
};

/// max_i count_i / (total / k); throws when the total is zero.
double balance_ratio(std::span<const std::uint64_t> per_player_counts);
double balance_ratio(const SampleLedger& ledger, std::optional<Phase> phase = std::nullopt);

}  // namespace colearn
