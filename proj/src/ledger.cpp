#include "colearn/ledger.hpp"

#include <algorithm>
#include <numeric>

#include "colearn/errors.hpp"

namespace colearn {
namespace {

std::size_t phase_slot(Phase phase) {
  detail::require(phase != Phase::holdout, "SampleLedger: holdout draws are not charged");
  return static_cast<std::size_t>(phase);
}

}  // namespace

SampleLedger::SampleLedger(std::size_t k) : totals_(k, Counts{0, 0}) {}

void SampleLedger::charge(std::size_t player, std::size_t round, Phase phase, std::uint64_t n) {
  detail::require(player < totals_.size(), "SampleLedger::charge: player out of range");
  const std::size_t slot = phase_slot(phase);
  if (by_round_.size() <= round) by_round_.resize(round + 1, std::vector<Counts>(totals_.size(), Counts{0, 0}));
  by_round_[round][player][slot] += n;
  totals_[player][slot] += n;
}

std::uint64_t SampleLedger::total() const noexcept {
  std::uint64_t t = 0;
  for (const auto& c : totals_) t += c[0] + c[1];
  return t;
}

std::uint64_t SampleLedger::total(Phase phase) const noexcept {
  if (phase == Phase::holdout) return 0;
  std::uint64_t t = 0;
  for (const auto& c : totals_) t += c[static_cast<std::size_t>(phase)];
  return t;
}

std::uint64_t SampleLedger::player_total(std::size_t player) const {
  detail::require(player < totals_.size(), "SampleLedger: player out of range");
  return totals_[player][0] + totals_[player][1];
}

std::uint64_t SampleLedger::player_total(std::size_t player, Phase phase) const {
  detail::require(player < totals_.size(), "SampleLedger: player out of range");
  return totals_[player][phase_slot(phase)];
}

std::uint64_t SampleLedger::round_total(std::size_t round) const {
  if (round >= by_round_.size()) return 0;
  std::uint64_t t = 0;
  for (const auto& c : by_round_[round]) t += c[0] + c[1];
  return t;
}

std::uint64_t SampleLedger::count(std::size_t round, std::size_t player, Phase phase) const {
  detail::require(player < totals_.size(), "SampleLedger: player out of range");
  if (round >= by_round_.size()) return 0;
  return by_round_[round][player][phase_slot(phase)];
}

std::vector<std::uint64_t> SampleLedger::per_player(std::optional<Phase> phase) const {
  std::vector<std::uint64_t> out(totals_.size());
  for (std::size_t i = 0; i < totals_.size(); ++i)
    out[i] = phase ? player_total(i, *phase) : player_total(i);
  return out;
}

double balance_ratio(std::span<const std::uint64_t> counts) {
  detail::require(!counts.empty(), "balance_ratio: no players");
  const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  detail::require(total > 0, "balance_ratio: empty ledger");
  const auto largest = *std::max_element(counts.begin(), counts.end());
  return static_cast<double>(largest) * static_cast<double>(counts.size()) / static_cast<double>(total);
}

double balance_ratio(const SampleLedger& ledger, std::optional<Phase> phase) {
  const auto counts = ledger.per_player(phase);
  return balance_ratio(counts);
}

}  // namespace colearn
