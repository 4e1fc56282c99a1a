#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "colearn/distribution.hpp"
#include "colearn/example.hpp"
#include "colearn/ledger.hpp"

namespace colearn {

/// Where a draw's randomness comes from and who pays for it. Each oracle
/// derives its stream from (seed, player, round, phase).
struct DrawContext {
  std::uint64_t seed = 0;
  std::size_t round = 0;
  Phase phase = Phase::learning;
  SampleLedger* ledger = nullptr;  // null: draws are not charged
};

inline constexpr std::size_t kNoPlayer = std::numeric_limits<std::size_t>::max();

/// i.i.d. example source for one player: a point-mass distribution, a
/// dataset partition resampled with replacement, or a weighted mixture of
/// other oracles. Copies share their backing data.
class SampleOracle {
 public:
  static SampleOracle point_mass(std::size_t player, PointMassDistribution d);
  static SampleOracle empirical(std::size_t player, std::shared_ptr<const ExampleTable> table,
                                std::vector<std::uint32_t> rows);

  /// Owning player index; kNoPlayer for mixtures.
  std::size_t player() const noexcept;
  const std::shared_ptr<const ExampleTable>& table() const noexcept;
  /// The exact law when known, otherwise nullptr.
  const PointMassDistribution* point_mass() const noexcept;
  /// Backing rows of a dataset partition (empty for other kinds).
  std::span<const std::uint32_t> partition_rows() const noexcept;
  bool is_mixture() const noexcept;

  /// Draws n examples. Mixture draws pick a component per draw and charge
  /// the draw to that component's player.
  Sample draw(std::size_t n, const DrawContext& ctx) const;
  void draw_into(std::size_t n, const DrawContext& ctx, std::vector<std::uint32_t>& rows) const;

  /// This oracle with a different owning player (used to duplicate players).
  SampleOracle reassigned(std::size_t player) const;

  struct Impl;

 private:
  explicit SampleOracle(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  friend SampleOracle mixture_sampler(std::span<const double>, std::span<const SampleOracle>);

  std::shared_ptr<const Impl> impl_;
};

/// Oracle for sum_i p(i) D_i. All components must share one example table.
SampleOracle mixture_sampler(std::span<const double> p, std::span<const SampleOracle> oracles);

}  // namespace colearn
