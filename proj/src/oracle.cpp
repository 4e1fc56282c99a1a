#include "colearn/oracle.hpp"

#include <cmath>
#include <optional>
#include <variant>

#include "colearn/errors.hpp"

namespace colearn {
namespace {

constexpr std::uint64_t kMixtureStreamTag = 0x6D6978ull << 32;

struct Empirical {
  std::shared_ptr<const ExampleTable> table;
  std::vector<std::uint32_t> rows;
};

struct Mixture {
  std::vector<double> p;
  AliasTable picker;
  std::vector<SampleOracle> components;
};

}  // namespace

struct SampleOracle::Impl {
  std::size_t player = kNoPlayer;
  std::variant<PointMassDistribution, Empirical, Mixture> backing;
};

SampleOracle SampleOracle::point_mass(std::size_t player, PointMassDistribution d) {
  return SampleOracle(std::make_shared<const Impl>(Impl{player, std::move(d)}));
}

SampleOracle SampleOracle::empirical(std::size_t player, std::shared_ptr<const ExampleTable> table,
                                     std::vector<std::uint32_t> rows) {
  detail::require(table != nullptr, "SampleOracle::empirical: null table");
  detail::require(!rows.empty(), "SampleOracle::empirical: empty partition");
  for (auto r : rows) detail::require(r < table->size(), "SampleOracle::empirical: row out of range");
  return SampleOracle(std::make_shared<const Impl>(Impl{player, Empirical{std::move(table), std::move(rows)}}));
}

std::size_t SampleOracle::player() const noexcept { return impl_->player; }

const std::shared_ptr<const ExampleTable>& SampleOracle::table() const noexcept {
  return std::visit(
      [](const auto& b) -> const std::shared_ptr<const ExampleTable>& {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, PointMassDistribution>) {
          return b.table();
        } else if constexpr (std::is_same_v<T, Empirical>) {
          return b.table;
        } else {
          return b.components.front().table();
        }
      },
      impl_->backing);
}

const PointMassDistribution* SampleOracle::point_mass() const noexcept {
  return std::get_if<PointMassDistribution>(&impl_->backing);
}

std::span<const std::uint32_t> SampleOracle::partition_rows() const noexcept {
  if (const auto* e = std::get_if<Empirical>(&impl_->backing)) return e->rows;
  return {};
}

bool SampleOracle::is_mixture() const noexcept { return std::holds_alternative<Mixture>(impl_->backing); }

SampleOracle SampleOracle::reassigned(std::size_t player) const {
  detail::require(!is_mixture(), "SampleOracle::reassigned: mixtures have no owner");
  auto copy = std::make_shared<Impl>(*impl_);
  copy->player = player;
  return SampleOracle(std::move(copy));
}

Sample SampleOracle::draw(std::size_t n, const DrawContext& ctx) const {
  Sample s;
  s.table = table();
  s.rows.reserve(n);
  draw_into(n, ctx, s.rows);
  return s;
}

void SampleOracle::draw_into(std::size_t n, const DrawContext& ctx, std::vector<std::uint32_t>& out) const {
  if (n == 0) return;
  const auto phase_tag = static_cast<std::uint64_t>(ctx.phase);
  if (const auto* mix = std::get_if<Mixture>(&impl_->backing)) {
    // Pick components first, then let each component draw its share from
    // its own stream. The resulting multiset has the mixture law.
    Rng picker = Rng::stream(ctx.seed, {kMixtureStreamTag, ctx.round, phase_tag});
    std::vector<std::size_t> counts(mix->components.size(), 0);
    for (std::size_t j = 0; j < n; ++j) ++counts[mix->picker.draw(picker)];
    for (std::size_t i = 0; i < counts.size(); ++i) mix->components[i].draw_into(counts[i], ctx, out);
    return;
  }
  detail::require(impl_->player != kNoPlayer, "SampleOracle::draw: oracle has no owning player");
  Rng rng = Rng::stream(ctx.seed, {impl_->player, ctx.round, phase_tag});
  if (const auto* d = std::get_if<PointMassDistribution>(&impl_->backing)) {
    for (std::size_t j = 0; j < n; ++j) out.push_back(d->draw(rng));
  } else {
    const auto& e = std::get<Empirical>(impl_->backing);
    for (std::size_t j = 0; j < n; ++j) out.push_back(e.rows[rng.below(e.rows.size())]);
  }
  if (ctx.ledger != nullptr && ctx.phase != Phase::holdout) ctx.ledger->charge(impl_->player, ctx.round, ctx.phase, n);
}

SampleOracle mixture_sampler(std::span<const double> p, std::span<const SampleOracle> oracles) {
  detail::require(!oracles.empty(), "mixture_sampler: no oracles");
  detail::require(p.size() == oracles.size(), "mixture_sampler: dimension mismatch between p and oracles");
  double total = 0.0;
  for (double v : p) {
    detail::require(v >= 0.0 && std::isfinite(v), "mixture_sampler: probabilities must be nonnegative");
    total += v;
  }
  detail::require(std::abs(total - 1.0) <= kMassTolerance, "mixture_sampler: probabilities must sum to 1");
  const auto& table = oracles.front().table();
  for (const auto& o : oracles)
    detail::require(o.table() == table, "mixture_sampler: components must share one example table");
  Mixture mix{std::vector<double>(p.begin(), p.end()), AliasTable(p),
              std::vector<SampleOracle>(oracles.begin(), oracles.end())};
  return SampleOracle(std::make_shared<const SampleOracle::Impl>(SampleOracle::Impl{kNoPlayer, std::move(mix)}));
}

}  // namespace colearn
