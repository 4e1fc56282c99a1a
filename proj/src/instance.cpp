#include "colearn/instance.hpp"

#include <map>

#include "colearn/errors.hpp"

namespace colearn {

bool Instance::has_exact_errors() const noexcept {
  for (const auto& p : players)
    if (p.point_mass() == nullptr) return false;
  return !players.empty();
}

std::vector<double> Instance::exact_errors(const Hypothesis& g) const {
  detail::require(has_exact_errors(), "exact errors need point-mass players (dataset-backed instance?)");
  // Duplicated players share their law; evaluate each distinct law once.
  std::map<const void*, double> cache;
  std::vector<double> errs(players.size());
  for (std::size_t i = 0; i < players.size(); ++i) {
    const auto& d = *players[i].point_mass();
    auto [it, inserted] = cache.try_emplace(d.identity(), 0.0);
    if (inserted) it->second = exact_error(g, d);
    errs[i] = it->second;
  }
  return errs;
}

void Instance::validate() const {
  detail::require(!players.empty(), "instance has no players");
  for (std::size_t i = 0; i < players.size(); ++i) {
    detail::require(players[i].player() == i, "instance: player oracle index mismatch");
    detail::require(players[i].table() == players.front().table(), "instance: players must share one example table");
  }
}

}  // namespace colearn
