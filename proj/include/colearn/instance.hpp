#pragma once

#include <optional>
#include <string>
#include <vector>

#include "colearn/hypothesis.hpp"
#include "colearn/learner.hpp"
#include "colearn/oracle.hpp"

namespace colearn {

/// k players' labeled distributions plus what the algorithms need to learn
/// on them. Player i's oracle reports player() == i and all oracles share a
/// single example table.
struct Instance {
  std::string id;
  std::vector<SampleOracle> players;
  Learner learner = TreeParams{};
  /// VC dimension of the learner's class (default capacity knob).
  double capacity = 1.0;
  std::optional<Hypothesis> target;
  /// Finite instance space, when there is one; enables plurality tables.
  std::optional<FiniteDomain> domain;

  std::size_t k() const noexcept { return players.size(); }
  /// True when every player exposes its exact point-mass law.
  bool has_exact_errors() const noexcept;
  /// err_{D_i}(g) for every player; throws when a player lacks a point-mass law.
  std::vector<double> exact_errors(const Hypothesis& g) const;

  /// Throws PreconditionError when the players are inconsistent.
  void validate() const;
};

}  // namespace colearn
