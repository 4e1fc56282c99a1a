#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "colearn/distribution.hpp"
#include "colearn/hypothesis.hpp"
#include "colearn/hypothesis_class.hpp"
#include "colearn/instance.hpp"

namespace colearn {

/// Synthetic collaborative instance with exact per-player laws over a finite
/// domain, a target from the all-binary class (⊥ always labeled 0), and the
/// parameters it was generated from.
struct HardInstance {
  std::string generator;
  std::uint64_t seed = 0;
  std::size_t k = 0;
  std::size_t d = 0;
  double epsilon = 0.0;

  FiniteDomain domain;
  FiniteHypothesisClass hypothesis_class = FiniteHypothesisClass::all_binary({});
  Hypothesis target = Hypothesis::stump({});
  /// Label of every domain slot under the target.
  std::vector<Label> target_table;
  std::vector<PointMassDistribution> players;
  /// Final player p is generated player permutation[p] (identity unless the
  /// generator shuffles).
  std::vector<std::size_t> permutation;

  /// Oracles, ERM learner and capacity d, ready for the algorithms.
  Instance instance() const;
};

/// k = 1: ⊥ has mass 1 - 8 eps, each of 0..d-1 has 8 eps / d.
HardInstance gen_phi(std::size_t d, double epsilon, std::uint64_t seed);

/// Player i lives on {i d/k, ..., i d/k + d/k - 1} ∪ {⊥}; ⊥ has 1 - 8 eps and
/// each own point 8 eps / (d/k). Needs k | d and d > k.
HardInstance gen_big_phi(std::size_t k, std::size_t d, double epsilon, std::uint64_t seed);

/// Domain {1..d} ∪ {⊥}. Each of d base players is, with probability 1/2, all
/// ⊥; otherwise ⊥ : 1 - 2 eps and point i : 2 eps. The block is repeated k/d
/// times and the players shuffled. Needs d | k.
HardInstance gen_psi(std::size_t k, std::size_t d, double epsilon, std::uint64_t seed);

/// One outlier and k - 1 identical players on disjoint supports: player 0 is
/// uniform over `outlier_points` points labeled 1, players 1..k-1 uniform
/// over `common_points` points labeled 0. The class is all-binary on the
/// union (capacity = its size), target fixed by the construction.
HardInstance gen_class_dup(std::size_t k, std::size_t outlier_points, std::size_t common_points,
                           std::uint64_t seed);

/// Dispatch by generator id: "phi", "big-phi", "psi", "class-dup". For
/// class-dup, d is the outlier size and the common part has d points too.
HardInstance generate(const std::string& generator, std::size_t k, std::size_t d, double epsilon,
                      std::uint64_t seed);

}  // namespace colearn
