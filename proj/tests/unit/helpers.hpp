#pragma once

#include <utility>
#include <vector>

#include "colearn/distribution.hpp"
#include "colearn/hypothesis.hpp"
#include "colearn/hypothesis_class.hpp"

namespace colearn::testing {

// Finite points a = 0, b = 1, ... as examples with features {id}.
inline LabeledExample pt(PointId id, Label y) { return {id, {static_cast<double>(id)}, y}; }

// Hypothesis given by its labels on ids 0..n-1 (and ⊥ -> 0 when `bottom`).
inline Hypothesis labels(std::vector<Label> table, bool bottom = false) {
  const FiniteDomain dom{0, static_cast<std::int64_t>(table.size()), bottom};
  if (bottom) table.push_back(0);
  return Hypothesis::member(TableMember{"test", std::nullopt, dom, table, 0});
}

inline PointMassDistribution law(std::vector<std::pair<LabeledExample, double>> support) {
  return PointMassDistribution::from_examples(support);
}

}  // namespace colearn::testing
