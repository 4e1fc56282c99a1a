#pragma once

#include <cstddef>

#include "colearn/example.hpp"
#include "colearn/hypothesis.hpp"

namespace colearn {

struct TreeParams {
  std::size_t max_depth = 12;
  std::size_t min_leaf = 1;

  friend bool operator==(const TreeParams&, const TreeParams&) = default;
};

/// Greedy top-down CART-style tree. Each impure node takes the
/// (feature, threshold) split with the lowest weighted Gini impurity among
/// splits leaving at least `min_leaf` rows per side; ties go to the lower
/// feature index, then the lower threshold. Leaves predict the majority
/// label, ties to the smallest label.
Hypothesis tree_learn(const Sample& s, const TreeParams& params = {});

}  // namespace colearn
