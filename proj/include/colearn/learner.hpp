#pragma once

#include <variant>

#include "colearn/hypothesis.hpp"
#include "colearn/hypothesis_class.hpp"
#include "colearn/oracle.hpp"
#include "colearn/sample_size.hpp"
#include "colearn/tree.hpp"

namespace colearn {

/// The blackbox base learner: ERM over a finite class (synthetic instances)
/// or a decision tree (dataset-backed instances).
using Learner = std::variant<FiniteHypothesisClass, TreeParams>;

Hypothesis fit(const Learner& learner, const Sample& s);

/// Draws sample_size(epsilon, delta, d, profile) examples from the oracle
/// (charged through ctx.ledger) and fits the learner on them. `d` is the
/// capacity parameter fed to the sample-size formula; experiments sweep it
/// as a budget knob independently of the class's true VC dimension.
Hypothesis pac_learn(const SampleOracle& oracle, double epsilon, double delta, double d, const Learner& learner,
                     const SampleSizeProfile& profile, const DrawContext& ctx);

}  // namespace colearn
