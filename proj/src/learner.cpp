#include "colearn/learner.hpp"

namespace colearn {

Hypothesis fit(const Learner& learner, const Sample& s) {
  if (const auto* c = std::get_if<FiniteHypothesisClass>(&learner)) return erm_learn(s, *c);
  return tree_learn(s, std::get<TreeParams>(learner));
}

Hypothesis pac_learn(const SampleOracle& oracle, double epsilon, double delta, double d, const Learner& learner,
                     const SampleSizeProfile& profile, const DrawContext& ctx) {
  const auto n = sample_size(epsilon, delta, d, profile);
  const Sample s = oracle.draw(n, ctx);
  return fit(learner, s);
}

}  // namespace colearn
