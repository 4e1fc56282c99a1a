#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "colearn/example.hpp"
#include "colearn/hypothesis.hpp"

namespace colearn {

/// Finite hypothesis class over a finite domain. Two shapes:
///  - all binary functions on the domain that send ⊥ to 0; member `index`
///    has label bit j on slot j, so the class has 2^count members and VC
///    dimension `count`;
///  - an explicit list of label tables with a declared VC dimension.
class FiniteHypothesisClass {
 public:
  static FiniteHypothesisClass all_binary(FiniteDomain domain, std::string name = "all-binary");
  static FiniteHypothesisClass explicit_members(FiniteDomain domain, std::vector<std::vector<Label>> tables,
                                                std::size_t vc_dimension, std::string name = "explicit");

  const std::string& name() const noexcept { return name_; }
  const FiniteDomain& domain() const noexcept { return domain_; }
  std::size_t vc_dimension() const noexcept { return vc_dimension_; }
  bool is_all_binary() const noexcept { return tables_.empty(); }

  /// Member count, or nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> size() const noexcept;
  Label label(std::uint64_t index, std::size_t slot) const;
  Hypothesis member(std::uint64_t index) const;

 private:
  FiniteHypothesisClass() = default;

  std::string name_;
  FiniteDomain domain_;
  std::size_t vc_dimension_ = 0;
  std::vector<std::vector<Label>> tables_;
};

/// Empirical risk minimizer over the class; ties go to the smallest member
/// index. The all-binary class is minimized slot by slot (its members form a
/// product set); explicit classes are scanned.
Hypothesis erm_learn(const Sample& s, const FiniteHypothesisClass& c);

/// Reference ERM by scanning every member. Refuses classes larger than
/// `max_members`.
Hypothesis erm_learn_exhaustive(const Sample& s, const FiniteHypothesisClass& c,
                                std::uint64_t max_members = std::uint64_t{1} << 20);

}  // namespace colearn
