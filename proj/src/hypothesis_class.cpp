#include "colearn/hypothesis_class.hpp"

#include <limits>
#include <utility>

#include "colearn/errors.hpp"

namespace colearn {
namespace {

// Sample tallies per domain slot: how often each label occurs there.
struct SlotTallies {
  std::vector<std::vector<std::pair<Label, std::uint64_t>>> by_slot;
  std::vector<std::uint64_t> totals;
  std::uint64_t outside_nonzero = 0;  // off-domain elements whose label is not 0

  SlotTallies(const Sample& s, const FiniteDomain& domain)
      : by_slot(domain.slots()), totals(domain.slots(), 0) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto p = s.point(i);
      const Label y = s.label(i);
      const auto slot = domain.slot(p.id);
      if (!slot) {
        if (y != 0) ++outside_nonzero;
        continue;
      }
      ++totals[*slot];
      auto& cell = by_slot[*slot];
      bool found = false;
      for (auto& [label, n] : cell) {
        if (label == y) {
          ++n;
          found = true;
          break;
        }
      }
      if (!found) cell.emplace_back(y, 1);
    }
  }

  std::uint64_t count(std::size_t slot, Label y) const {
    for (const auto& [label, n] : by_slot[slot])
      if (label == y) return n;
    return 0;
  }
};

}  // namespace

FiniteHypothesisClass FiniteHypothesisClass::all_binary(FiniteDomain domain, std::string name) {
  detail::require(domain.count >= 0, "all_binary: negative domain size");
  FiniteHypothesisClass c;
  c.name_ = std::move(name);
  c.domain_ = domain;
  c.vc_dimension_ = static_cast<std::size_t>(domain.count);
  return c;
}

FiniteHypothesisClass FiniteHypothesisClass::explicit_members(FiniteDomain domain,
                                                              std::vector<std::vector<Label>> tables,
                                                              std::size_t vc_dimension, std::string name) {
  detail::require(!tables.empty(), "explicit_members: empty hypothesis class");
  for (const auto& t : tables)
    detail::require(t.size() == domain.slots(), "explicit_members: every table must cover the domain");
  FiniteHypothesisClass c;
  c.name_ = std::move(name);
  c.domain_ = domain;
  c.vc_dimension_ = vc_dimension;
  c.tables_ = std::move(tables);
  return c;
}

std::optional<std::uint64_t> FiniteHypothesisClass::size() const noexcept {
  if (!is_all_binary()) return tables_.size();
  if (domain_.count >= 64) return std::nullopt;
  return std::uint64_t{1} << domain_.count;
}

Label FiniteHypothesisClass::label(std::uint64_t index, std::size_t slot) const {
  if (!is_all_binary()) return tables_.at(index).at(slot);
  if (slot >= static_cast<std::size_t>(domain_.count)) return 0;  // ⊥
  return static_cast<Label>((index >> slot) & 1u);
}

Hypothesis FiniteHypothesisClass::member(std::uint64_t index) const {
  const auto n = size();
  detail::require(!n || index < *n, "FiniteHypothesisClass::member: index out of range");
  TableMember m{name_, index, domain_, {}, 0};
  if (!is_all_binary()) {
    m.table = tables_[index];
  } else {
    m.table.resize(domain_.slots());
    for (std::size_t s = 0; s < m.table.size(); ++s) m.table[s] = label(index, s);
  }
  return Hypothesis::member(std::move(m));
}

Hypothesis erm_learn(const Sample& s, const FiniteHypothesisClass& c) {
  detail::require(!s.empty(), "erm_learn: empty sample");
  if (!c.is_all_binary()) return erm_learn_exhaustive(s, c, std::numeric_limits<std::uint64_t>::max());

  const auto& domain = c.domain();
  const auto free_slots = static_cast<std::size_t>(domain.count);
  // Count label-1 minus label-0 occurrences per free slot; ⊥ is pinned to 0.
  std::vector<std::int64_t> margin(free_slots, 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto slot = domain.slot(s.point(i).id);
    if (!slot || *slot >= free_slots) continue;
    const Label y = s.label(i);
    if (y == 1) ++margin[*slot];
    else if (y == 0) --margin[*slot];
  }
  TableMember m{c.name(), std::nullopt, domain, std::vector<Label>(domain.slots(), 0), 0};
  std::uint64_t index = 0;
  for (std::size_t j = 0; j < free_slots; ++j) {
    if (margin[j] > 0) {
      m.table[j] = 1;
      if (j < 64) index |= std::uint64_t{1} << j;
    }
  }
  if (free_slots < 64) m.index = index;
  return Hypothesis::member(std::move(m));
}

Hypothesis erm_learn_exhaustive(const Sample& s, const FiniteHypothesisClass& c, std::uint64_t max_members) {
  detail::require(!s.empty(), "erm_learn: empty sample");
  const auto n = c.size();
  detail::require(n.has_value() && *n > 0, "erm_learn: class is empty or too large to enumerate");
  detail::require(*n <= max_members, "erm_learn_exhaustive: class exceeds the enumeration limit");
  const SlotTallies tallies(s, c.domain());
  const std::size_t slots = c.domain().slots();

  std::uint64_t best_index = 0;
  std::uint64_t best_errors = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t idx = 0; idx < *n; ++idx) {
    std::uint64_t errors = tallies.outside_nonzero;
    for (std::size_t slot = 0; slot < slots && errors < best_errors; ++slot)
      errors += tallies.totals[slot] - tallies.count(slot, c.label(idx, slot));
    if (errors < best_errors) {
      best_errors = errors;
      best_index = idx;
    }
  }
  return c.member(best_index);
}

}  // namespace colearn
