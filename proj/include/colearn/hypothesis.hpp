#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "colearn/example.hpp"

namespace colearn {

class Hypothesis;

/// Member of a finite hypothesis class, stored as its label table over the
/// class domain. `index` is the member's position in the class enumeration
/// when that number fits in 64 bits.
struct TableMember {
  std::string class_name;
  std::optional<std::uint64_t> index;
  FiniteDomain domain;
  std::vector<Label> table;
  Label outside = 0;  // label for ids outside the domain

  friend bool operator==(const TableMember&, const TableMember&) = default;
};

/// x[feature] <= threshold ? below : above
struct Stump {
  std::size_t feature = 0;
  double threshold = 0.0;
  Label below = 0;
  Label above = 0;

  friend bool operator==(const Stump&, const Stump&) = default;
};

struct TreeNode {
  bool leaf = true;
  Label label = 0;
  std::size_t feature = 0;
  double threshold = 0.0;
  std::uint32_t left = 0;   // taken when x[feature] <= threshold
  std::uint32_t right = 0;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// Binary decision tree; node 0 is the root.
struct DecisionTree {
  std::vector<TreeNode> nodes;

  std::size_t depth() const;
  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

struct PluralityVote {
  std::vector<Hypothesis> children;
  std::optional<FiniteDomain> cache_domain;
  std::vector<Label> cache;  // per-slot outputs when cache_domain is set
};

enum class HypothesisKind { table_member, stump, tree, plurality };

/// Immutable labeling function. Copies share the underlying body, so passing
/// hypotheses by value is cheap.
class Hypothesis {
 public:
  using Body = std::variant<TableMember, Stump, DecisionTree, PluralityVote>;

  static Hypothesis member(TableMember m);
  static Hypothesis stump(Stump s);
  static Hypothesis tree(DecisionTree t);

  Label operator()(PointView p) const;
  HypothesisKind kind() const noexcept;
  const Body& body() const noexcept { return *body_; }

  friend bool operator==(const Hypothesis& a, const Hypothesis& b);

 private:
  explicit Hypothesis(std::shared_ptr<const Body> body) : body_(std::move(body)) {}
  friend Hypothesis plurality(std::span<const Hypothesis>, std::optional<FiniteDomain>);

  std::shared_ptr<const Body> body_;
};

/// Pointwise most frequent child output, ties to the smallest label. With a
/// finite `cache_domain`, outputs on that domain are tabulated once; queries
/// must then use finite-domain points (features = {double(id)}).
Hypothesis plurality(std::span<const Hypothesis> children,
                     std::optional<FiniteDomain> cache_domain = std::nullopt);

/// Most frequent label in `votes`, ties to the smallest label.
Label plurality_label(std::span<const Label> votes);

}  // namespace colearn
