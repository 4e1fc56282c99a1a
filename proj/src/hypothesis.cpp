#include "colearn/hypothesis.hpp"

#include <algorithm>
#include <utility>

#include "colearn/errors.hpp"

namespace colearn {
namespace {

Label eval_tree(const DecisionTree& t, PointView p) {
  std::uint32_t n = 0;
  while (!t.nodes[n].leaf) {
    const auto& node = t.nodes[n];
    n = p.x[node.feature] <= node.threshold ? node.left : node.right;
  }
  return t.nodes[n].label;
}

// Small-alphabet vote counter; labels in practice number a handful.
class VoteCounter {
 public:
  void add(Label y) {
    for (auto& [label, count] : counts_) {
      if (label == y) {
        ++count;
        return;
      }
    }
    counts_.emplace_back(y, 1);
  }
  Label winner() const {
    Label best = counts_.front().first;
    std::size_t best_count = counts_.front().second;
    for (const auto& [label, count] : counts_) {
      if (count > best_count || (count == best_count && label < best)) {
        best = label;
        best_count = count;
      }
    }
    return best;
  }
  void clear() { counts_.clear(); }

 private:
  std::vector<std::pair<Label, std::size_t>> counts_;
};

Label vote(const std::vector<Hypothesis>& children, PointView p) {
  VoteCounter counter;
  for (const auto& c : children) counter.add(c(p));
  return counter.winner();
}

}  // namespace

std::size_t DecisionTree::depth() const {
  if (nodes.empty()) return 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0u, 0u}};
  std::size_t deepest = 0;
  while (!stack.empty()) {
    auto [n, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    if (!nodes[n].leaf) {
      stack.emplace_back(nodes[n].left, d + 1);
      stack.emplace_back(nodes[n].right, d + 1);
    }
  }
  return deepest;
}

Hypothesis Hypothesis::member(TableMember m) {
  detail::require(m.table.size() == m.domain.slots(), "TableMember: table size must equal domain slots");
  return Hypothesis(std::make_shared<const Body>(std::move(m)));
}

Hypothesis Hypothesis::stump(Stump s) { return Hypothesis(std::make_shared<const Body>(s)); }

Hypothesis Hypothesis::tree(DecisionTree t) {
  detail::require(!t.nodes.empty(), "DecisionTree: no nodes");
  return Hypothesis(std::make_shared<const Body>(std::move(t)));
}

Label Hypothesis::operator()(PointView p) const {
  return std::visit(
      [&](const auto& b) -> Label {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, TableMember>) {
          const auto s = b.domain.slot(p.id);
          return s ? b.table[*s] : b.outside;
        } else if constexpr (std::is_same_v<T, Stump>) {
          return p.x[b.feature] <= b.threshold ? b.below : b.above;
        } else if constexpr (std::is_same_v<T, DecisionTree>) {
          return eval_tree(b, p);
        } else {
          if (b.cache_domain) {
            if (const auto s = b.cache_domain->slot(p.id)) return b.cache[*s];
          }
          return vote(b.children, p);
        }
      },
      *body_);
}

HypothesisKind Hypothesis::kind() const noexcept {
  return static_cast<HypothesisKind>(body_->index());
}

bool operator==(const Hypothesis& a, const Hypothesis& b) {
  if (a.body_ == b.body_) return true;
  if (a.body_->index() != b.body_->index()) return false;
  if (const auto* pa = std::get_if<PluralityVote>(a.body_.get())) {
    const auto& pb = std::get<PluralityVote>(*b.body_);
    return pa->children == pb.children;
  }
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PluralityVote>) {
          return false;
        } else {
          return x == std::get<T>(*b.body_);
        }
      },
      *a.body_);
}

Label plurality_label(std::span<const Label> votes) {
  detail::require(!votes.empty(), "plurality_label: no votes");
  VoteCounter counter;
  for (Label y : votes) counter.add(y);
  return counter.winner();
}

Hypothesis plurality(std::span<const Hypothesis> children, std::optional<FiniteDomain> cache_domain) {
  detail::require(!children.empty(), "plurality: empty hypothesis list");
  PluralityVote pv;
  pv.children.assign(children.begin(), children.end());
  if (cache_domain) {
    pv.cache.resize(cache_domain->slots());
    for (std::size_t s = 0; s < pv.cache.size(); ++s) {
      const PointId id = cache_domain->id_at(s);
      const double x = static_cast<double>(id);
      pv.cache[s] = vote(pv.children, PointView{id, std::span<const double>(&x, 1)});
    }
    pv.cache_domain = std::move(cache_domain);
  }
  return Hypothesis(std::make_shared<const Hypothesis::Body>(std::move(pv)));
}

}  // namespace colearn
