#include "colearn/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "colearn/errors.hpp"

namespace colearn {
namespace {

struct Split {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double impurity = std::numeric_limits<double>::infinity();
};

class TreeBuilder {
 public:
  TreeBuilder(const Sample& s, const TreeParams& params) : s_(s), params_(params) {
    labels_.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) labels_.push_back(s.label(i));
    alphabet_ = labels_;
    std::sort(alphabet_.begin(), alphabet_.end());
    alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
    dense_.resize(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i)
      dense_[i] = static_cast<std::size_t>(std::lower_bound(alphabet_.begin(), alphabet_.end(), labels_[i]) -
                                           alphabet_.begin());
  }

  DecisionTree build() {
    std::vector<std::uint32_t> all(s_.size());
    std::iota(all.begin(), all.end(), 0u);
    grow(all, 0);
    return std::move(tree_);
  }

 private:
  std::uint32_t grow(std::vector<std::uint32_t>& rows, std::size_t depth) {
    const auto id = static_cast<std::uint32_t>(tree_.nodes.size());
    tree_.nodes.push_back(TreeNode{});
    std::vector<std::size_t> counts(alphabet_.size(), 0);
    for (auto r : rows) ++counts[dense_[r]];
    const auto majority = static_cast<std::size_t>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());  // first max = smallest label
    tree_.nodes[id].label = alphabet_[majority];
    const bool pure = counts[majority] == rows.size();
    if (pure || depth >= params_.max_depth || rows.size() < 2 * params_.min_leaf) return id;

    const Split split = best_split(rows, counts);
    if (!split.found) return id;

    std::vector<std::uint32_t> left, right;
    for (auto r : rows) (s_.point(r).x[split.feature] <= split.threshold ? left : right).push_back(r);
    rows.clear();
    rows.shrink_to_fit();
    const auto l = grow(left, depth + 1);
    const auto rnode = grow(right, depth + 1);
    auto& node = tree_.nodes[id];
    node.leaf = false;
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = l;
    node.right = rnode;
    return id;
  }

  // Weighted Gini of a side with n rows and class counts c: n - sum(c^2)/n.
  static double side_impurity(const std::vector<std::size_t>& c, std::size_t n) {
    if (n == 0) return 0.0;
    double sq = 0.0;
    for (auto v : c) sq += static_cast<double>(v) * static_cast<double>(v);
    return static_cast<double>(n) - sq / static_cast<double>(n);
  }

  Split best_split(const std::vector<std::uint32_t>& rows, const std::vector<std::size_t>& totals) const {
    Split best;
    const std::size_t n = rows.size();
    const std::size_t dims = s_.table->dims();
    std::vector<std::pair<double, std::uint32_t>> order(n);
    std::vector<std::size_t> left(alphabet_.size()), right(alphabet_.size());
    for (std::size_t f = 0; f < dims; ++f) {
      for (std::size_t i = 0; i < n; ++i) order[i] = {s_.point(rows[i]).x[f], rows[i]};
      std::sort(order.begin(), order.end());
      std::fill(left.begin(), left.end(), 0);
      right = totals;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto c = dense_[order[i].second];
        ++left[c];
        --right[c];
        const std::size_t nl = i + 1;
        const std::size_t nr = n - nl;
        if (order[i].first == order[i + 1].first) continue;
        if (nl < params_.min_leaf || nr < params_.min_leaf) continue;
        const double impurity = side_impurity(left, nl) + side_impurity(right, nr);
        if (impurity < best.impurity) {
          const double a = order[i].first;
          const double b = order[i + 1].first;
          double mid = a + (b - a) / 2.0;
          if (!(mid < b)) mid = a;
          best = Split{true, f, mid, impurity};
        }
      }
    }
    return best;
  }

  const Sample& s_;
  TreeParams params_;
  std::vector<Label> labels_;
  std::vector<Label> alphabet_;
  std::vector<std::size_t> dense_;
  DecisionTree tree_;
};

}  // namespace

Hypothesis tree_learn(const Sample& s, const TreeParams& params) {
  detail::require(!s.empty(), "tree_learn: empty sample");
  detail::require(params.min_leaf >= 1, "tree_learn: min_leaf must be at least 1");
  for (std::size_t i = 0; i < s.size(); ++i)
    for (double v : s.point(i).x)
      if (!std::isfinite(v)) throw PreconditionError("tree_learn: non-numeric (NaN or infinite) feature value");
  return Hypothesis::tree(TreeBuilder(s, params).build());
}

}  // namespace colearn
