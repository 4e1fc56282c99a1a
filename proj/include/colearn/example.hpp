#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace colearn {

using Label = std::int32_t;
using PointId = std::int64_t;

/// Identifier of the distinguished "⊥" point of the hard-instance domains.
inline constexpr PointId kBottom = -1;

/// Read-only view of one instance point. Finite-domain points carry their id
/// and the single feature `double(id)`; dataset rows carry their row number
/// and the feature vector.
struct PointView {
  PointId id = 0;
  std::span<const double> x;
};

/// Owning (point, label) pair, used to build tables and in tests.
struct LabeledExample {
  PointId point = 0;
  std::vector<double> features;
  Label label = 0;
};

/// Columnar store of labeled examples. Distributions, oracles and samples
/// refer to rows of a shared table instead of copying feature vectors.
class ExampleTable {
 public:
  explicit ExampleTable(std::size_t dims);

  std::uint32_t add(PointId id, std::span<const double> x, Label label);
  std::uint32_t add(const LabeledExample& e) { return add(e.point, e.features, e.label); }

  /// Finite-domain table: one row per (id, label), features = {double(id)}.
  static std::shared_ptr<const ExampleTable> finite(std::span<const PointId> ids,
                                                    std::span<const Label> labels);
  static std::shared_ptr<const ExampleTable> from_examples(std::span<const LabeledExample> rows);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t dims() const noexcept { return dims_; }
  PointView point(std::size_t row) const noexcept {
    return {ids_[row], std::span<const double>(features_.data() + row * dims_, dims_)};
  }
  PointId id(std::size_t row) const noexcept { return ids_[row]; }
  Label label(std::size_t row) const noexcept { return labels_[row]; }
  const std::vector<Label>& labels() const noexcept { return labels_; }

 private:
  std::size_t dims_;
  std::vector<PointId> ids_;
  std::vector<double> features_;
  std::vector<Label> labels_;
};

/// Finite instance space {first, ..., first+count-1} plus an optional ⊥.
/// Slots number the points densely: ids map to `id - first`, ⊥ to `count`.
struct FiniteDomain {
  PointId first = 0;
  std::int64_t count = 0;
  bool has_bottom = false;

  std::size_t slots() const noexcept { return static_cast<std::size_t>(count) + (has_bottom ? 1 : 0); }
  std::optional<std::size_t> slot(PointId id) const noexcept;
  PointId id_at(std::size_t slot) const noexcept;

  friend bool operator==(const FiniteDomain&, const FiniteDomain&) = default;
};

/// A multiset of examples: row indices into a shared table, with repetition.
struct Sample {
  std::shared_ptr<const ExampleTable> table;
  std::vector<std::uint32_t> rows;

  std::size_t size() const noexcept { return rows.size(); }
  bool empty() const noexcept { return rows.empty(); }
  PointView point(std::size_t i) const noexcept { return table->point(rows[i]); }
  Label label(std::size_t i) const noexcept { return table->label(rows[i]); }

  /// Builds a sample whose table holds exactly the given examples, in order.
  static Sample from_examples(std::span<const LabeledExample> examples);
};

}  // namespace colearn
