#include "colearn/example.hpp"

#include "colearn/errors.hpp"

namespace colearn {

ExampleTable::ExampleTable(std::size_t dims) : dims_(dims) {}

std::uint32_t ExampleTable::add(PointId id, std::span<const double> x, Label label) {
  detail::require(x.size() == dims_, "ExampleTable::add: feature dimension mismatch");
  const auto row = static_cast<std::uint32_t>(labels_.size());
  ids_.push_back(id);
  features_.insert(features_.end(), x.begin(), x.end());
  labels_.push_back(label);
  return row;
}

std::shared_ptr<const ExampleTable> ExampleTable::finite(std::span<const PointId> ids,
                                                         std::span<const Label> labels) {
  detail::require(ids.size() == labels.size(), "ExampleTable::finite: ids/labels size mismatch");
  auto table = std::make_shared<ExampleTable>(1);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const double x = static_cast<double>(ids[i]);
    table->add(ids[i], std::span<const double>(&x, 1), labels[i]);
  }
  return table;
}

std::shared_ptr<const ExampleTable> ExampleTable::from_examples(std::span<const LabeledExample> rows) {
  const std::size_t dims = rows.empty() ? 1 : rows.front().features.size();
  auto table = std::make_shared<ExampleTable>(dims);
  for (const auto& e : rows) table->add(e);
  return table;
}

std::optional<std::size_t> FiniteDomain::slot(PointId id) const noexcept {
  if (id == kBottom) {
    if (!has_bottom) return std::nullopt;
    return static_cast<std::size_t>(count);
  }
  if (id < first || id >= first + count) return std::nullopt;
  return static_cast<std::size_t>(id - first);
}

PointId FiniteDomain::id_at(std::size_t s) const noexcept {
  if (s == static_cast<std::size_t>(count)) return kBottom;
  return first + static_cast<PointId>(s);
}

Sample Sample::from_examples(std::span<const LabeledExample> examples) {
  Sample s;
  s.table = ExampleTable::from_examples(examples);
  s.rows.resize(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) s.rows[i] = static_cast<std::uint32_t>(i);
  return s;
}

}  // namespace colearn
