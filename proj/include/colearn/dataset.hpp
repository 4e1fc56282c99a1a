#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "colearn/example.hpp"
#include "colearn/instance.hpp"
#include "colearn/oracle.hpp"
#include "colearn/tree.hpp"

namespace colearn {

/// Rectangular table of real features plus one discrete label column.
/// Integer label tokens keep their value; otherwise labels are numbered by
/// sorted token order.
struct Dataset {
  std::vector<std::string> columns;
  std::size_t label_column = 0;
  std::map<Label, std::string> label_names;
  /// One row per data row; id = row index, features in column order
  /// without the label column.
  std::shared_ptr<const ExampleTable> table;

  std::size_t rows() const noexcept { return table ? table->size() : 0; }
  std::size_t features() const noexcept { return table ? table->dims() : 0; }
  std::vector<std::string> feature_names() const;
  /// Label value by token; throws when the token is unknown.
  Label label_of(const std::string& token) const;
};

Dataset load_csv(const std::string& path, const std::string& label_column);
Dataset parse_csv(const std::string& text, const std::string& label_column, const std::string& source = "csv");
/// Same column order as loaded; reals are written in shortest round-trip form.
void write_csv(const Dataset& dataset, const std::string& path);

enum class PartitionStrategy { random_k, class_dup, feature_threshold, feature_grid };

PartitionStrategy parse_partition_strategy(std::string_view s);
std::string_view to_string(PartitionStrategy s);

struct PartitionSpec {
  PartitionStrategy strategy = PartitionStrategy::random_k;
  std::size_t k = 10;
  /// class-dup: label tokens of D_1 and of the duplicated part; default the
  /// two smallest label values.
  std::optional<std::string> class_a;
  std::optional<std::string> class_b;
  /// feature-threshold: D_1 holds rows with x[feature] > threshold (default
  /// the median), the rest are copied to players 2..k.
  std::size_t feature = 0;
  std::optional<double> threshold;
  /// feature-grid: quantile cells over two features; rows x cols must be k
  /// (default: the most square factorization).
  std::size_t feature_x = 0;
  std::size_t feature_y = 1;
  std::optional<std::size_t> grid_rows;
};

/// Row sets backing each player, in player order.
std::vector<std::vector<std::uint32_t>> partition_rows(const Dataset& dataset, const PartitionSpec& spec,
                                                       std::uint64_t seed);
/// One resampling oracle per player.
std::vector<SampleOracle> partition(const Dataset& dataset, const PartitionSpec& spec, std::uint64_t seed);
/// Partition wrapped as an instance with a tree learner.
Instance dataset_instance(const Dataset& dataset, const PartitionSpec& spec, std::uint64_t seed,
                          const TreeParams& tree = {}, double capacity = 1.0);

}  // namespace colearn
