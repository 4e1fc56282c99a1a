#include "colearn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "colearn/errors.hpp"
#include "colearn/rng.hpp"
#include "colearn/text.hpp"

namespace colearn {

std::vector<std::string> Dataset::feature_names() const {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (c != label_column) out.push_back(columns[c]);
  return out;
}

Label Dataset::label_of(const std::string& token) const {
  for (const auto& [label, name] : label_names)
    if (name == token) return label;
  throw PreconditionError("unknown label '" + token + "'");
}

Dataset parse_csv(const std::string& text, const std::string& label_column, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto next = [&]() {
    while (std::getline(in, line)) {
      ++lineno;
      if (!trim(line).empty()) return true;
    }
    return false;
  };
  if (!next()) throw PreconditionError(source + ": empty file");

  Dataset ds;
  for (const auto& c : split(trim(line), ',')) ds.columns.emplace_back(trim(c));
  const auto it = std::find(ds.columns.begin(), ds.columns.end(), label_column);
  if (it == ds.columns.end()) throw PreconditionError(source + ": label column '" + label_column + "' not found");
  ds.label_column = static_cast<std::size_t>(it - ds.columns.begin());

  std::vector<std::vector<double>> features;
  std::vector<std::string> tokens;
  while (next()) {
    const auto cells = split(trim(line), ',');
    if (cells.size() != ds.columns.size())
      throw PreconditionError(source + ": row " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                              " cells, expected " + std::to_string(ds.columns.size()));
    std::vector<double> x;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == ds.label_column) {
        tokens.emplace_back(trim(cells[c]));
        continue;
      }
      const auto v = try_parse_real(cells[c]);
      if (!v || !std::isfinite(*v))
        throw PreconditionError(source + ": non-numeric feature at row " + std::to_string(lineno) + ", column '" +
                                ds.columns[c] + "': '" + std::string(trim(cells[c])) + "'");
      x.push_back(*v);
    }
    features.push_back(std::move(x));
  }
  detail::require(!features.empty(), source + ": no data rows");

  bool integral = true;
  for (const auto& t : tokens) integral = integral && try_parse_int(t).has_value();
  std::vector<Label> labels(tokens.size());
  if (integral) {
    for (std::size_t r = 0; r < tokens.size(); ++r) {
      labels[r] = static_cast<Label>(*try_parse_int(tokens[r]));
      ds.label_names.emplace(labels[r], tokens[r]);
    }
  } else {
    const std::set<std::string> distinct(tokens.begin(), tokens.end());
    std::map<std::string, Label> code;
    for (const auto& t : distinct) {
      const auto v = static_cast<Label>(code.size());
      code.emplace(t, v);
      ds.label_names.emplace(v, t);
    }
    for (std::size_t r = 0; r < tokens.size(); ++r) labels[r] = code.at(tokens[r]);
  }

  auto table = std::make_shared<ExampleTable>(ds.columns.size() - 1);
  for (std::size_t r = 0; r < features.size(); ++r) table->add(static_cast<PointId>(r), features[r], labels[r]);
  ds.table = std::move(table);
  return ds;
}

Dataset load_csv(const std::string& path, const std::string& label_column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dataset '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), label_column, path);
}

void write_csv(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (std::size_t c = 0; c < dataset.columns.size(); ++c) out << (c ? "," : "") << dataset.columns[c];
  out << '\n';
  for (std::size_t r = 0; r < dataset.rows(); ++r) {
    const auto x = dataset.table->point(r).x;
    std::size_t f = 0;
    for (std::size_t c = 0; c < dataset.columns.size(); ++c) {
      if (c) out << ',';
      if (c == dataset.label_column) out << dataset.label_names.at(dataset.table->label(r));
      else out << format_real(x[f++]);
    }
    out << '\n';
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

PartitionStrategy parse_partition_strategy(std::string_view s) {
  if (s == "random" || s == "random-k") return PartitionStrategy::random_k;
  if (s == "class-dup") return PartitionStrategy::class_dup;
  if (s == "feature-threshold") return PartitionStrategy::feature_threshold;
  if (s == "feature-grid") return PartitionStrategy::feature_grid;
  throw PreconditionError("unknown partition strategy '" + std::string(s) +
                          "' (expected random|class-dup|feature-threshold|feature-grid)");
}

std::string_view to_string(PartitionStrategy s) {
  switch (s) {
    case PartitionStrategy::random_k: return "random";
    case PartitionStrategy::class_dup: return "class-dup";
    case PartitionStrategy::feature_threshold: return "feature-threshold";
    case PartitionStrategy::feature_grid: return "feature-grid";
  }
  return "?";
}

namespace {

// Lower median of the values.
double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>((v.size() - 1) / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

// Cut points splitting `v` into `parts` groups of near-equal size: the
// (j/parts) quantiles, j = 1..parts-1, by the lower order statistic.
std::vector<double> quantile_cuts(std::vector<double> v, std::size_t parts) {
  std::sort(v.begin(), v.end());
  std::vector<double> cuts;
  for (std::size_t j = 1; j < parts; ++j) {
    const std::size_t idx = (j * v.size() + parts - 1) / parts - 1;
    cuts.push_back(v[idx]);
  }
  return cuts;
}

std::size_t cell_of(double x, const std::vector<double>& cuts) {
  return static_cast<std::size_t>(std::lower_bound(cuts.begin(), cuts.end(), x) - cuts.begin());
}

std::vector<double> column(const ExampleTable& t, std::size_t f) {
  std::vector<double> v(t.size());
  for (std::size_t r = 0; r < t.size(); ++r) v[r] = t.point(r).x[f];
  return v;
}

std::vector<std::vector<std::uint32_t>> outlier_plus_copies(std::vector<std::uint32_t> first,
                                                            std::vector<std::uint32_t> rest, std::size_t k) {
  std::vector<std::vector<std::uint32_t>> parts;
  parts.push_back(std::move(first));
  for (std::size_t i = 1; i < k; ++i) parts.push_back(rest);
  return parts;
}

}  // namespace

std::vector<std::vector<std::uint32_t>> partition_rows(const Dataset& dataset, const PartitionSpec& spec,
                                                       std::uint64_t seed) {
  detail::require(dataset.rows() > 0, "partition: empty dataset");
  detail::require(spec.k >= 1, "partition: k must be at least 1");
  const auto& table = *dataset.table;
  std::vector<std::vector<std::uint32_t>> parts;

  switch (spec.strategy) {
    case PartitionStrategy::random_k: {
      parts.resize(spec.k);
      Rng rng = Rng::stream(seed, {0x70617274});
      for (std::uint32_t r = 0; r < table.size(); ++r) parts[rng.below(spec.k)].push_back(r);
      break;
    }
    case PartitionStrategy::class_dup: {
      detail::require(spec.k >= 2, "class-dup partition needs k >= 2");
      detail::require(dataset.label_names.size() >= 2 || (spec.class_a && spec.class_b),
                      "class-dup partition needs two classes");
      const Label a = spec.class_a ? dataset.label_of(*spec.class_a) : dataset.label_names.begin()->first;
      const Label b = spec.class_b ? dataset.label_of(*spec.class_b) : std::next(dataset.label_names.begin())->first;
      detail::require(a != b, "class-dup partition: the two classes must differ");
      std::vector<std::uint32_t> ra, rb;
      for (std::uint32_t r = 0; r < table.size(); ++r) {
        if (table.label(r) == a) ra.push_back(r);
        else if (table.label(r) == b) rb.push_back(r);
      }
      parts = outlier_plus_copies(std::move(ra), std::move(rb), spec.k);
      break;
    }
    case PartitionStrategy::feature_threshold: {
      detail::require(spec.k >= 2, "feature-threshold partition needs k >= 2");
      detail::require(spec.feature < table.dims(), "feature-threshold partition: feature index out of range");
      const double t = spec.threshold.value_or(median(column(table, spec.feature)));
      std::vector<std::uint32_t> above, rest;
      for (std::uint32_t r = 0; r < table.size(); ++r) (table.point(r).x[spec.feature] > t ? above : rest).push_back(r);
      parts = outlier_plus_copies(std::move(above), std::move(rest), spec.k);
      break;
    }
    case PartitionStrategy::feature_grid: {
      detail::require(spec.feature_x < table.dims() && spec.feature_y < table.dims(),
                      "feature-grid partition: feature index out of range");
      std::size_t rows = spec.grid_rows.value_or(0);
      if (rows == 0) {
        rows = static_cast<std::size_t>(std::sqrt(static_cast<double>(spec.k)));
        while (rows > 1 && spec.k % rows != 0) --rows;
        rows = std::max<std::size_t>(rows, 1);
      }
      detail::require(spec.k % rows == 0, "feature-grid partition: grid rows must divide k");
      const std::size_t cols = spec.k / rows;
      const auto cx = quantile_cuts(column(table, spec.feature_x), rows);
      const auto cy = quantile_cuts(column(table, spec.feature_y), cols);
      parts.resize(spec.k);
      for (std::uint32_t r = 0; r < table.size(); ++r) {
        const auto x = table.point(r).x;
        parts[cell_of(x[spec.feature_x], cx) * cols + cell_of(x[spec.feature_y], cy)].push_back(r);
      }
      break;
    }
  }
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (parts[i].empty())
      throw PreconditionError("partition '" + std::string(to_string(spec.strategy)) + "' left player " +
                              std::to_string(i) + " empty");
  return parts;
}

std::vector<SampleOracle> partition(const Dataset& dataset, const PartitionSpec& spec, std::uint64_t seed) {
  std::vector<SampleOracle> out;
  const auto parts = partition_rows(dataset, spec, seed);
  // Copied parts share one oracle body.
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i >= 2 && parts[i] == parts[1]) out.push_back(out[1].reassigned(i));
    else out.push_back(SampleOracle::empirical(i, dataset.table, parts[i]));
  }
  return out;
}

Instance dataset_instance(const Dataset& dataset, const PartitionSpec& spec, std::uint64_t seed,
                          const TreeParams& tree, double capacity) {
  Instance inst;
  inst.id = std::string(to_string(spec.strategy)) + "-k" + std::to_string(spec.k);
  inst.players = partition(dataset, spec, seed);
  inst.learner = tree;
  inst.capacity = capacity;
  return inst;
}

}  // namespace colearn
