#include "colearn/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "colearn/errors.hpp"
#include "colearn/text.hpp"

namespace colearn {
namespace {

std::string point_token(const ExampleTable& table, std::uint32_t row, bool finite) {
  const PointId id = table.id(row);
  if (finite) return id == kBottom ? "bot" : std::to_string(id);
  std::string s = std::to_string(id) + ":";
  const auto x = table.point(row).x;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j > 0) s += ',';
    s += format_real17(x[j]);
  }
  return s;
}

// Finite-domain tables have one feature equal to the id.
bool is_finite_table(const ExampleTable& table) {
  if (table.dims() != 1) return false;
  for (std::size_t r = 0; r < table.size(); ++r)
    if (table.point(r).x[0] != static_cast<double>(table.id(r))) return false;
  return true;
}

struct ParsedPoint {
  PointId id = 0;
  std::vector<double> x;
  bool finite = true;
};

ParsedPoint parse_point(const std::string& tok, std::size_t line) {
  const std::string where = "instance line " + std::to_string(line);
  ParsedPoint p;
  if (tok == "bot") {
    p.id = kBottom;
    return p;
  }
  const auto colon = tok.find(':');
  if (colon == std::string::npos) {
    p.id = parse_int(tok, where + " point");
    detail::require(p.id >= 0, where + ": negative point id");
    return p;
  }
  p.finite = false;
  p.id = parse_int(tok.substr(0, colon), where + " point id");
  for (const auto& f : split(std::string_view(tok).substr(colon + 1), ',')) p.x.push_back(parse_real(f, where + " feature"));
  return p;
}

}  // namespace

void write_instance(std::ostream& out, const InstanceHeader& header, std::span<const PointMassDistribution> players) {
  detail::require(!players.empty(), "write_instance: no players");
  detail::require(header.k == players.size(), "write_instance: header k does not match the player count");
  const bool finite = is_finite_table(*players.front().table());
  out << kInstanceMagic << '\n';
  out << "k " << header.k << '\n';
  out << "d " << format_real(header.d) << '\n';
  out << "epsilon " << format_real(header.epsilon) << '\n';
  out << "generator " << (header.generator.empty() ? "unknown" : header.generator) << '\n';
  out << "seed " << header.seed << '\n';
  for (std::size_t i = 0; i < players.size(); ++i) {
    const auto& d = players[i];
    const auto& table = *d.table();
    for (std::size_t j = 0; j < d.support_size(); ++j) {
      const auto row = d.rows()[j];
      out << i << ' ' << point_token(table, row, finite) << ' ' << table.label(row) << ' '
          << format_real17(d.masses()[j]) << '\n';
    }
  }
  if (!out) throw IoError("write_instance: stream write failed");
}

void write_instance(std::ostream& out, const HardInstance& h) {
  write_instance(out, InstanceHeader{h.k, static_cast<double>(h.d), h.epsilon, h.generator, h.seed}, h.players);
}

void save_instance(const std::string& path, const InstanceHeader& header,
                   std::span<const PointMassDistribution> players) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_instance(out, header, players);
}

void save_instance(const std::string& path, const HardInstance& h) {
  save_instance(path, InstanceHeader{h.k, static_cast<double>(h.d), h.epsilon, h.generator, h.seed}, h.players);
}

LoadedInstance read_instance(std::istream& in, const TreeParams& tree) {
  std::string line;
  std::size_t lineno = 0;
  auto next = [&](std::string& dst) {
    while (std::getline(in, dst)) {
      ++lineno;
      if (!trim(dst).empty()) return true;
    }
    return false;
  };
  if (!next(line) || trim(line) != kInstanceMagic) throw PreconditionError("instance file: missing 'colearn-instance v1' header");

  LoadedInstance loaded;
  auto& h = loaded.header;
  auto field = [&](std::string_view key) {
    if (!next(line)) throw PreconditionError("instance file: missing '" + std::string(key) + "' line");
    std::istringstream ls(line);
    std::string k, v;
    ls >> k >> v;
    if (k != key || v.empty())
      throw PreconditionError("instance line " + std::to_string(lineno) + ": expected '" + std::string(key) + " <value>'");
    return v;
  };
  h.k = static_cast<std::size_t>(parse_u64(field("k"), "instance k"));
  h.d = parse_real(field("d"), "instance d");
  h.epsilon = parse_real(field("epsilon"), "instance epsilon");
  h.generator = field("generator");
  h.seed = parse_u64(field("seed"), "instance seed");
  detail::require(h.k >= 1, "instance file: k must be at least 1");

  struct Entry {
    std::size_t player;
    std::uint32_t row;
    double mass;
  };
  std::vector<Entry> entries;
  std::map<PointId, std::uint32_t> row_of;
  std::vector<ParsedPoint> points;
  std::vector<Label> labels;
  std::optional<bool> finite;
  while (next(line)) {
    const std::string where = "instance line " + std::to_string(lineno);
    std::istringstream ls(line);
    std::string player_tok, point_tok, label_tok, mass_tok, extra;
    ls >> player_tok >> point_tok >> label_tok >> mass_tok;
    if (mass_tok.empty() || (ls >> extra)) throw PreconditionError(where + ": expected '<player> <point> <label> <mass>'");
    const auto player = static_cast<std::size_t>(parse_u64(player_tok, where + " player"));
    detail::require(player < h.k, where + ": player index out of range");
    ParsedPoint p = parse_point(point_tok, lineno);
    if (!finite) finite = p.finite;
    detail::require(*finite == p.finite, where + ": mixes finite-domain and feature-vector points");
    const auto label = static_cast<Label>(parse_int(label_tok, where + " label"));
    const double mass = parse_real(mass_tok, where + " mass");
    auto [it, inserted] = row_of.try_emplace(p.id, static_cast<std::uint32_t>(points.size()));
    if (inserted) {
      points.push_back(std::move(p));
      labels.push_back(label);
    } else {
      detail::require(labels[it->second] == label, where + ": point relabeled");
      detail::require(points[it->second].x == p.x, where + ": point features changed");
    }
    entries.push_back({player, it->second, mass});
  }
  detail::require(!entries.empty(), "instance file: no support lines");

  std::shared_ptr<const ExampleTable> table;
  if (*finite) {
    std::vector<PointId> ids;
    for (const auto& p : points) ids.push_back(p.id);
    table = ExampleTable::finite(ids, labels);
  } else {
    const std::size_t dims = points.front().x.size();
    auto t = std::make_shared<ExampleTable>(dims);
    for (std::size_t r = 0; r < points.size(); ++r) {
      detail::require(points[r].x.size() == dims, "instance file: ragged feature vectors");
      t->add(points[r].id, points[r].x, labels[r]);
    }
    table = t;
  }

  std::vector<std::vector<std::uint32_t>> rows(h.k);
  std::vector<std::vector<double>> masses(h.k);
  for (const auto& e : entries) {
    rows[e.player].push_back(e.row);
    masses[e.player].push_back(e.mass);
  }
  auto& inst = loaded.instance;
  inst.id = h.generator;
  // Players with identical support lines share one law.
  std::map<std::pair<std::vector<std::uint32_t>, std::vector<double>>, PointMassDistribution> seen;
  for (std::size_t i = 0; i < h.k; ++i) {
    detail::require(!rows[i].empty(), "instance file: player " + std::to_string(i) + " has no support");
    auto key = std::make_pair(rows[i], masses[i]);
    auto it = seen.find(key);
    if (it == seen.end()) it = seen.emplace(key, PointMassDistribution(table, rows[i], masses[i])).first;
    inst.players.push_back(SampleOracle::point_mass(i, it->second));
  }

  if (*finite) {
    PointId lo = std::numeric_limits<PointId>::max(), hi = -1;
    bool bottom = false;
    for (const auto& p : points) {
      if (p.id == kBottom) {
        bottom = true;
        continue;
      }
      lo = std::min(lo, p.id);
      hi = std::max(hi, p.id);
    }
    const PointId first = h.generator == "psi" ? 1 : 0;
    detail::require(hi < 0 || lo >= first, "instance file: point id below the domain start");
    const std::int64_t count = std::max<std::int64_t>(static_cast<std::int64_t>(h.d), hi < 0 ? 0 : hi - first + 1);
    const FiniteDomain domain{first, count, bottom};
    auto cls = FiniteHypothesisClass::all_binary(domain);
    std::vector<Label> target(domain.slots(), 0);
    for (std::size_t r = 0; r < points.size(); ++r) target[*domain.slot(points[r].id)] = labels[r];
    std::optional<std::uint64_t> index;
    if (count < 64) {
      std::uint64_t v = 0;
      bool binary = true;
      for (std::int64_t j = 0; j < count; ++j) {
        if (target[static_cast<std::size_t>(j)] == 1) v |= std::uint64_t{1} << j;
        else if (target[static_cast<std::size_t>(j)] != 0) binary = false;
      }
      if (binary && (!bottom || target.back() == 0)) index = v;
    }
    inst.target = Hypothesis::member(TableMember{cls.name(), index, domain, target, 0});
    inst.domain = domain;
    inst.learner = cls;
    inst.capacity = static_cast<double>(count);
  } else {
    inst.learner = tree;
    inst.capacity = h.d;
  }
  return loaded;
}

LoadedInstance load_instance(const std::string& path, const TreeParams& tree) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open instance file '" + path + "'");
  return read_instance(in, tree);
}

}  // namespace colearn
