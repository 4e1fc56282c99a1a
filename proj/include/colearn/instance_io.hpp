#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "colearn/distribution.hpp"
#include "colearn/hard_instances.hpp"
#include "colearn/instance.hpp"
#include "colearn/tree.hpp"

namespace colearn {

inline constexpr std::string_view kInstanceMagic = "colearn-instance v1";

struct InstanceHeader {
  std::size_t k = 0;
  double d = 0.0;
  double epsilon = 0.0;
  std::string generator;
  std::uint64_t seed = 0;
};

// Text format:
//   colearn-instance v1
//   k <k>
//   d <d>
//   epsilon <eps>
//   generator <id>
//   seed <seed>
//   <player> <point> <label> <mass>      (one line per support point)
// <point> is a finite-domain id, "bot" for ⊥, or "<id>:<x1>,<x2>,..." for a
// feature-vector row. Masses carry 17 significant digits.

void write_instance(std::ostream& out, const InstanceHeader& header, std::span<const PointMassDistribution> players);
void write_instance(std::ostream& out, const HardInstance& h);
void save_instance(const std::string& path, const InstanceHeader& header,
                   std::span<const PointMassDistribution> players);
void save_instance(const std::string& path, const HardInstance& h);

struct LoadedInstance {
  InstanceHeader header;
  Instance instance;
};

/// Finite-domain files get the all-binary ERM learner over the inferred
/// domain and the target implied by the labels; feature-vector files get a
/// decision tree learner with `tree`.
LoadedInstance read_instance(std::istream& in, const TreeParams& tree = {});
LoadedInstance load_instance(const std::string& path, const TreeParams& tree = {});

}  // namespace colearn
