#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace colearn {

/// What one multiplicative-weights round looked like, including the
/// quantities the correctness argument reasons about. Fields that need exact
/// distribution errors stay empty on dataset-backed instances.
struct RoundDiagnostics {
  std::size_t t = 0;
  /// W^(t), total weight before the update (+inf past the double range),
  /// and its logarithm.
  double weight = 0.0;
  double log_weight = 0.0;
  /// ln(W^(t+1) / W^(t)); never above ln 2.
  double q = 0.0;
  /// p^(t)
  std::vector<double> probabilities;
  /// i not in Z^(t), i.e. weight doubled this round.
  std::vector<bool> excluded;

  /// err_{D^(t)}(g^(t)) and the learner-failure flag chi^(t) (err > eps/120).
  std::optional<double> mixture_error;
  std::optional<bool> chi;
  /// err_{D_i}(g^(t)) per player.
  std::optional<std::vector<double>> player_errors;
  /// psi_i^(t): the accuracy test got player i wrong (missed a player at
  /// error <= eps/12, or kept one above eps/4). Empty entries mean unknown.
  std::vector<std::optional<bool>> psi;

  std::size_t psi_count() const {
    std::size_t n = 0;
    for (const auto& v : psi) n += (v && *v) ? 1 : 0;
    return n;
  }
  /// sum of p^(t)(i) over excluded players.
  double excluded_mass() const {
    double m = 0.0;
    for (std::size_t i = 0; i < excluded.size(); ++i)
      if (excluded[i]) m += probabilities[i];
    return m;
  }
};

}  // namespace colearn
