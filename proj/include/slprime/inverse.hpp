#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "slprime/coeff.hpp"
#include "slprime/spectrum.hpp"

namespace slprime {

struct SearchConfig {
  int pieces = 16;          // subintervals of [0, 1]
  double bound = 200.0;     // |q_i| <= bound
  int targets = 8;          // primes matched
  std::uint64_t seed = 42;
  int restarts = 4;
  int max_iters = 2000;     // coordinate sweeps per restart
  double initial_step = 0.0;  // 0 selects bound / 4

  void validate() const;
};

struct TracePoint {
  int restart = 0;
  int iteration = 0;
  double objective = 0.0;
};

struct TargetRow {
  int n = 0;
  double target_mu = 0.0;
  double achieved_mu = 0.0;
  /// invert_map(achieved_mu) on the principal branch; absent below (pi e)^2.
  std::optional<double> implied_lambda;
  std::uint64_t prime = 0;
};

struct SearchResult {
  PiecewiseConstant best_q;
  double best_objective = 0.0;
  double baseline_objective = 0.0;
  /// Restart that produced best_q, or -1 when q = 0 itself was never beaten.
  int best_restart = 0;
  std::vector<TracePoint> trace;
  std::vector<TargetRow> per_target;
};

/// (pi p_n / log p_n)^2: the Dirichlet eigenvalue that maps to lambda_n = p_n.
double target_mu(int n);
std::vector<double> target_mus(int count);

/// sum_{n <= N} (mu_n(q) - mu*_n)^2 / mu*_n^2 with mu_n(q) the Dirichlet eigenvalues
/// of -y'' + q y = mu y on [0, 1].
double objective(const PiecewiseConstant& q, int n_targets, const SolverOptions& opts = {});

/// Bounded coordinate pattern search with restarts; deterministic for a given config.
SearchResult search(const SearchConfig& config, const SolverOptions& opts = {});

void write_per_target_csv(std::ostream& os, std::span<const TargetRow> rows);

}  // namespace slprime
