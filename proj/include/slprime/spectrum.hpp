#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slprime/coeff.hpp"

namespace slprime {

struct SolverOptions {
  double angle_tol = 1e-10;
  double lambda_tol_rel = 1e-12;
  double lambda_tol_abs = 1e-10;
  /// Bracket expansion gives up beyond |lambda| = lambda_cap.
  double lambda_cap = 1e12;
};

struct Eigenvalue {
  int index = 0;
  double value = 0.0;
  int oscillation = 0;
  double residual = 0.0;
};

struct Spectrum {
  std::string problem_hash;
  std::vector<Eigenvalue> eigenvalues;
  /// First index that could not be found, when the spectrum ran out before n_max.
  std::optional<int> truncated_at;
  std::string truncation_reason;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  const Eigenvalue& operator[](std::size_t i) const { return eigenvalues[i]; }
};

/// Hex FNV-1a digest of the problem data, stable across runs.
std::string problem_hash(const SLProblem& problem);

/// n-th eigenvalue (n >= 1): root of theta(b; lambda) = beta + (n - 1) pi.
/// Throws EigenvalueNotFound when the target angle is not reached within the cap.
Eigenvalue eigenvalue(const SLProblem& problem, int n, const SolverOptions& opts = {});

/// Eigenvalues 1..n_max, truncated at the first index that does not exist.
Spectrum compute_spectrum(const SLProblem& problem, int n_max, const SolverOptions& opts = {});

struct WeylFit {
  double fitted = 0.0;
  double reference = 0.0;
  double deviation = 0.0;
  /// (n, lambda_n C^2 / (n^2 pi^2) - 1) for every eigenvalue in the spectrum.
  std::vector<std::pair<int, double>> per_n;
};

/// Median of lambda_n / n^2 over the upper half of indices vs pi^2 / C^2.
WeylFit weyl_fit(const Spectrum& spectrum, const CoefficientSet& coeffs, const Interval& interval);

void write_csv(std::ostream& os, const Spectrum& spectrum);

}  // namespace slprime
