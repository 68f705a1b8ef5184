#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "slprime/coeff.hpp"
#include "slprime/spectrum.hpp"

namespace slprime {

/// -y'' + q y = (pi lambda / log lambda)^2 y on [0, 1], Dirichlet at both ends.
/// Eigenvalues lambda are the preimages of the Dirichlet eigenvalues mu of the base problem.
class NonlinearProblem {
 public:
  explicit NonlinearProblem(PiecewiseConstant q);
  static NonlinearProblem free();

  const PiecewiseConstant& q() const noexcept { return q_; }
  const SLProblem& base() const noexcept { return base_; }

 private:
  PiecewiseConstant q_;
  SLProblem base_;
};

enum class Branch { principal, lower };

/// Smallest value of the map, attained at lambda = e: (pi e)^2.
double lambda_map_minimum();

/// (pi lambda / log lambda)^2, for lambda > 1.
double lambda_map(double lambda);

/// Root of lambda_map(lambda) = mu on lambda >= e (principal) or 1 < lambda <= e (lower).
double invert_map(double mu, Branch branch = Branch::principal);

struct NonlinearEigen {
  int n = 0;
  double mu = 0.0;
  /// Absent when mu lies below the branch minimum.
  std::optional<double> lambda;
};

NonlinearEigen nonlinear_eigen(const NonlinearProblem& problem, int n, const SolverOptions& opts = {});
std::vector<NonlinearEigen> nonlinear_spectrum(const NonlinearProblem& problem, int n_max,
                                               const SolverOptions& opts = {});

/// n log n + n log log n + n log log log n, for n >= 16.
double lambda_expansion(std::uint64_t n);

/// Rows n, mu, lambda (empty when absent), p_n, lambda - p_n. primes[i] is p_{i+1}.
void write_nonlinear_csv(std::ostream& os, std::span<const NonlinearEigen> rows,
                         std::span<const std::uint32_t> primes);

}  // namespace slprime
