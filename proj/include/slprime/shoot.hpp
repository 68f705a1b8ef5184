#pragma once

#include <complex>

#include "slprime/coeff.hpp"

namespace slprime {

using cplx = std::complex<double>;

/// Solution pair of u' = -s v, v' = (lambda r - q) u. u is y, v = -p y'.
struct State {
  cplx u{0.0};
  cplx v{0.0};
};

/// Exact solution operator for one constant piece, stored as
/// exp(log_scale) * [[m11, m12], [m21, m22]] so that hyperbolic growth never overflows.
struct TransferMatrix {
  cplx m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};
  double log_scale = 0.0;

  static TransferMatrix identity() { return {}; }

  /// Entries with the scale folded in (may overflow for very large pieces).
  TransferMatrix unscaled() const;
  /// Determinant including the scale factor.
  cplx determinant() const;
  /// |det - 1| measured against the size of the two products forming the determinant.
  double unimodularity_defect() const;

  State apply(const State& x) const;
  /// Composition: (*this) applied after `first`.
  TransferMatrix after(const TransferMatrix& first) const;
};

/// State whose true value is dir * exp(log_scale); max(|u|, |v|) of dir is 1.
struct ScaledState {
  State dir;
  double log_scale = 0.0;

  State value() const;
};

/// c(z) = cos(sqrt z) and sigma(z) = sin(sqrt z)/sqrt z, both scaled by exp(-log_scale).
template <typename T>
struct PieceKernels {
  T c;
  T sigma;
  double log_scale;
};

PieceKernels<double> piece_kernels(double z);
PieceKernels<cplx> piece_kernels(cplx z);

TransferMatrix piece_matrix(double s, double q, double r, cplx lambda, double h);

/// Propagates init from a to x_end through the exact piece matrices.
ScaledState propagate(const SLProblem& problem, cplx lambda, const State& init, double x_end);
ScaledState propagate(const SLProblem& problem, cplx lambda, const State& init);

/// The solution map (u(b), v(b)) for the given initial state at a.
State integrate_system(const SLProblem& problem, cplx lambda, const State& init);

/// Initial state satisfying the left boundary condition: (sin alpha, -cos alpha).
State left_boundary_state(const SLProblem& problem);

struct AngleResult {
  /// Continuous Prüfer angle at b, with u = rho sin(theta), v = -rho cos(theta), theta(a) = alpha.
  double theta_b = 0.0;
  /// Zeros of u in the open interval (a, b).
  int winding = 0;
  /// Normalized terminal state.
  double u_b = 0.0;
  double v_b = 0.0;
};

AngleResult prufer_angle(const SLProblem& problem, double lambda);

}  // namespace slprime
