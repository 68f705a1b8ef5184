#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace slprime {

/// Finite interval [a, b] with a < b.
class Interval {
 public:
  Interval(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double a_;
  double b_;
};

/// Step function: values[i] on [breakpoints[i], breakpoints[i+1]).
/// The last piece is closed on the right.
class PiecewiseConstant {
 public:
  PiecewiseConstant(std::vector<double> breakpoints, std::vector<double> values);

  static PiecewiseConstant constant(double a, double b, double value);

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t pieces() const noexcept { return values_.size(); }
  double a() const noexcept { return breakpoints_.front(); }
  double b() const noexcept { return breakpoints_.back(); }

  double piece_length(std::size_t i) const { return breakpoints_[i + 1] - breakpoints_[i]; }

  /// Index of the piece containing x (right-continuous; b maps to the last piece).
  std::size_t locate(double x) const;
  double operator()(double x) const { return values_[locate(x)]; }

  /// Same function, expressed on a finer mesh that contains every breakpoint of this one.
  PiecewiseConstant resampled(std::span<const double> mesh) const;

  friend bool operator==(const PiecewiseConstant&, const PiecewiseConstant&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

PiecewiseConstant make_piecewise(std::vector<double> breakpoints, std::vector<double> values);

/// Exact integral of f over [x0, x1]; requires a <= x0 <= x1 <= b.
double integrate(const PiecewiseConstant& f, double x0, double x1);

/// s = 1/p, q and r on a shared mesh. s stays finite where p is infinite (s = 0).
class CoefficientSet {
 public:
  CoefficientSet(PiecewiseConstant s, PiecewiseConstant q, PiecewiseConstant r);

  const PiecewiseConstant& s() const noexcept { return s_; }
  const PiecewiseConstant& q() const noexcept { return q_; }
  const PiecewiseConstant& r() const noexcept { return r_; }

  std::span<const double> mesh() const noexcept { return s_.breakpoints(); }
  std::size_t pieces() const noexcept { return s_.pieces(); }

  /// s >= 0 and r >= 0 everywhere, with r not identically zero.
  bool right_definite() const noexcept;

  friend bool operator==(const CoefficientSet&, const CoefficientSet&) = default;

 private:
  PiecewiseConstant s_;
  PiecewiseConstant q_;
  PiecewiseConstant r_;
};

/// Merges the three meshes (exact breakpoint union) and replicates values per sub-piece.
CoefficientSet refine_common_mesh(const PiecewiseConstant& s, const PiecewiseConstant& q,
                                  const PiecewiseConstant& r);

/// C = integral over [a,b] of sqrt((r*s)_+).
double weyl_constant(const CoefficientSet& coeffs, const Interval& interval);

/// y(a) cos(alpha) + v(a) sin(alpha) = 0 and likewise at b with beta.
class BoundaryCondition {
 public:
  BoundaryCondition(double alpha, double beta);

  static BoundaryCondition dirichlet();

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  friend bool operator==(const BoundaryCondition&, const BoundaryCondition&) = default;

 private:
  double alpha_;
  double beta_;
};

struct SLProblem {
  SLProblem(Interval interval, CoefficientSet coeffs, BoundaryCondition bc);

  Interval interval;
  CoefficientSet coeffs;
  BoundaryCondition bc;

  friend bool operator==(const SLProblem&, const SLProblem&) = default;
};

/// Convenience constructor for constant s, q, r on [a, b].
SLProblem constant_problem(double a, double b, double s, double q, double r,
                           BoundaryCondition bc = BoundaryCondition::dirichlet());

}  // namespace slprime
