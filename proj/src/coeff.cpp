#include "slprime/coeff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "slprime/error.hpp"

namespace slprime {

Interval::Interval(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::InvalidInterval, "interval endpoints must be finite");
  }
  if (!(a < b)) {
    std::ostringstream os;
    os << "interval requires a < b, got [" << a << ", " << b << "]";
    throw Error(ErrorKind::InvalidInterval, os.str());
  }
}

PiecewiseConstant::PiecewiseConstant(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.empty() || breakpoints_.size() != values_.size() + 1) {
    std::ostringstream os;
    os << "expected " << values_.size() + 1 << " breakpoints for " << values_.size()
       << " values, got " << breakpoints_.size();
    if (values_.empty()) os << " (at least one piece is required)";
    throw Error(ErrorKind::LengthMismatch, os.str());
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i])) {
      throw Error(ErrorKind::NonFiniteValue, "breakpoint " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i])) {
      throw Error(ErrorKind::NonMonotoneMesh,
                  "breakpoints must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorKind::NonFiniteValue, "value " + std::to_string(i) + " is not finite");
    }
  }
}

PiecewiseConstant PiecewiseConstant::constant(double a, double b, double value) {
  return PiecewiseConstant({a, b}, {value});
}

std::size_t PiecewiseConstant::locate(double x) const {
  if (x < a() || x > b()) {
    std::ostringstream os;
    os << "x = " << x << " outside [" << a() << ", " << b() << "]";
    throw Error(ErrorKind::OutOfDomain, os.str());
  }
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  auto idx = static_cast<std::size_t>(std::distance(breakpoints_.begin(), it));
  return std::min(idx == 0 ? 0 : idx - 1, values_.size() - 1);
}

PiecewiseConstant PiecewiseConstant::resampled(std::span<const double> mesh) const {
  if (mesh.empty() || mesh.front() != a() || mesh.back() != b()) {
    throw Error(ErrorKind::DomainMismatch, "resampling mesh does not span the same interval");
  }
  std::vector<double> vals;
  vals.reserve(mesh.size() - 1);
  for (std::size_t i = 0; i + 1 < mesh.size(); ++i) vals.push_back(values_[locate(mesh[i])]);
  return PiecewiseConstant(std::vector<double>(mesh.begin(), mesh.end()), std::move(vals));
}

PiecewiseConstant make_piecewise(std::vector<double> breakpoints, std::vector<double> values) {
  return PiecewiseConstant(std::move(breakpoints), std::move(values));
}

double integrate(const PiecewiseConstant& f, double x0, double x1) {
  if (!(f.a() <= x0 && x0 <= x1 && x1 <= f.b())) {
    std::ostringstream os;
    os << "integration range [" << x0 << ", " << x1 << "] not inside [" << f.a() << ", " << f.b()
       << "]";
    throw Error(ErrorKind::OutOfDomain, os.str());
  }
  if (x0 == x1) return 0.0;
  auto bp = f.breakpoints();
  auto vals = f.values();
  double sum = 0.0;
  for (std::size_t i = f.locate(x0); i < vals.size() && bp[i] < x1; ++i) {
    const double lo = std::max(x0, bp[i]);
    const double hi = std::min(x1, bp[i + 1]);
    if (hi > lo) sum += vals[i] * (hi - lo);
  }
  return sum;
}

CoefficientSet::CoefficientSet(PiecewiseConstant s, PiecewiseConstant q, PiecewiseConstant r)
    : s_(std::move(s)), q_(std::move(q)), r_(std::move(r)) {
  if (!std::ranges::equal(s_.breakpoints(), q_.breakpoints()) ||
      !std::ranges::equal(s_.breakpoints(), r_.breakpoints())) {
    throw Error(ErrorKind::DomainMismatch, "coefficient set requires a common mesh");
  }
}

bool CoefficientSet::right_definite() const noexcept {
  bool r_nonzero = false;
  for (std::size_t i = 0; i < pieces(); ++i) {
    if (s_.values()[i] < 0.0 || r_.values()[i] < 0.0) return false;
    if (r_.values()[i] > 0.0) r_nonzero = true;
  }
  return r_nonzero;
}

CoefficientSet refine_common_mesh(const PiecewiseConstant& s, const PiecewiseConstant& q,
                                  const PiecewiseConstant& r) {
  if (s.a() != q.a() || s.a() != r.a() || s.b() != q.b() || s.b() != r.b()) {
    throw Error(ErrorKind::DomainMismatch, "coefficients are not defined on the same interval");
  }
  std::vector<double> mesh;
  for (const auto* f : {&s, &q, &r}) mesh.insert(mesh.end(), f->breakpoints().begin(), f->breakpoints().end());
  std::ranges::sort(mesh);
  mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());
  return CoefficientSet(s.resampled(mesh), q.resampled(mesh), r.resampled(mesh));
}

double weyl_constant(const CoefficientSet& coeffs, const Interval& interval) {
  if (coeffs.s().a() != interval.a() || coeffs.s().b() != interval.b()) {
    throw Error(ErrorKind::DomainMismatch, "coefficients are not defined on the given interval");
  }
  double c = 0.0;
  for (std::size_t i = 0; i < coeffs.pieces(); ++i) {
    const double rs = coeffs.r().values()[i] * coeffs.s().values()[i];
    if (rs > 0.0) c += std::sqrt(rs) * coeffs.s().piece_length(i);
  }
  return c;
}

BoundaryCondition::BoundaryCondition(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  constexpr double pi = std::numbers::pi;
  if (!(alpha >= 0.0 && alpha < pi)) {
    throw Error(ErrorKind::InvalidBoundary, "bc.alpha must lie in [0, π)");
  }
  if (!(beta > 0.0 && beta <= pi)) {
    throw Error(ErrorKind::InvalidBoundary, "bc.beta must lie in (0, π]");
  }
}

BoundaryCondition BoundaryCondition::dirichlet() { return {0.0, std::numbers::pi}; }

SLProblem::SLProblem(Interval interval_, CoefficientSet coeffs_, BoundaryCondition bc_)
    : interval(interval_), coeffs(std::move(coeffs_)), bc(bc_) {
  if (coeffs.s().a() != interval.a() || coeffs.s().b() != interval.b()) {
    throw Error(ErrorKind::DomainMismatch, "coefficients are not defined exactly on the interval");
  }
}

SLProblem constant_problem(double a, double b, double s, double q, double r, BoundaryCondition bc) {
  return SLProblem(Interval(a, b),
                   CoefficientSet(PiecewiseConstant::constant(a, b, s),
                                  PiecewiseConstant::constant(a, b, q),
                                  PiecewiseConstant::constant(a, b, r)),
                   bc);
}

}  // namespace slprime
