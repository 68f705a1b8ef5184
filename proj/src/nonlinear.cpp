#include "slprime/nonlinear.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "slprime/csv.hpp"
#include "slprime/error.hpp"

namespace slprime {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

SLProblem make_base(const PiecewiseConstant& q) {
  if (q.a() != 0.0 || q.b() != 1.0) {
    throw Error(ErrorKind::DomainMismatch, "nonlinear problem potential must be defined on [0, 1]");
  }
  return SLProblem(Interval(0.0, 1.0),
                   refine_common_mesh(PiecewiseConstant::constant(0.0, 1.0, 1.0), q,
                                      PiecewiseConstant::constant(0.0, 1.0, 1.0)),
                   BoundaryCondition::dirichlet());
}

}  // namespace

NonlinearProblem::NonlinearProblem(PiecewiseConstant q) : q_(std::move(q)), base_(make_base(q_)) {}

NonlinearProblem NonlinearProblem::free() {
  return NonlinearProblem(PiecewiseConstant::constant(0.0, 1.0, 0.0));
}

double lambda_map_minimum() { return (kPi * kE) * (kPi * kE); }

double lambda_map(double lambda) {
  if (!(lambda > 1.0)) {
    throw Error(ErrorKind::OutOfDomain, "lambda map requires lambda > 1");
  }
  const double t = kPi * lambda / std::log(lambda);
  return t * t;
}

double invert_map(double mu, Branch branch) {
  if (!(mu >= lambda_map_minimum())) {
    throw Error(ErrorKind::NoRoot, "mu = " + csv::num(mu) + " lies below the minimum (pi e)^2");
  }
  // Work with lambda / log lambda = sqrt(mu) / pi, which is better conditioned than the square.
  const double rhs = std::sqrt(mu) / kPi;
  auto g = [rhs](double x) { return x / std::log(x) - rhs; };
  if (g(kE) >= 0.0) return kE;

  double lo, hi;
  if (branch == Branch::principal) {
    lo = kE;
    hi = 2.0 * kE;
    while (g(hi) < 0.0) {
      lo = hi;
      hi *= 2.0;
    }
  } else {
    // g decreases on (1, e]: positive near 1, non-positive at e.
    lo = 1.0;
    hi = kE;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    const bool below = g(mid) < 0.0;
    if ((branch == Branch::principal) == below) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(g(lo)) < std::abs(g(hi)) ? lo : hi;
}

NonlinearEigen nonlinear_eigen(const NonlinearProblem& problem, int n, const SolverOptions& opts) {
  NonlinearEigen out;
  out.n = n;
  out.mu = eigenvalue(problem.base(), n, opts).value;
  if (out.mu >= lambda_map_minimum()) out.lambda = invert_map(out.mu, Branch::principal);
  return out;
}

std::vector<NonlinearEigen> nonlinear_spectrum(const NonlinearProblem& problem, int n_max,
                                               const SolverOptions& opts) {
  const auto spec = compute_spectrum(problem.base(), n_max, opts);
  std::vector<NonlinearEigen> out;
  out.reserve(spec.size());
  for (const auto& ev : spec.eigenvalues) {
    NonlinearEigen row{ev.index, ev.value, std::nullopt};
    if (row.mu >= lambda_map_minimum()) row.lambda = invert_map(row.mu, Branch::principal);
    out.push_back(row);
  }
  return out;
}

double lambda_expansion(std::uint64_t n) {
  if (n < 16) throw Error(ErrorKind::OutOfDomain, "three-term expansion needs n >= 16");
  const double x = static_cast<double>(n);
  const double l = std::log(x);
  const double ll = std::log(l);
  return x * (l + ll + std::log(ll));
}

void write_nonlinear_csv(std::ostream& os, std::span<const NonlinearEigen> rows,
                         std::span<const std::uint32_t> primes) {
  csv::row(os, {"n", "mu", "lambda", "p_n", "lambda_minus_p_n"});
  for (const auto& r : rows) {
    const double p = primes[static_cast<std::size_t>(r.n) - 1];
    csv::row(os, {csv::num(static_cast<long long>(r.n)), csv::num(r.mu),
                  r.lambda ? csv::num(*r.lambda) : std::string{}, csv::num(static_cast<long long>(p)),
                  r.lambda ? csv::num(*r.lambda - p) : std::string{}});
  }
}

}  // namespace slprime
