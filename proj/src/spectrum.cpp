#include "slprime/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <ostream>
#include <sstream>

#include "slprime/csv.hpp"
#include "slprime/error.hpp"
#include "slprime/parallel.hpp"
#include "slprime/shoot.hpp"

namespace slprime {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxBisections = 400;

void append_bytes(std::string& buf, double x) {
  char raw[sizeof(double)];
  std::memcpy(raw, &x, sizeof x);
  buf.append(raw, sizeof raw);
}

}  // namespace

std::string problem_hash(const SLProblem& problem) {
  std::string buf;
  append_bytes(buf, problem.interval.a());
  append_bytes(buf, problem.interval.b());
  for (double x : problem.coeffs.mesh()) append_bytes(buf, x);
  for (const auto* f : {&problem.coeffs.s(), &problem.coeffs.q(), &problem.coeffs.r()}) {
    for (double x : f->values()) append_bytes(buf, x);
  }
  append_bytes(buf, problem.bc.alpha());
  append_bytes(buf, problem.bc.beta());
  return csv::fnv1a_hex(buf);
}

Eigenvalue eigenvalue(const SLProblem& problem, int n, const SolverOptions& opts) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "eigenvalue index must be >= 1");
  if (!problem.coeffs.right_definite()) {
    throw Error(ErrorKind::NotRightDefinite,
                "eigenvalue solver requires s >= 0, r >= 0 and r not identically zero");
  }
  const double target = problem.bc.beta() + (n - 1) * kPi;
  auto miss = [&](double lambda) { return prufer_angle(problem, lambda).theta_b - target; };
  auto not_found = [&] {
    std::ostringstream os;
    os << "eigenvalue " << n << " not reached within |lambda| <= " << opts.lambda_cap;
    return Error(ErrorKind::EigenvalueNotFound, os.str());
  };

  const double c = weyl_constant(problem.coeffs, problem.interval);
  const double guess = std::clamp(c > 0.0 ? std::pow(n * kPi / c, 2) : double(n) * n,
                                  -opts.lambda_cap, opts.lambda_cap);

  double lo, hi;
  double step = std::max(1.0, std::abs(guess));
  if (miss(guess) < 0.0) {
    lo = guess;
    hi = std::min(lo + step, opts.lambda_cap);
    while (miss(hi) < 0.0) {
      if (hi >= opts.lambda_cap) throw not_found();
      lo = hi;
      step *= 2.0;
      hi = std::min(lo + step, opts.lambda_cap);
    }
  } else {
    hi = guess;
    lo = std::max(hi - step, -opts.lambda_cap);
    while (miss(lo) >= 0.0) {
      if (lo <= -opts.lambda_cap) throw not_found();
      hi = lo;
      step *= 2.0;
      lo = std::max(hi - step, -opts.lambda_cap);
    }
  }

  // Invariant: miss(lo) < 0 <= miss(hi).
  double best = hi;
  double best_miss = miss(hi);
  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    const double fm = miss(mid);
    if (std::abs(fm) < std::abs(best_miss)) {
      best = mid;
      best_miss = fm;
    }
    const double tol = std::max(opts.lambda_tol_abs, opts.lambda_tol_rel * std::max(std::abs(lo), std::abs(hi)));
    if (hi - lo <= tol && std::abs(fm) <= opts.angle_tol) {
      best = mid;
      best_miss = fm;
      break;
    }
    (fm < 0.0 ? lo : hi) = mid;
  }

  Eigenvalue ev;
  ev.index = n;
  ev.value = best;
  ev.residual = std::abs(best_miss);
  ev.oscillation = prufer_angle(problem, best).winding;
  return ev;
}

Spectrum compute_spectrum(const SLProblem& problem, int n_max, const SolverOptions& opts) {
  if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "n_max must be >= 1");
  if (!problem.coeffs.right_definite()) {
    throw Error(ErrorKind::NotRightDefinite,
                "eigenvalue solver requires s >= 0, r >= 0 and r not identically zero");
  }
  std::vector<std::optional<Eigenvalue>> found(static_cast<std::size_t>(n_max));
  std::vector<std::string> reasons(found.size());
  parallel_for(found.size(), [&](std::size_t i) {
    try {
      found[i] = eigenvalue(problem, static_cast<int>(i) + 1, opts);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EigenvalueNotFound) throw;
      reasons[i] = e.what();
    }
  });

  Spectrum out;
  out.problem_hash = problem_hash(problem);
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (!found[i]) {
      out.truncated_at = static_cast<int>(i) + 1;
      out.truncation_reason = reasons[i];
      break;
    }
    out.eigenvalues.push_back(*found[i]);
  }
  return out;
}

WeylFit weyl_fit(const Spectrum& spectrum, const CoefficientSet& coeffs, const Interval& interval) {
  if (spectrum.size() < 10) {
    throw Error(ErrorKind::InsufficientData, "Weyl fit needs at least 10 eigenvalues");
  }
  const double c = weyl_constant(coeffs, interval);
  if (c <= 0.0) throw Error(ErrorKind::InsufficientData, "Weyl constant is zero");

  WeylFit fit;
  fit.reference = kPi * kPi / (c * c);
  std::vector<double> ratios;
  for (const auto& ev : spectrum.eigenvalues) {
    const double n2 = double(ev.index) * ev.index;
    fit.per_n.emplace_back(ev.index, ev.value / (n2 * fit.reference) - 1.0);
    if (2 * ev.index > static_cast<int>(spectrum.size())) ratios.push_back(ev.value / n2);
  }
  std::ranges::sort(ratios);
  const std::size_t m = ratios.size();
  fit.fitted = m % 2 ? ratios[m / 2] : 0.5 * (ratios[m / 2 - 1] + ratios[m / 2]);
  fit.deviation = std::abs(fit.fitted - fit.reference) / fit.reference;
  return fit;
}

void write_csv(std::ostream& os, const Spectrum& spectrum) {
  csv::row(os, {"n", "lambda", "oscillation", "residual"});
  for (const auto& ev : spectrum.eigenvalues) {
    csv::row(os, {csv::num(static_cast<long long>(ev.index)), csv::num(ev.value),
                  csv::num(static_cast<long long>(ev.oscillation)), csv::num(ev.residual)});
  }
}

}  // namespace slprime
