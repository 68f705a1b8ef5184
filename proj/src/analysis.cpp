#include "slprime/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "slprime/csv.hpp"
#include "slprime/error.hpp"
#include "slprime/primes.hpp"

namespace slprime {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kTrendCheckpoints = 9;

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw Error(ErrorKind::EpsilonOutOfRange, "epsilon must lie in (0, 1/2), got " + csv::num(epsilon));
  }
}

PiecewiseConstant abs_values(const PiecewiseConstant& f) {
  std::vector<double> vals(f.values().begin(), f.values().end());
  for (auto& v : vals) v = std::abs(v);
  return {std::vector<double>(f.breakpoints().begin(), f.breakpoints().end()), std::move(vals)};
}

double log_w(const SLProblem& problem, cplx lambda, const State& init, double x) {
  const auto st = propagate(problem, lambda, init, x);
  const double w = std::abs(lambda) * std::norm(st.dir.u) + std::norm(st.dir.v);
  return 2.0 * st.log_scale + std::log(w);
}

}  // namespace

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::string verdict_line(Verdict v, const std::string& tag) {
  return std::string("VERDICT: ") + to_string(v) + " " + tag;
}

Spectrum model_spectrum(double growth_constant, int n_max) {
  Spectrum s;
  s.problem_hash = "model:" + csv::num(growth_constant);
  s.eigenvalues.reserve(static_cast<std::size_t>(std::max(n_max, 0)));
  for (int n = 1; n <= n_max; ++n) {
    s.eigenvalues.push_back({n, growth_constant * double(n) * n, n - 1, 0.0});
  }
  return s;
}

IncompatibilityReport incompatibility_report(const Spectrum& spectrum, int n_max) {
  if (n_max < 10) throw Error(ErrorKind::InsufficientData, "incompatibility report needs n_max >= 10");
  if (spectrum.size() < static_cast<std::size_t>(n_max)) {
    throw Error(ErrorKind::InsufficientData, "spectrum holds " + std::to_string(spectrum.size()) +
                                                 " eigenvalues, fewer than n_max = " + std::to_string(n_max));
  }
  const auto primes = first_primes(static_cast<std::size_t>(n_max));
  IncompatibilityReport rep;
  rep.rows.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const auto& ev = spectrum[static_cast<std::size_t>(n) - 1];
    const auto p = primes[static_cast<std::size_t>(n) - 1];
    rep.rows.push_back({n, ev.value, p, static_cast<double>(p) / ev.value});
  }
  if (n_max < 100) {
    rep.verdict = Verdict::inconclusive;
    rep.note = "too-small sample: verdict withheld below n_max = 100";
    return rep;
  }
  // Prime gaps make p_n / lambda_n jitter step to step, so the trend is read at
  // geometrically spaced checkpoints across the upper half.
  const double lo = std::max(1.0, std::floor(n_max / 2.0));
  for (int k = 0; k < kTrendCheckpoints; ++k) {
    const int n = static_cast<int>(std::lround(lo * std::pow(n_max / lo, k / double(kTrendCheckpoints - 1))));
    if (rep.checkpoints.empty() || rep.checkpoints.back() != n) rep.checkpoints.push_back(n);
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < rep.checkpoints.size(); ++i) {
    if (!(rep.rows[rep.checkpoints[i] - 1].ratio < rep.rows[rep.checkpoints[i - 1] - 1].ratio)) decreasing = false;
  }
  const double first = rep.rows.front().ratio;
  const double last = rep.rows.back().ratio;
  const bool collapsed = last < 0.01 * first;
  rep.verdict = decreasing && collapsed ? Verdict::pass : Verdict::fail;
  rep.note = std::string(decreasing ? "ratio decreasing" : "ratio not decreasing") +
             " over upper half; final/first = " + csv::num(last / first);
  return rep;
}

void write_csv(std::ostream& os, const IncompatibilityReport& report) {
  csv::row(os, {"n", "lambda", "p_n", "ratio"});
  for (const auto& r : report.rows) {
    csv::row(os, {csv::num(static_cast<long long>(r.n)), csv::num(r.lambda),
                  csv::num(static_cast<long long>(r.prime)), csv::num(r.ratio)});
  }
}

bool GrowthReport::holds(double relative_tol) const {
  return std::ranges::all_of(samples, [&](const GrowthSample& g) { return g.slack >= -relative_tol * g.bound; });
}

GrowthReport growth_check(const SLProblem& problem, cplx lambda, int x_samples) {
  const double mod = std::abs(lambda);
  if (!(mod >= 1.0)) throw Error(ErrorKind::InvalidArgument, "growth check needs |lambda| >= 1");
  if (x_samples < 1) throw Error(ErrorKind::InvalidArgument, "growth check needs x_samples >= 1");

  const auto& cs = problem.coeffs;
  const auto abs_r = abs_values(cs.r());
  const auto abs_s = abs_values(cs.s());
  const auto abs_q = abs_values(cs.q());
  const double root = std::sqrt(mod);
  const State init = left_boundary_state(problem);
  const double a = problem.interval.a();
  const double len = problem.interval.length();
  const double h = len / (4.0 * x_samples);

  GrowthReport rep;
  rep.min_slack = INFINITY;
  rep.min_relative_slack = INFINITY;
  for (int k = 0; k < x_samples; ++k) {
    const double x = a + (k + 0.5) * len / x_samples;
    const double x0 = x - h;
    const double x1 = x + h;
    GrowthSample g;
    g.x = x;
    g.measured = (log_w(problem, lambda, init, x1) - log_w(problem, lambda, init, x0)) / (x1 - x0);
    g.bound = (root * (integrate(abs_r, x0, x1) + integrate(abs_s, x0, x1)) +
               integrate(abs_q, x0, x1) / root) / (x1 - x0);
    g.slack = g.bound - std::abs(g.measured);
    rep.min_slack = std::min(rep.min_slack, g.slack);
    if (g.bound > 0.0) rep.min_relative_slack = std::min(rep.min_relative_slack, g.slack / g.bound);
    rep.samples.push_back(g);
  }
  return rep;
}

void write_csv(std::ostream& os, const GrowthReport& report) {
  csv::row(os, {"x", "measured", "bound", "slack"});
  for (const auto& g : report.samples) {
    csv::row(os, {csv::num(g.x), csv::num(g.measured), csv::num(g.bound), csv::num(g.slack)});
  }
}

OrderEstimate order_estimate(const SLProblem& problem, std::span<const double> radii,
                             int angular_samples) {
  if (radii.size() < 2) throw Error(ErrorKind::InvalidArgument, "order estimate needs at least two radii");
  if (angular_samples < 8) throw Error(ErrorKind::InvalidArgument, "order estimate needs angular_samples >= 8");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw Error(ErrorKind::InvalidArgument, "radii must be positive and strictly increasing");
    }
  }
  OrderEstimate est;
  est.radii.assign(radii.begin(), radii.end());
  est.low_confidence = radii.size() < 3 || std::log10(radii.back() / radii.front()) < 3.0;

  const State init = left_boundary_state(problem);
  std::vector<double> xs, ys;
  for (double radius : radii) {
    double log_m = -INFINITY;
    for (int j = 0; j < angular_samples; ++j) {
      const cplx lambda = std::polar(radius, 2.0 * kPi * j / angular_samples);
      const auto st = propagate(problem, lambda, init);
      log_m = std::max(log_m, std::log(std::abs(st.dir.u)) + st.log_scale);
    }
    est.log_max_modulus.push_back(log_m);
    if (log_m > std::log(10.0)) {
      xs.push_back(std::log(radius));
      ys.push_back(std::log(log_m));
    }
  }
  est.points_used = static_cast<int>(xs.size());
  if (xs.size() < 2) {
    throw Error(ErrorKind::DegenerateModulus, "M(R) exceeds 10 at fewer than two radii");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  est.slope = sxy / sxx;
  return est;
}

void write_csv(std::ostream& os, const OrderEstimate& estimate) {
  csv::row(os, {"R", "log_M", "log_log_M"});
  for (std::size_t i = 0; i < estimate.radii.size(); ++i) {
    const double lm = estimate.log_max_modulus[i];
    csv::row(os, {csv::num(estimate.radii[i]), csv::num(lm), lm > 0.0 ? csv::num(std::log(lm)) : ""});
  }
}

std::vector<std::uint64_t> series_checkpoints(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 1000; c <= n; c *= 10) out.push_back(c);
  if (out.empty() || out.back() != n) out.push_back(n);
  return out;
}

std::vector<SeriesCheckpoint> partial_sum_primes(double epsilon, std::uint64_t n,
                                                 std::span<const std::uint32_t> primes) {
  check_epsilon(epsilon);
  if (n < 1 || n > 10'000'000) throw Error(ErrorKind::InvalidArgument, "N must lie in [1, 10^7]");
  if (primes.size() < n) throw Error(ErrorKind::InsufficientData, "fewer than N primes supplied");
  const double power = -(0.5 + epsilon);
  std::vector<SeriesCheckpoint> out;
  long double sum = 0.0L;
  std::uint64_t k = 0;
  for (auto cp : series_checkpoints(n)) {
    for (; k < cp; ++k) sum += std::pow(static_cast<long double>(primes[k]), static_cast<long double>(power));
    out.push_back({cp, static_cast<double>(sum), 0.0});
  }
  return out;
}

std::vector<SeriesCheckpoint> partial_sum_primes(double epsilon, std::uint64_t n) {
  check_epsilon(epsilon);
  if (n < 1 || n > 10'000'000) throw Error(ErrorKind::InvalidArgument, "N must lie in [1, 10^7]");
  const auto primes = first_primes(n);
  return partial_sum_primes(epsilon, n, primes);
}

std::vector<SeriesCheckpoint> partial_sum_spectrum(double growth_constant, double epsilon,
                                                   std::uint64_t n) {
  check_epsilon(epsilon);
  if (!(growth_constant > 0.0)) throw Error(ErrorKind::InvalidArgument, "growth constant must be positive");
  if (n < 1 || n > 10'000'000) throw Error(ErrorKind::InvalidArgument, "N must lie in [1, 10^7]");
  const long double power = -(0.5L + epsilon);
  const double coef = std::pow(growth_constant, -(0.5 + epsilon));
  std::vector<SeriesCheckpoint> out;
  long double sum = 0.0L;
  std::uint64_t k = 1;
  for (auto cp : series_checkpoints(n)) {
    for (; k <= cp; ++k) {
      const long double lam = static_cast<long double>(growth_constant) * k * k;
      sum += std::pow(lam, power);
    }
    const double tail = coef * std::pow(static_cast<double>(cp), -2.0 * epsilon) / (2.0 * epsilon);
    out.push_back({cp, static_cast<double>(sum), tail});
  }
  return out;
}

void write_series_csv(std::ostream& os, std::span<const SeriesCheckpoint> primes,
                      std::span<const SeriesCheckpoint> spectrum) {
  csv::row(os, {"N", "S_primes", "S_spectrum", "spectrum_tail_bound"});
  const std::size_t rows = std::max(primes.size(), spectrum.size());
  for (std::size_t i = 0; i < rows; ++i) {
    const std::uint64_t n = i < primes.size() ? primes[i].n : spectrum[i].n;
    csv::row(os, {csv::num(static_cast<long long>(n)),
                  i < primes.size() ? csv::num(primes[i].partial_sum) : "",
                  i < spectrum.size() ? csv::num(spectrum[i].partial_sum) : "",
                  i < spectrum.size() ? csv::num(spectrum[i].tail_bound) : ""});
  }
}

}  // namespace slprime
