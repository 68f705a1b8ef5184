#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "slprime/shoot.hpp"
#include "slprime/spectrum.hpp"

namespace slprime {

enum class Verdict { pass, fail, inconclusive };

const char* to_string(Verdict v) noexcept;

/// "VERDICT: PASS <tag>" and friends.
std::string verdict_line(Verdict v, const std::string& tag);

/// lambda_n = growth_constant * n^2 for n = 1..n_max.
Spectrum model_spectrum(double growth_constant, int n_max);

// ---------------------------------------------------------------------------
// n^2 growth against n log n growth.

struct IncompatibilityRow {
  int n = 0;
  double lambda = 0.0;
  std::uint64_t prime = 0;
  double ratio = 0.0;  // p_n / lambda_n
};

struct IncompatibilityReport {
  std::vector<IncompatibilityRow> rows;
  /// Geometrically spaced indices in the upper half at which the trend is judged.
  std::vector<int> checkpoints;
  Verdict verdict = Verdict::inconclusive;
  std::string note;
};

/// Below n_max = 100 the ratios are still reported but the verdict is withheld.
IncompatibilityReport incompatibility_report(const Spectrum& spectrum, int n_max);

void write_csv(std::ostream& os, const IncompatibilityReport& report);

// ---------------------------------------------------------------------------
// Logarithmic-derivative bound for W = |lambda| |u|^2 + |v|^2.

struct GrowthSample {
  double x = 0.0;
  double measured = 0.0;  // centered difference of log W
  double bound = 0.0;
  double slack = 0.0;     // bound - |measured|
};

struct GrowthReport {
  std::vector<GrowthSample> samples;
  double min_slack = 0.0;
  /// Smallest slack / bound over the samples.
  double min_relative_slack = 0.0;

  /// min slack >= -tol * bound at every sample.
  bool holds(double relative_tol = 1e-3) const;
};

/// Samples x_k = a + (k + 1/2) L / K with stencil half-width L / (4K). The bound is
/// sqrt|lambda| (|r| + |s|) + |q| / sqrt|lambda| averaged over the stencil, which is
/// the pointwise value unless a breakpoint falls inside the stencil.
GrowthReport growth_check(const SLProblem& problem, cplx lambda, int x_samples);

void write_csv(std::ostream& os, const GrowthReport& report);

// ---------------------------------------------------------------------------
// Order of u(b, lambda) as an entire function of lambda.

struct OrderEstimate {
  std::vector<double> radii;
  /// log M(R), M(R) = max |u(b, R e^{i phi})| over the sampled phi.
  std::vector<double> log_max_modulus;
  /// Least-squares slope of log log M(R) against log R (radii with M(R) > 10).
  double slope = 0.0;
  int points_used = 0;
  /// Fewer than three radii, or less than three decades covered.
  bool low_confidence = false;
};

OrderEstimate order_estimate(const SLProblem& problem, std::span<const double> radii,
                             int angular_samples);

void write_csv(std::ostream& os, const OrderEstimate& estimate);

// ---------------------------------------------------------------------------
// Power sums at exponent 1/2 + epsilon.

struct SeriesCheckpoint {
  std::uint64_t n = 0;
  double partial_sum = 0.0;
  /// Only for the model spectrum: integral bound on the tail beyond n.
  double tail_bound = 0.0;
};

/// Checkpoints 10^3, 10^4, ... up to N, with N itself appended when it is not a power of ten.
std::vector<std::uint64_t> series_checkpoints(std::uint64_t n);

/// sum_{n <= N_k} p_n^{-(1/2 + epsilon)}, 0 < epsilon < 1/2, N <= 10^7.
std::vector<SeriesCheckpoint> partial_sum_primes(double epsilon, std::uint64_t n);
std::vector<SeriesCheckpoint> partial_sum_primes(double epsilon, std::uint64_t n,
                                                 std::span<const std::uint32_t> primes);

/// sum_{n <= N_k} (c n^2)^{-(1/2 + epsilon)} with tail bound c^{-(1/2+eps)} N_k^{-2 eps} / (2 eps).
std::vector<SeriesCheckpoint> partial_sum_spectrum(double growth_constant, double epsilon,
                                                   std::uint64_t n);

void write_series_csv(std::ostream& os, std::span<const SeriesCheckpoint> primes,
                      std::span<const SeriesCheckpoint> spectrum);

}  // namespace slprime
