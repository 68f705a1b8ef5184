#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace slprime {

/// All primes <= limit, ascending.
struct PrimeTable {
  std::uint64_t limit = 0;
  std::vector<std::uint32_t> primes;

  std::size_t count() const noexcept { return primes.size(); }
  /// p_n, 1-based.
  std::uint64_t nth(std::size_t n) const { return primes.at(n - 1); }
};

inline constexpr std::uint64_t kSieveLimitMax = 1'000'000'000;

/// Sieve of Eratosthenes over odd numbers. Throws LimitTooLarge above 10^9.
PrimeTable sieve(std::uint64_t limit);

/// The first n primes (sieve sized by the Rosser upper bound, doubled if short).
std::vector<std::uint32_t> first_primes(std::size_t n);

std::uint64_t nth_prime(std::size_t n);

/// n log n; defined for n >= 2.
double pnt_asymptotic(std::uint64_t n);

/// n log n + n log log n - n + n (log log n - 2) / log n; defined for n >= 3.
/// The expansion continues beyond these four terms; they are all that is evaluated.
double cesaro(std::uint64_t n);

/// Rows n, p_n, n log n, cesaro(n), relative errors of both approximations.
/// primes must hold at least max(ns) entries; cesaro columns are empty for n < 3.
void write_prime_csv(std::ostream& os, std::span<const std::uint32_t> primes,
                     std::span<const std::uint64_t> ns);

}  // namespace slprime
