#include "slprime/primes.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "slprime/csv.hpp"
#include "slprime/error.hpp"

namespace slprime {

PrimeTable sieve(std::uint64_t limit) {
  if (limit < 2) throw Error(ErrorKind::InvalidArgument, "sieve limit must be >= 2");
  if (limit > kSieveLimitMax) {
    throw Error(ErrorKind::LimitTooLarge,
                "sieve limit " + std::to_string(limit) + " exceeds " + std::to_string(kSieveLimitMax));
  }
  // composite[i] describes 2i + 1.
  const std::uint64_t half = (limit - 1) / 2 + 1;
  std::vector<bool> composite(half, false);
  composite[0] = true;
  for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    for (std::uint64_t j = p * p / 2; j < half; j += p) composite[j] = true;
  }
  PrimeTable table;
  table.limit = limit;
  table.primes.push_back(2);
  for (std::uint64_t i = 1; i < half; ++i) {
    if (!composite[i]) table.primes.push_back(static_cast<std::uint32_t>(2 * i + 1));
  }
  return table;
}

std::vector<std::uint32_t> first_primes(std::size_t n) {
  if (n == 0) return {};
  std::uint64_t bound = 15;
  if (n >= 6) {
    const double x = static_cast<double>(n);
    bound = static_cast<std::uint64_t>(std::ceil(x * (std::log(x) + std::log(std::log(x))))) + 10;
  }
  for (;;) {
    auto table = sieve(std::min(bound, kSieveLimitMax));
    if (table.count() >= n) {
      table.primes.resize(n);
      return std::move(table.primes);
    }
    if (bound >= kSieveLimitMax) {
      throw Error(ErrorKind::LimitTooLarge, "p_n for n = " + std::to_string(n) + " exceeds the sieve guard");
    }
    bound *= 2;
  }
}

std::uint64_t nth_prime(std::size_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "prime index must be >= 1");
  return first_primes(n).back();
}

double pnt_asymptotic(std::uint64_t n) {
  if (n < 2) throw Error(ErrorKind::OutOfDomain, "n log n approximation needs n >= 2");
  const double x = static_cast<double>(n);
  return x * std::log(x);
}

double cesaro(std::uint64_t n) {
  if (n < 3) throw Error(ErrorKind::OutOfDomain, "Cesàro expansion needs n >= 3");
  const double x = static_cast<double>(n);
  const double l = std::log(x);
  const double ll = std::log(l);
  return x * l + x * ll - x + x * (ll - 2.0) / l;
}

void write_prime_csv(std::ostream& os, std::span<const std::uint32_t> primes,
                     std::span<const std::uint64_t> ns) {
  csv::row(os, {"n", "p_n", "n_log_n", "cesaro", "rel_err_n_log_n", "rel_err_cesaro"});
  for (auto n : ns) {
    const double p = primes[n - 1];
    std::string nl, ce, enl, ece;
    if (n >= 2) {
      const double a = pnt_asymptotic(n);
      nl = csv::num(a);
      enl = csv::num(std::abs(a - p) / p);
    }
    if (n >= 3) {
      const double c = cesaro(n);
      ce = csv::num(c);
      ece = csv::num(std::abs(c - p) / p);
    }
    csv::row(os, {csv::num(static_cast<long long>(n)), csv::num(static_cast<long long>(p)), nl, ce,
                  enl, ece});
  }
}

}  // namespace slprime
