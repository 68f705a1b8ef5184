#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "slprime/error.hpp"
#include "slprime/nonlinear.hpp"
#include "slprime/primes.hpp"

using namespace slprime;
using std::numbers::pi;
using std::numbers::e;

namespace {

// Principal root of x / log x = m by plain bisection on x - m log x over [e, big].
double oracle_root(double m) {
  return oracle::bisect([m](double x) { return x - m * std::log(x); }, e, 1e12);
}

}  // namespace

TEST_CASE("lambda_map") {
  CHECK(lambda_map(e) == doctest::Approx(72.9270606).epsilon(1e-8));
  CHECK(lambda_map(e) == doctest::Approx(lambda_map_minimum()).epsilon(1e-15));
  CHECK(lambda_map(e * e) == doctest::Approx(pi * pi * std::pow(e, 4) / 4).epsilon(1e-14));
  for (double bad : {1.0, 0.5, -3.0}) {
    try {
      lambda_map(bad);
      FAIL("expected OutOfDomain");
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::OutOfDomain);
    }
  }
}

TEST_CASE("invert_map") {
  CHECK(invert_map(9 * pi * pi) == doctest::Approx(oracle_root(3)).epsilon(1e-12));
  CHECK(invert_map(9 * pi * pi) == doctest::Approx(4.536).epsilon(1e-3));
  CHECK(invert_map(100 * pi * pi) == doctest::Approx(oracle_root(10)).epsilon(1e-12));
  CHECK(invert_map(100 * pi * pi) == doctest::Approx(35.77).epsilon(1e-3));
  try {
    invert_map(pi * pi);
    FAIL("expected NoRoot");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NoRoot);
  }

  SUBCASE("lower branch") {
    const double low = invert_map(9 * pi * pi, Branch::lower);
    CHECK(low > 1.0);
    CHECK(low < e);
    CHECK(lambda_map(low) == doctest::Approx(9 * pi * pi).epsilon(1e-10));
  }
  SUBCASE("branch minimum") { CHECK(invert_map(lambda_map_minimum()) == doctest::Approx(e).epsilon(1e-7)); }
}

TEST_CASE("invert_map inverts lambda_map and is increasing") {
  double prev = 0.0;
  for (double mu = lambda_map_minimum() * 1.0001; mu < 1e14; mu *= 1.37) {
    const double x = invert_map(mu);
    CHECK(std::abs(lambda_map(x) - mu) <= 1e-10 * mu);
    CHECK(x > prev);
    prev = x;
  }
}

TEST_CASE("nonlinear spectrum with q = 0") {
  const auto free = NonlinearProblem::free();
  const auto rows = nonlinear_spectrum(free, 12);
  REQUIRE(rows.size() == 12);
  CHECK_FALSE(rows[0].lambda);
  CHECK_FALSE(rows[1].lambda);
  CHECK(rows[0].mu == doctest::Approx(pi * pi).epsilon(1e-10));
  REQUIRE(rows[9].lambda);
  CHECK(rows[9].mu == doctest::Approx(100 * pi * pi).epsilon(1e-10));
  CHECK(*rows[9].lambda == doctest::Approx(oracle_root(10)).epsilon(1e-10));
  for (const auto& r : rows) {
    if (r.n >= 3) {
      REQUIRE(r.lambda);
      CHECK(std::abs(*r.lambda / std::log(*r.lambda) / r.n - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("nonlinear eigenvalues approach n log n") {
  const auto free = NonlinearProblem::free();
  auto ratio = [&](int n) {
    const auto ev = nonlinear_eigen(free, n);
    return *ev.lambda / (n * std::log(double(n)));
  };
  const double r3 = ratio(1000);
  const double r4 = ratio(10000);
  CHECK(r3 >= 0.99);
  CHECK(r3 <= 1.35);
  CHECK(std::abs(r4 - 1.0) < std::abs(r3 - 1.0));

  // The two-term expansion undershoots the root by about 2.07% at n = 10^4.
  const double n = 1e4;
  const double lam = *nonlinear_eigen(free, 10000).lambda;
  CHECK(lam == doctest::Approx(oracle_root(n)).epsilon(1e-10));
  const double two_term = n * std::log(n) + n * std::log(std::log(n));
  CHECK(std::abs(lam - two_term) / two_term < 0.021);
}

TEST_CASE("lambda_expansion") {
  CHECK(lambda_expansion(100) == doctest::Approx(655.6).epsilon(1e-4));
  CHECK(lambda_expansion(16) > 16 * (std::log(16.0) + std::log(std::log(16.0))));
  try {
    lambda_expansion(10);
    FAIL("expected OutOfDomain");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::OutOfDomain);
  }
}

TEST_CASE("nonlinear problem requires [0, 1] and writes CSV") {
  CHECK_THROWS_AS(NonlinearProblem(PiecewiseConstant::constant(0, 2, 0)), Error);
  const auto p = NonlinearProblem(make_piecewise({0, 0.5, 1}, {10, -10}));
  const auto rows = nonlinear_spectrum(p, 4);
  std::ostringstream os;
  write_nonlinear_csv(os, rows, first_primes(4));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,mu,lambda,p_n,lambda_minus_p_n");
  std::getline(in, line);
  CHECK(line.find(",,2,") != std::string::npos);  // n = 1 has no lambda
}
