#include <cmath>
#include <numbers>
#include <cstring>
#include <sstream>

#include "doctest.h"
#include "slprime/error.hpp"
#include "slprime/spectrum.hpp"

using namespace slprime;
using std::numbers::pi;

namespace {

SLProblem make_problem(std::vector<double> mesh, std::vector<double> s, std::vector<double> q,
                       std::vector<double> r, BoundaryCondition bc = BoundaryCondition::dirichlet()) {
  const double a = mesh.front(), b = mesh.back();
  return SLProblem(Interval(a, b),
                   CoefficientSet(PiecewiseConstant(mesh, std::move(s)), PiecewiseConstant(mesh, std::move(q)),
                                  PiecewiseConstant(mesh, std::move(r))),
                   bc);
}

SLProblem finite_atkinson() {
  return make_problem({0, 1, 2}, {1, 0}, {0, 0}, {0, 1}, BoundaryCondition(0.0, pi / 2));
}

}  // namespace

TEST_CASE("eigenvalue closed forms") {
  const auto unit = constant_problem(0, 1, 1, 0, 1);
  CHECK(eigenvalue(unit, 3).value == doctest::Approx(9 * pi * pi).epsilon(1e-11));
  const auto shifted = constant_problem(0, 1, 1, 1, 1);
  CHECK(eigenvalue(shifted, 2).value == doctest::Approx(4 * pi * pi + 1).epsilon(1e-11));
  // Neumann-type conditions at both ends (alpha = beta = pi/2): lambda_n = (n-1)^2 pi^2.
  const auto neumann = constant_problem(0, 1, 1, 0, 1, BoundaryCondition(pi / 2, pi / 2));
  CHECK(std::abs(eigenvalue(neumann, 1).value) < 1e-9);
  CHECK(eigenvalue(neumann, 4).value == doctest::Approx(9 * pi * pi).epsilon(1e-11));
}

TEST_CASE("finite Atkinson spectrum") {
  const auto p = finite_atkinson();
  const auto ev = eigenvalue(p, 1);
  CHECK(std::abs(ev.value - 1.0) < 1e-9);
  CHECK(ev.oscillation == 0);
  try {
    eigenvalue(p, 2);
    FAIL("expected EigenvalueNotFound");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EigenvalueNotFound);
  }

  const auto spec = compute_spectrum(p, 5);
  REQUIRE(spec.size() == 1);
  CHECK(spec.truncated_at == 2);
  CHECK_FALSE(spec.truncation_reason.empty());
}

TEST_CASE("compute_spectrum closed forms") {
  const auto unit = compute_spectrum(constant_problem(0, 1, 1, 0, 1), 5);
  REQUIRE(unit.size() == 5);
  CHECK_FALSE(unit.truncated_at);
  for (int n = 1; n <= 5; ++n) CHECK(unit[n - 1].value == doctest::Approx(n * n * pi * pi).epsilon(1e-11));

  const auto scaled = compute_spectrum(constant_problem(0, 1, 1, 0, 4), 3);
  for (int n = 1; n <= 3; ++n) CHECK(scaled[n - 1].value == doctest::Approx(n * n * pi * pi / 4).epsilon(1e-10));
}

TEST_CASE("spectra are ordered with n - 1 interior zeros and small residuals") {
  const std::vector<SLProblem> problems{
      constant_problem(0, 1, 1, 0, 1),
      make_problem({0, 0.5, 1}, {1, 1}, {0, 10}, {1, 1}),
      make_problem({0, 0.3, 0.6, 1}, {2, 0.5, 1}, {-20, 5, 40}, {1, 3, 0.5}, BoundaryCondition(1.0, 2.5)),
      make_problem({0, 1, 2}, {1, 0}, {0, 0}, {1, 1}),
  };
  for (const auto& p : problems) {
    const auto spec = compute_spectrum(p, 60);
    REQUIRE(spec.size() == 60);
    for (std::size_t i = 0; i < spec.size(); ++i) {
      CHECK(spec[i].index == static_cast<int>(i) + 1);
      CHECK(spec[i].oscillation == spec[i].index - 1);
      CHECK(spec[i].residual <= 1e-10);
      if (i > 0) CHECK(spec[i].value > spec[i - 1].value);
    }
  }
}

TEST_CASE("adding a constant to q shifts every eigenvalue") {
  const auto base = make_problem({0, 0.4, 1}, {1, 1}, {3, -2}, {1, 1});
  const auto moved = make_problem({0, 0.4, 1}, {1, 1}, {3 + 17.5, -2 + 17.5}, {1, 1});
  const auto a = compute_spectrum(base, 30);
  const auto b = compute_spectrum(moved, 30);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(b[i].value - a[i].value - 17.5) <= 2e-12 * b[i].value + 2e-10);
  }
}

TEST_CASE("weyl_fit") {
  const auto unit = constant_problem(0, 1, 1, 0, 1);
  const auto fit = weyl_fit(compute_spectrum(unit, 200), unit.coeffs, unit.interval);
  CHECK(fit.reference == doctest::Approx(pi * pi).epsilon(1e-15));
  CHECK(fit.deviation < 1e-6);

  const auto r4 = constant_problem(0, 1, 1, 0, 4);
  const auto fit4 = weyl_fit(compute_spectrum(r4, 40), r4.coeffs, r4.interval);
  CHECK(fit4.reference == doctest::Approx(pi * pi / 4).epsilon(1e-15));
  CHECK(fit4.fitted == doctest::Approx(pi * pi / 4).epsilon(1e-9));

  const auto step = make_problem({0, 0.5, 1}, {1, 1}, {0, 10}, {1, 1});
  const auto fit_step = weyl_fit(compute_spectrum(step, 200), step.coeffs, step.interval);
  CHECK(fit_step.deviation < 0.01);

  try {
    weyl_fit(compute_spectrum(unit, 9), unit.coeffs, unit.interval);
    FAIL("expected InsufficientData");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientData);
  }
}

TEST_CASE("Weyl law at n = 200 for assorted right-definite problems") {
  const std::vector<SLProblem> problems{
      make_problem({0, 0.5, 1}, {2, 1}, {0, 0}, {1, 1}),
      make_problem({0, 0.25, 1}, {1, 3}, {50, -50}, {4, 1}),
      make_problem({0, 1, 2}, {1, 0}, {0, 0}, {1, 1}),
      make_problem({0, 0.25, 1}, {1, 3}, {50, -50}, {4, 1}, BoundaryCondition(0.0, 1.5)),
      make_problem({-1, 0, 1, 3}, {0.5, 1, 2}, {0, 100, 0}, {2, 1, 0.25}),
  };
  for (const auto& p : problems) {
    const double c = weyl_constant(p.coeffs, p.interval);
    const auto ev = eigenvalue(p, 200);
    CHECK(std::abs(ev.value * c * c / (200.0 * 200.0 * pi * pi) - 1.0) < 0.01);
  }
}

TEST_CASE("Weyl law with non-Dirichlet conditions at both ends converges more slowly") {
  // Both angles off the Dirichlet values shift the index by one asymptotically,
  // so the relative deviation decays like 2/n.
  const auto p = make_problem({0, 0.25, 1}, {1, 3}, {50, -50}, {4, 1}, BoundaryCondition(0.5, 1.5));
  const double c = weyl_constant(p.coeffs, p.interval);
  auto dev = [&](int n) { return std::abs(eigenvalue(p, n).value * c * c / (double(n) * n * pi * pi) - 1.0); };
  CHECK(dev(2000) < 0.2 * dev(200));
  CHECK(dev(20000) < 2e-4);
}

TEST_CASE("determinism and CSV layout") {
  const auto p = make_problem({0, 0.3, 1}, {1, 2}, {4, -1}, {1, 0.5});
  const auto a = compute_spectrum(p, 25);
  const auto b = compute_spectrum(p, 25);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::memcmp(&a[i].value, &b[i].value, sizeof(double)) == 0);
  CHECK(a.problem_hash == b.problem_hash);
  CHECK(a.problem_hash != compute_spectrum(constant_problem(0, 1, 1, 0, 1), 1).problem_hash);

  std::ostringstream os;
  write_csv(os, a);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,lambda,oscillation,residual");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 25);
}

TEST_CASE("solver rejects indefinite problems") {
  const auto p = constant_problem(0, 1, -1, 0, 1);
  try {
    compute_spectrum(p, 3);
    FAIL("expected NotRightDefinite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotRightDefinite);
  }
}
