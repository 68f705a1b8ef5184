#include "slprime/shoot.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "slprime/error.hpp"

namespace slprime {

namespace {

constexpr double kPi = std::numbers::pi;
// Below this |z| the kernels switch to their Taylor series.
constexpr double kSeriesRadius = 1e-4;
// Hyperbolic growth beyond exp(kScaleThreshold) is carried in log_scale.
constexpr double kScaleThreshold = 20.0;

template <typename T>
PieceKernels<T> series_kernels(T z) {
  // cos(sqrt z) = sum (-z)^j/(2j)!, sin(sqrt z)/sqrt z = sum (-z)^j/(2j+1)!, through z^4.
  const T c = 1.0 + z * (-1.0 / 2 + z * (1.0 / 24 + z * (-1.0 / 720 + z * (1.0 / 40320))));
  const T sigma = 1.0 + z * (-1.0 / 6 + z * (1.0 / 120 + z * (-1.0 / 5040 + z * (1.0 / 362880))));
  return {c, sigma, 0.0};
}

double max_abs(const State& x) { return std::max(std::abs(x.u), std::abs(x.v)); }

void renormalize(ScaledState& st) {
  const double n = max_abs(st.dir);
  if (n > 0.0 && std::isfinite(n)) {
    st.dir.u /= n;
    st.dir.v /= n;
    st.log_scale += std::log(n);
  }
}

}  // namespace

PieceKernels<double> piece_kernels(double z) {
  if (std::abs(z) < kSeriesRadius) return series_kernels(z);
  if (z > 0.0) {
    const double w = std::sqrt(z);
    return {std::cos(w), std::sin(w) / w, 0.0};
  }
  const double w = std::sqrt(-z);
  if (w <= kScaleThreshold) return {std::cosh(w), std::sinh(w) / w, 0.0};
  const double e = std::exp(-2.0 * w);
  return {0.5 * (1.0 + e), 0.5 * (1.0 - e) / w, w};
}

PieceKernels<cplx> piece_kernels(cplx z) {
  if (std::abs(z) < kSeriesRadius) return series_kernels(z);
  const cplx w = std::sqrt(z);
  const double y = std::abs(w.imag());
  const cplx i{0.0, 1.0};
  if (y <= kScaleThreshold) return {std::cos(w), std::sin(w) / w, 0.0};
  const cplx ep = std::exp(i * w - y);
  const cplx em = std::exp(-i * w - y);
  return {0.5 * (ep + em), (ep - em) / (2.0 * i * w), y};
}

TransferMatrix TransferMatrix::unscaled() const {
  const double f = std::exp(log_scale);
  return {m11 * f, m12 * f, m21 * f, m22 * f, 0.0};
}

cplx TransferMatrix::determinant() const {
  return (m11 * m22 - m12 * m21) * std::exp(2.0 * log_scale);
}

double TransferMatrix::unimodularity_defect() const {
  const cplx det = m11 * m22 - m12 * m21;
  const double target = std::exp(-2.0 * log_scale);
  const double size = std::abs(m11 * m22) + std::abs(m12 * m21);
  return std::abs(det - target) / std::max(size, target);
}

State TransferMatrix::apply(const State& x) const {
  const double f = std::exp(log_scale);
  return {(m11 * x.u + m12 * x.v) * f, (m21 * x.u + m22 * x.v) * f};
}

TransferMatrix TransferMatrix::after(const TransferMatrix& first) const {
  TransferMatrix out{m11 * first.m11 + m12 * first.m21, m11 * first.m12 + m12 * first.m22,
                     m21 * first.m11 + m22 * first.m21, m21 * first.m12 + m22 * first.m22,
                     log_scale + first.log_scale};
  const double n = std::max({std::abs(out.m11), std::abs(out.m12), std::abs(out.m21),
                             std::abs(out.m22)});
  if (n > 0.0 && std::isfinite(n) && (n > 1e100 || n < 1e-100)) {
    out.m11 /= n;
    out.m12 /= n;
    out.m21 /= n;
    out.m22 /= n;
    out.log_scale += std::log(n);
  }
  return out;
}

State ScaledState::value() const {
  const double f = std::exp(log_scale);
  return {dir.u * f, dir.v * f};
}

TransferMatrix piece_matrix(double s, double q, double r, cplx lambda, double h) {
  const cplx k = lambda * r - q;
  const cplx z = s * k * h * h;
  const auto ker = piece_kernels(z);
  return {ker.c, -s * h * ker.sigma, k * h * ker.sigma, ker.c, ker.log_scale};
}

ScaledState propagate(const SLProblem& problem, cplx lambda, const State& init, double x_end) {
  const auto& cs = problem.coeffs;
  const auto mesh = cs.mesh();
  if (x_end < problem.interval.a() || x_end > problem.interval.b()) {
    throw Error(ErrorKind::OutOfDomain, "propagation target outside the interval");
  }
  ScaledState st{init, 0.0};
  renormalize(st);
  for (std::size_t i = 0; i < cs.pieces() && mesh[i] < x_end; ++i) {
    const double h = std::min(mesh[i + 1], x_end) - mesh[i];
    const auto m = piece_matrix(cs.s().values()[i], cs.q().values()[i], cs.r().values()[i],
                                lambda, h);
    st.dir = {m.m11 * st.dir.u + m.m12 * st.dir.v, m.m21 * st.dir.u + m.m22 * st.dir.v};
    st.log_scale += m.log_scale;
    renormalize(st);
  }
  return st;
}

ScaledState propagate(const SLProblem& problem, cplx lambda, const State& init) {
  return propagate(problem, lambda, init, problem.interval.b());
}

State integrate_system(const SLProblem& problem, cplx lambda, const State& init) {
  return propagate(problem, lambda, init).value();
}

State left_boundary_state(const SLProblem& problem) {
  return {std::sin(problem.bc.alpha()), -std::cos(problem.bc.alpha())};
}

namespace {

// Picks the representative of `raw` (mod 2 pi) closest to `center`.
double nearest_branch(double raw, double center) {
  return raw + 2.0 * kPi * std::round((center - raw) / (2.0 * kPi));
}

// Angle advance across one constant piece. The state supplies theta mod 2 pi; the
// branch comes from the trapping region of theta' = s cos^2 + k sin^2 (non-oscillatory
// pieces) or from the linear phase of the scaled angle (oscillatory pieces).
double advance_angle(double theta0, double s, double k, double h, double raw) {
  double theta1;
  if (s > 0.0 && k > 0.0) {
    const double omega = std::sqrt(s * k);
    const double ratio = std::sqrt(k / s);
    const double j0 = std::round(theta0 / kPi);
    const double d0 = theta0 - j0 * kPi;
    const double psi1 = j0 * kPi + std::atan2(ratio * std::sin(d0), std::cos(d0)) + omega * h;
    const double j1 = std::round(psi1 / kPi);
    const double d1 = psi1 - j1 * kPi;
    const double estimate = j1 * kPi + std::atan2(std::sin(d1) / ratio, std::cos(d1));
    theta1 = nearest_branch(raw, estimate);
  } else if (s > 0.0) {
    // theta cannot cross m pi downward nor m pi + pi/2 upward: confined to ((m-1) pi, m pi + pi/2].
    const double m = std::ceil((theta0 - 0.5 * kPi) / kPi);
    theta1 = nearest_branch(raw, m * kPi - 0.25 * kPi);
  } else {
    // s = 0: u is frozen, theta stays within [m pi, (m+1) pi).
    const double m = std::floor(theta0 / kPi);
    theta1 = nearest_branch(raw, m * kPi + 0.5 * kPi);
  }
  return std::max(theta1, std::floor(theta0 / kPi) * kPi);
}

}  // namespace

AngleResult prufer_angle(const SLProblem& problem, double lambda) {
  const auto& cs = problem.coeffs;
  if (!cs.right_definite()) {
    throw Error(ErrorKind::NotRightDefinite,
                "angle continuation requires s >= 0, r >= 0 and r not identically zero");
  }
  const auto mesh = cs.mesh();
  double theta = problem.bc.alpha();
  double u = std::sin(theta);
  double v = -std::cos(theta);
  for (std::size_t i = 0; i < cs.pieces(); ++i) {
    const double s = cs.s().values()[i];
    const double k = lambda * cs.r().values()[i] - cs.q().values()[i];
    const double h = mesh[i + 1] - mesh[i];
    const auto ker = piece_kernels(s * k * h * h);
    const double u1 = ker.c * u - s * h * ker.sigma * v;
    const double v1 = k * h * ker.sigma * u + ker.c * v;
    const double n = std::max(std::abs(u1), std::abs(v1));
    u = u1 / n;
    v = v1 / n;
    theta = advance_angle(theta, s, k, h, std::atan2(u, -v));
  }
  AngleResult out;
  out.theta_b = theta;
  out.u_b = u;
  out.v_b = v;
  // Zeros of u at m pi for m >= 1; a zero exactly at b is not interior.
  const double tol = 1e-9 * std::max(1.0, std::abs(theta));
  out.winding = std::max(0, static_cast<int>(std::ceil((theta - tol) / kPi)) - 1);
  return out;
}

}  // namespace slprime
