#include "slprime/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "slprime/csv.hpp"
#include "slprime/error.hpp"
#include "slprime/nonlinear.hpp"
#include "slprime/parallel.hpp"
#include "slprime/primes.hpp"

namespace slprime {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> uniform_mesh(int pieces) {
  std::vector<double> mesh(static_cast<std::size_t>(pieces) + 1);
  for (int i = 0; i <= pieces; ++i) mesh[static_cast<std::size_t>(i)] = double(i) / pieces;
  mesh.back() = 1.0;
  return mesh;
}

double objective_for(const PiecewiseConstant& q, std::span<const double> targets,
                     const SolverOptions& opts) {
  const NonlinearProblem problem(q);
  double j = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double mu = eigenvalue(problem.base(), static_cast<int>(i) + 1, opts).value;
    const double d = (mu - targets[i]) / targets[i];
    j += d * d;
  }
  return j;
}

struct RestartOutcome {
  std::vector<double> q;
  double objective = 0.0;
  std::vector<TracePoint> trace;
};

RestartOutcome run_restart(const SearchConfig& cfg, int restart, std::span<const double> mesh,
                           std::span<const double> targets, const SolverOptions& opts) {
  const double q_bound = cfg.bound;
  std::vector<double> x(static_cast<std::size_t>(cfg.pieces));
  if (restart == 0) {
    std::ranges::fill(x, std::clamp(targets[0] - kPi * kPi, -q_bound, q_bound));
  } else {
    std::seed_seq seq{cfg.seed, static_cast<std::uint64_t>(restart)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> dist(-q_bound, q_bound);
    for (auto& xi : x) xi = dist(rng);
  }
  auto eval = [&](const std::vector<double>& vals) {
    return objective_for(PiecewiseConstant(std::vector<double>(mesh.begin(), mesh.end()), vals),
                         targets, opts);
  };

  RestartOutcome out;
  double j = eval(x);
  out.trace.push_back({restart, 0, j});
  double step = cfg.initial_step > 0.0 ? cfg.initial_step : q_bound / 4.0;
  for (int it = 1; it <= cfg.max_iters && step >= 1e-6 * q_bound; ++it) {
    bool improved = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double dir : {1.0, -1.0}) {
        const double trial = std::clamp(x[i] + dir * step, -q_bound, q_bound);
        if (trial == x[i]) continue;
        auto cand = x;
        cand[i] = trial;
        const double jc = eval(cand);
        if (jc < j) {
          x = std::move(cand);
          j = jc;
          improved = true;
          break;
        }
      }
    }
    out.trace.push_back({restart, it, j});
    if (!improved) step *= 0.5;
  }
  out.q = std::move(x);
  out.objective = j;
  return out;
}

}  // namespace

void SearchConfig::validate() const {
  if (pieces < 1) throw Error(ErrorKind::BadConfig, "pieces must be >= 1");
  if (!(bound > 0.0) || !std::isfinite(bound)) throw Error(ErrorKind::BadConfig, "bound must be > 0");
  if (targets < 1) throw Error(ErrorKind::BadConfig, "targets must be >= 1");
  if (restarts < 1) throw Error(ErrorKind::BadConfig, "restarts must be >= 1");
  if (max_iters < 0) throw Error(ErrorKind::BadConfig, "max_iters must be >= 0");
  if (!(initial_step >= 0.0) || !std::isfinite(initial_step)) {
    throw Error(ErrorKind::BadConfig, "initial_step must be >= 0");
  }
}

double target_mu(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "target index must be >= 1");
  const double p = static_cast<double>(nth_prime(static_cast<std::size_t>(n)));
  const double t = kPi * p / std::log(p);
  return t * t;
}

std::vector<double> target_mus(int count) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "need at least one target");
  const auto primes = first_primes(static_cast<std::size_t>(count));
  std::vector<double> out;
  out.reserve(primes.size());
  for (double p : primes) {
    const double t = kPi * p / std::log(p);
    out.push_back(t * t);
  }
  return out;
}

double objective(const PiecewiseConstant& q, int n_targets, const SolverOptions& opts) {
  if (n_targets < 1) throw Error(ErrorKind::InvalidArgument, "objective needs N >= 1");
  const auto targets = target_mus(n_targets);
  return objective_for(q, targets, opts);
}

SearchResult search(const SearchConfig& config, const SolverOptions& opts) {
  config.validate();
  const auto mesh = uniform_mesh(config.pieces);
  const auto targets = target_mus(config.targets);
  const auto primes = first_primes(static_cast<std::size_t>(config.targets));

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
  parallel_for(outcomes.size(), [&](std::size_t r) {
    outcomes[r] = run_restart(config, static_cast<int>(r), mesh, targets, opts);
  });

  const std::vector<double> zeros(static_cast<std::size_t>(config.pieces), 0.0);
  const double baseline = objective_for(PiecewiseConstant(mesh, zeros), targets, opts);

  SearchResult res{PiecewiseConstant(mesh, zeros), baseline, baseline, -1, {}, {}};
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    auto& o = outcomes[r];
    if (o.objective < res.best_objective) {
      res.best_objective = o.objective;
      res.best_q = PiecewiseConstant(mesh, o.q);
      res.best_restart = static_cast<int>(r);
    }
    res.trace.insert(res.trace.end(), o.trace.begin(), o.trace.end());
  }

  const NonlinearProblem best(res.best_q);
  for (int n = 1; n <= config.targets; ++n) {
    TargetRow row;
    row.n = n;
    row.target_mu = targets[static_cast<std::size_t>(n) - 1];
    row.achieved_mu = eigenvalue(best.base(), n, opts).value;
    if (row.achieved_mu >= lambda_map_minimum()) row.implied_lambda = invert_map(row.achieved_mu);
    row.prime = primes[static_cast<std::size_t>(n) - 1];
    res.per_target.push_back(row);
  }
  return res;
}

void write_per_target_csv(std::ostream& os, std::span<const TargetRow> rows) {
  csv::row(os, {"n", "target_mu", "achieved_mu", "implied_lambda", "p_n", "below_branch"});
  for (const auto& r : rows) {
    csv::row(os, {csv::num(static_cast<long long>(r.n)), csv::num(r.target_mu), csv::num(r.achieved_mu),
                  r.implied_lambda ? csv::num(*r.implied_lambda) : "",
                  csv::num(static_cast<long long>(r.prime)), r.implied_lambda ? "0" : "1"});
  }
}

}  // namespace slprime
