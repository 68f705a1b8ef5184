#include "slprime/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "slprime/analysis.hpp"
#include "slprime/csv.hpp"
#include "slprime/error.hpp"
#include "slprime/inverse.hpp"
#include "slprime/nonlinear.hpp"
#include "slprime/primes.hpp"
#include "slprime/problem_io.hpp"
#include "slprime/spectrum.hpp"

namespace slprime {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;
// Minimum growth of the prime power sum per decade of N for the series verdict.
constexpr double kPrimeDecadeGrowth = 1.25;

struct Options {
  std::string config;
  std::string out;
  std::string csv_out;
  int n_max = -1;
  double epsilon = 0.25;
  std::optional<std::uint64_t> seed;
  double lambda_re = 100.0;
  double lambda_im = 0.0;
  int samples = 32;
  std::vector<double> radii{1e2, 1e3, 1e4, 1e5, 1e6};
  int angular = 16;
  double growth_constant = kPi * kPi;
};

class Session {
 public:
  Session(std::string command, const Options& opts, std::ostream& out)
      : command_(std::move(command)), opts_(opts), out_(out) {}

  int n_max(int fallback) const { return opts_.n_max > 0 ? opts_.n_max : fallback; }

  json config_json() const { return opts_.config.empty() ? json::object() : read_json_file(opts_.config); }

  /// Hash over the command, the canonical config document and every resolved option.
  void set_config(const json& canonical, const json& resolved) {
    hash_ = csv::fnv1a_hex(json{{"command", command_}, {"config", canonical}, {"options", resolved}}.dump());
  }

  std::string comment() const {
    return std::string("# slprime ") + kVersion + " command=" + command_ + " config-hash=" + hash_ + "\n";
  }

  void emit(const std::string& body, const std::string& path) const {
    if (path.empty()) {
      out_ << body;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::IoFailure, "cannot write " + path);
    f << body;
    if (!f) throw Error(ErrorKind::IoFailure, "write failed for " + path);
  }

  int finish(Verdict v) const {
    out_ << verdict_line(v, command_) << '\n';
    return v == Verdict::fail ? kExitVerdictFail : kExitOk;
  }

  std::ostream& out() const { return out_; }
  const Options& opts() const { return opts_; }

 private:
  std::string command_;
  const Options& opts_;
  std::ostream& out_;
  std::string hash_ = "0000000000000000";
};

ProblemDocument require_problem(const Session& s) {
  if (s.opts().config.empty()) throw Error(ErrorKind::BadConfig, "--config is required");
  return parse_problem(s.config_json());
}

int cmd_spectrum(Session& s) {
  const auto doc = require_problem(s);
  const int n = s.n_max(10);
  s.set_config(to_json(doc), {{"n_max", n}});
  const auto spec = compute_spectrum(doc.problem, n, doc.solver);
  std::ostringstream body;
  body << s.comment();
  write_csv(body, spec);
  s.emit(body.str(), s.opts().out);
  s.out() << "computed " << spec.size() << " eigenvalue(s), problem " << spec.problem_hash << '\n';
  if (spec.truncated_at) {
    s.out() << "TRUNCATED at n=" << *spec.truncated_at << ": " << spec.truncation_reason << '\n';
  }
  return kExitOk;
}

int cmd_nonlinear(Session& s) {
  const json cfg = s.config_json();
  const auto problem = parse_nonlinear(cfg);
  const int n = s.n_max(20);
  s.set_config(json{{"q", to_json(problem.q())}}, {{"n_max", n}});
  const auto rows = nonlinear_spectrum(problem, n);
  const auto primes = first_primes(static_cast<std::size_t>(n));
  std::ostringstream body;
  body << s.comment();
  write_nonlinear_csv(body, rows, primes);
  s.emit(body.str(), s.opts().out);
  if (static_cast<int>(rows.size()) < n) s.out() << "TRUNCATED at n=" << rows.size() + 1 << '\n';
  return kExitOk;
}

int cmd_primes(Session& s) {
  const int n = s.n_max(1'000'000);
  s.set_config(json::object(), {{"n_max", n}});
  const auto primes = first_primes(static_cast<std::size_t>(n));
  std::vector<std::uint64_t> grid;
  for (std::uint64_t d = 1; d <= static_cast<std::uint64_t>(n); d *= 10) {
    for (std::uint64_t m = 1; m <= 9 && m * d <= static_cast<std::uint64_t>(n); ++m) grid.push_back(m * d);
  }
  if (grid.back() != static_cast<std::uint64_t>(n)) grid.push_back(static_cast<std::uint64_t>(n));

  std::ostringstream body;
  body << s.comment();
  write_prime_csv(body, primes, grid);
  s.emit(body.str(), s.opts().out);

  std::vector<std::uint64_t> decades;
  for (std::uint64_t d = 1000; d <= static_cast<std::uint64_t>(n); d *= 10) decades.push_back(d);
  if (decades.size() < 2) return s.finish(Verdict::inconclusive);
  bool ok = true;
  double prev = INFINITY;
  for (auto d : decades) {
    const double p = primes[d - 1];
    const double ratio = p / pnt_asymptotic(d);
    ok = ok && ratio > 1.0 && ratio < prev;
    prev = ratio;
  }
  for (auto m : grid) {
    if (m < 1000) continue;
    const double p = primes[m - 1];
    const double ec = std::abs(cesaro(m) - p) / p;
    const double ep = std::abs(pnt_asymptotic(m) - p) / p;
    ok = ok && ec <= 0.05 && ec < ep;
  }
  return s.finish(ok ? Verdict::pass : Verdict::fail);
}

int cmd_incompat(Session& s) {
  const auto doc = require_problem(s);
  const int n = s.n_max(1000);
  s.set_config(to_json(doc), {{"n_max", n}});
  const auto spec = compute_spectrum(doc.problem, n, doc.solver);
  if (spec.truncated_at) {
    s.out() << "TRUNCATED at n=" << *spec.truncated_at << ": " << spec.truncation_reason << '\n';
  }
  const auto rep = incompatibility_report(spec, n);
  std::ostringstream body;
  body << s.comment();
  write_csv(body, rep);
  s.emit(body.str(), s.opts().out);
  s.out() << rep.note << '\n';
  return s.finish(rep.verdict);
}

int cmd_growth(Session& s) {
  const auto doc = require_problem(s);
  const cplx lambda{s.opts().lambda_re, s.opts().lambda_im};
  s.set_config(to_json(doc), {{"lambda_re", lambda.real()}, {"lambda_im", lambda.imag()}, {"samples", s.opts().samples}});
  const auto rep = growth_check(doc.problem, lambda, s.opts().samples);
  std::ostringstream body;
  body << s.comment();
  write_csv(body, rep);
  s.emit(body.str(), s.opts().out);
  s.out() << "min_slack=" << csv::num(rep.min_slack) << " min_relative_slack=" << csv::num(rep.min_relative_slack)
          << '\n';
  return s.finish(rep.holds(1e-3) ? Verdict::pass : Verdict::fail);
}

int cmd_order(Session& s) {
  const auto doc = require_problem(s);
  s.set_config(to_json(doc), {{"radii", s.opts().radii}, {"angular", s.opts().angular}});
  OrderEstimate est;
  try {
    est = order_estimate(doc.problem, s.opts().radii, s.opts().angular);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateModulus) throw;
    s.out() << e.what() << '\n';
    return s.finish(Verdict::inconclusive);
  }
  std::ostringstream body;
  body << s.comment();
  write_csv(body, est);
  s.emit(body.str(), s.opts().out);
  s.out() << "slope=" << csv::num(est.slope) << (est.low_confidence ? " (low confidence)" : "") << '\n';
  if (est.low_confidence) return s.finish(Verdict::inconclusive);
  return s.finish(est.slope >= 0.4 && est.slope <= 0.6 ? Verdict::pass : Verdict::fail);
}

int cmd_series(Session& s) {
  const int n = s.n_max(1'000'000);
  const double eps = s.opts().epsilon;
  const double c = s.opts().growth_constant;
  s.set_config(json::object(), {{"n_max", n}, {"epsilon", eps}, {"growth_constant", c}});
  const auto primes = partial_sum_primes(eps, static_cast<std::uint64_t>(n));
  const auto model = partial_sum_spectrum(c, eps, static_cast<std::uint64_t>(n));
  std::ostringstream body;
  body << s.comment();
  write_series_csv(body, primes, model);
  s.emit(body.str(), s.opts().out);

  std::vector<double> decade_sums;
  for (const auto& cp : primes) {
    if (cp.n >= 1000 && std::abs(std::log10(double(cp.n)) - std::round(std::log10(double(cp.n)))) < 1e-12) {
      decade_sums.push_back(cp.partial_sum);
    }
  }
  if (decade_sums.size() < 2) return s.finish(Verdict::inconclusive);
  bool diverging = true;
  for (std::size_t i = 1; i < decade_sums.size(); ++i) {
    diverging = diverging && decade_sums[i] / decade_sums[i - 1] >= kPrimeDecadeGrowth;
  }
  bool converging = true;
  for (std::size_t i = 0; i < model.size(); ++i) {
    converging = converging && model.back().partial_sum - model[i].partial_sum <= model[i].tail_bound;
    if (i >= 2) {
      converging = converging && model[i].partial_sum - model[i - 1].partial_sum <
                                     model[i - 1].partial_sum - model[i - 2].partial_sum;
    }
  }
  s.out() << "primes " << (diverging ? "diverging" : "not diverging") << ", model spectrum "
          << (converging ? "within tail bound" : "violates tail bound") << '\n';
  return s.finish(diverging && converging ? Verdict::pass : Verdict::fail);
}

int cmd_invert(Session& s) {
  SearchConfig cfg = s.opts().config.empty() ? SearchConfig{} : parse_search_config(s.config_json());
  if (s.opts().seed) cfg.seed = *s.opts().seed;
  s.set_config(to_json(cfg), json::object());
  const auto res = search(cfg);
  json doc = to_json(res);
  doc["version"] = kVersion;
  doc["config"] = to_json(cfg);
  s.emit(doc.dump(2) + "\n", s.opts().out);
  if (!s.opts().csv_out.empty()) {
    std::ostringstream body;
    body << s.comment();
    write_per_target_csv(body, res.per_target);
    s.emit(body.str(), s.opts().csv_out);
  }
  s.out() << "best_objective=" << csv::num(res.best_objective)
          << " baseline_objective=" << csv::num(res.baseline_objective) << '\n';
  return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sturm-Liouville spectra versus the primes"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options opts;

  auto add_common = [&](CLI::App* sub, bool config, bool n_max) {
    if (config) sub->add_option("--config", opts.config, "JSON document")->check(CLI::ExistingFile);
    if (n_max) sub->add_option("--n-max", opts.n_max, "largest index")->check(CLI::PositiveNumber);
    sub->add_option("--out", opts.out, "output path (default: stdout)");
  };
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues 1..n-max of a problem");
  add_common(spectrum, true, true);
  auto* nonlinear = app.add_subcommand("nonlinear", "spectrum of -y'' + q y = (pi l / log l)^2 y");
  add_common(nonlinear, true, true);
  auto* primes = app.add_subcommand("primes", "p_n against n log n and the Cesàro expansion");
  add_common(primes, false, true);
  auto* incompat = app.add_subcommand("incompat", "p_n / lambda_n for a computed spectrum");
  add_common(incompat, true, true);
  auto* growth = app.add_subcommand("growth", "logarithmic-derivative bound along the interval");
  add_common(growth, true, false);
  growth->add_option("--lambda-re", opts.lambda_re, "real part of lambda");
  growth->add_option("--lambda-im", opts.lambda_im, "imaginary part of lambda");
  growth->add_option("--samples", opts.samples, "interior sample count")->check(CLI::PositiveNumber);
  auto* order = app.add_subcommand("order", "order of growth of u(b, lambda)");
  add_common(order, true, false);
  order->add_option("--radii", opts.radii, "increasing radii")->expected(2, -1);
  order->add_option("--angular", opts.angular, "angular samples per radius")->check(CLI::Range(8, 1 << 20));
  auto* series = app.add_subcommand("series", "power sums over primes and a model spectrum");
  add_common(series, false, true);
  series->add_option("--epsilon", opts.epsilon, "exponent offset in (0, 1/2)");
  series->add_option("--c", opts.growth_constant, "model growth constant (lambda_n = c n^2)");
  auto* invert = app.add_subcommand("invert", "search for q whose nonlinear spectrum tracks the primes");
  add_common(invert, true, false);
  invert->add_option("--seed", opts.seed, "override the configured seed");
  invert->add_option("--csv", opts.csv_out, "per-target CSV path");

  std::vector<std::string> argv_store{"slprime"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  if (!args.empty() && !args.front().starts_with("-") && app.get_subcommand_no_throw(args.front()) == nullptr) {
    err << "error: " << to_string(ErrorKind::UnknownCommand) << ": unknown command '" << args.front()
        << "' (expected spectrum | nonlinear | primes | incompat | growth | order | series | invert)\n";
    return kExitInvalid;
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalid;
  }

  const auto* sub = app.get_subcommands().front();
  Session session(sub->get_name(), opts, out);
  try {
    if (sub == spectrum) return cmd_spectrum(session);
    if (sub == nonlinear) return cmd_nonlinear(session);
    if (sub == primes) return cmd_primes(session);
    if (sub == incompat) return cmd_incompat(session);
    if (sub == growth) return cmd_growth(session);
    if (sub == order) return cmd_order(session);
    if (sub == series) return cmd_series(session);
    if (sub == invert) return cmd_invert(session);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace slprime
