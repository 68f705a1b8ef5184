#include "slprime/problem_io.hpp"

#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include "slprime/error.hpp"

namespace slprime {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::BadConfig, msg); }

void expect_object(const json& j, const std::string& field, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) bad(field.empty() ? "document must be a JSON object" : field + " must be an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) bad("unknown field " + (field.empty() ? key : field + "." + key));
  }
}

const json& require(const json& j, const char* key, const std::string& field) {
  if (!j.contains(key)) bad("missing field " + (field.empty() ? std::string(key) : field + "." + key));
  return j.at(key);
}

std::string join(const std::string& field, const char* key) {
  return field.empty() ? std::string(key) : field + "." + key;
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) bad(field + " must be a number");
  return j.get<double>();
}

long long integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) bad(field + " must be an integer");
  return j.get<long long>();
}

std::vector<double> numbers(const json& j, const std::string& field) {
  if (!j.is_array()) bad(field + " must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

template <typename Fn>
auto with_field(const std::string& field, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BadConfig) throw;
    bad(field + ": " + e.what());
  }
}

}  // namespace

PiecewiseConstant parse_piecewise(const json& j, const std::string& field) {
  expect_object(j, field, {"breakpoints", "values"});
  auto bp = numbers(require(j, "breakpoints", field), join(field, "breakpoints"));
  auto vals = numbers(require(j, "values", field), join(field, "values"));
  return with_field(field, [&] { return make_piecewise(std::move(bp), std::move(vals)); });
}

json to_json(const PiecewiseConstant& f) {
  return {{"breakpoints", std::vector<double>(f.breakpoints().begin(), f.breakpoints().end())},
          {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

double parse_angle(const json& j, const std::string& field) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "pi") return std::numbers::pi;
    if (s == "pi/2") return std::numbers::pi / 2;
    if (s == "0") return 0.0;
    bad(field + " must be a number or one of \"pi\", \"pi/2\", \"0\"");
  }
  return number(j, field);
}

json angle_to_json(double x) {
  if (x == std::numbers::pi) return "pi";
  if (x == std::numbers::pi / 2) return "pi/2";
  return x;
}

ProblemDocument parse_problem(const json& doc) {
  expect_object(doc, "", {"interval", "coefficients", "bc", "solver"});

  const auto& iv = require(doc, "interval", "");
  expect_object(iv, "interval", {"a", "b"});
  const double a = number(require(iv, "a", "interval"), "interval.a");
  const double b = number(require(iv, "b", "interval"), "interval.b");
  const Interval interval = with_field("interval", [&] { return Interval(a, b); });

  const auto& co = require(doc, "coefficients", "");
  expect_object(co, "coefficients", {"s", "q", "r"});
  auto s = parse_piecewise(require(co, "s", "coefficients"), "coefficients.s");
  auto q = parse_piecewise(require(co, "q", "coefficients"), "coefficients.q");
  auto r = parse_piecewise(require(co, "r", "coefficients"), "coefficients.r");
  for (const auto& [name, f] : {std::pair{"coefficients.s", &s}, {"coefficients.q", &q}, {"coefficients.r", &r}}) {
    if (f->a() != a || f->b() != b) bad(std::string(name) + " must span the interval [a, b] exactly");
  }
  auto coeffs = with_field("coefficients", [&] { return refine_common_mesh(s, q, r); });

  const auto& bcj = require(doc, "bc", "");
  expect_object(bcj, "bc", {"alpha", "beta"});
  const double alpha = parse_angle(require(bcj, "alpha", "bc"), "bc.alpha");
  const double beta = parse_angle(require(bcj, "beta", "bc"), "bc.beta");
  const auto bc = with_field("bc", [&] { return BoundaryCondition(alpha, beta); });

  SolverOptions solver;
  if (doc.contains("solver")) {
    const auto& sj = doc.at("solver");
    expect_object(sj, "solver", {"angle_tol", "lambda_tol_rel", "lambda_tol_abs", "lambda_cap"});
    auto positive = [&](const char* key, double& dst) {
      if (!sj.contains(key)) return;
      dst = number(sj.at(key), join("solver", key));
      if (!(dst > 0.0)) bad(join("solver", key) + " must be positive");
    };
    positive("angle_tol", solver.angle_tol);
    positive("lambda_tol_rel", solver.lambda_tol_rel);
    positive("lambda_tol_abs", solver.lambda_tol_abs);
    positive("lambda_cap", solver.lambda_cap);
  }
  return {SLProblem(interval, std::move(coeffs), bc), solver};
}

json to_json(const ProblemDocument& doc) {
  const auto& p = doc.problem;
  return {
      {"interval", {{"a", p.interval.a()}, {"b", p.interval.b()}}},
      {"coefficients", {{"s", to_json(p.coeffs.s())}, {"q", to_json(p.coeffs.q())}, {"r", to_json(p.coeffs.r())}}},
      {"bc", {{"alpha", angle_to_json(p.bc.alpha())}, {"beta", angle_to_json(p.bc.beta())}}},
      {"solver",
       {{"angle_tol", doc.solver.angle_tol},
        {"lambda_tol_rel", doc.solver.lambda_tol_rel},
        {"lambda_tol_abs", doc.solver.lambda_tol_abs},
        {"lambda_cap", doc.solver.lambda_cap}}},
  };
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

ProblemDocument load_problem(const std::filesystem::path& path) { return parse_problem(read_json_file(path)); }

NonlinearProblem parse_nonlinear(const json& doc) {
  expect_object(doc, "", {"q"});
  if (!doc.contains("q")) return NonlinearProblem::free();
  auto q = parse_piecewise(doc.at("q"), "q");
  return with_field("q", [&] { return NonlinearProblem(std::move(q)); });
}

SearchConfig parse_search_config(const json& doc) {
  expect_object(doc, "", {"pieces", "bound", "targets", "seed", "restarts", "max_iters", "initial_step"});
  SearchConfig cfg;
  if (doc.contains("pieces")) cfg.pieces = static_cast<int>(integer(doc["pieces"], "pieces"));
  if (doc.contains("bound")) cfg.bound = number(doc["bound"], "bound");
  if (doc.contains("targets")) cfg.targets = static_cast<int>(integer(doc["targets"], "targets"));
  if (doc.contains("seed")) {
    const auto seed = integer(doc["seed"], "seed");
    if (seed < 0) bad("seed must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(seed);
  }
  if (doc.contains("restarts")) cfg.restarts = static_cast<int>(integer(doc["restarts"], "restarts"));
  if (doc.contains("max_iters")) cfg.max_iters = static_cast<int>(integer(doc["max_iters"], "max_iters"));
  if (doc.contains("initial_step")) cfg.initial_step = number(doc["initial_step"], "initial_step");
  cfg.validate();
  return cfg;
}

json to_json(const SearchConfig& cfg) {
  return {{"pieces", cfg.pieces},     {"bound", cfg.bound},         {"targets", cfg.targets},
          {"seed", cfg.seed},         {"restarts", cfg.restarts},   {"max_iters", cfg.max_iters},
          {"initial_step", cfg.initial_step}};
}

json to_json(const SearchResult& result) {
  json trace = json::array();
  for (const auto& t : result.trace) {
    trace.push_back({{"restart", t.restart}, {"iteration", t.iteration}, {"objective", t.objective}});
  }
  json rows = json::array();
  for (const auto& r : result.per_target) {
    rows.push_back({{"n", r.n},
                    {"target_mu", r.target_mu},
                    {"achieved_mu", r.achieved_mu},
                    {"implied_lambda", r.implied_lambda ? json(*r.implied_lambda) : json(nullptr)},
                    {"p_n", r.prime}});
  }
  return {{"best_q", to_json(result.best_q)},
          {"best_objective", result.best_objective},
          {"baseline_objective", result.baseline_objective},
          {"best_restart", result.best_restart},
          {"trace", std::move(trace)},
          {"per_target", std::move(rows)}};
}

}  // namespace slprime
