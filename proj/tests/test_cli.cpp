#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "slprime/cli.hpp"
#include "slprime/problem_io.hpp"

using namespace slprime;
using nlohmann::json;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

const char* kUnit = R"({
  "interval": {"a": 0, "b": 1},
  "coefficients": {
    "s": {"breakpoints": [0, 1], "values": [1]},
    "q": {"breakpoints": [0, 1], "values": [0]},
    "r": {"breakpoints": [0, 1], "values": [1]}
  },
  "bc": {"alpha": 0, "beta": "pi"}
})";

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("slprime_cli_" + std::to_string(std::hash<std::string>{}(
                                                            std::to_string(reinterpret_cast<std::uintptr_t>(this)))));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string last_line(const std::string& text) {
  const auto ls = lines(text);
  return ls.empty() ? "" : ls.back();
}

}  // namespace

TEST_CASE("spectrum writes a CSV file") {
  Workspace ws;
  const auto cfg = ws.write("unit.json", kUnit);
  const auto r = invoke({"spectrum", "--config", cfg, "--n-max", "5", "--out", ws.path("s.csv")});
  REQUIRE(r.code == kExitOk);
  const auto ls = lines(slurp(ws.path("s.csv")));
  REQUIRE(ls.size() == 7);
  CHECK(ls[0].starts_with("# slprime 0.1.0 command=spectrum config-hash="));
  CHECK(ls[1] == "n,lambda,oscillation,residual");
  for (int n = 1; n <= 5; ++n) {
    std::istringstream row(ls[n + 1]);
    std::string idx, value;
    std::getline(row, idx, ',');
    std::getline(row, value, ',');
    CHECK(std::stoi(idx) == n);
    CHECK(std::stod(value) == doctest::Approx(n * n * pi * pi).epsilon(1e-10));
  }
}

TEST_CASE("config hash is stable and tracks options") {
  Workspace ws;
  const auto cfg = ws.write("unit.json", kUnit);
  const auto a = invoke({"spectrum", "--config", cfg, "--n-max", "3"});
  const auto b = invoke({"spectrum", "--config", cfg, "--n-max", "3"});
  const auto c = invoke({"spectrum", "--config", cfg, "--n-max", "4"});
  CHECK(lines(a.out)[0] == lines(b.out)[0]);
  CHECK(lines(a.out)[0] != lines(c.out)[0]);
}

TEST_CASE("finite spectrum is truncated with exit 0") {
  Workspace ws;
  const auto cfg = ws.write("atk.json", R"({
    "interval": {"a": 0, "b": 2},
    "coefficients": {
      "s": {"breakpoints": [0, 1, 2], "values": [1, 0]},
      "q": {"breakpoints": [0, 2], "values": [0]},
      "r": {"breakpoints": [0, 1, 2], "values": [0, 1]}
    },
    "bc": {"alpha": 0, "beta": "pi/2"}
  })");
  const auto r = invoke({"spectrum", "--config", cfg, "--n-max", "4"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("TRUNCATED at n=2") != std::string::npos);
}

TEST_CASE("incompat verdicts") {
  Workspace ws;
  const auto cfg = ws.write("unit.json", kUnit);
  const auto pass = invoke({"incompat", "--config", cfg, "--n-max", "10000"});
  CHECK(pass.code == kExitOk);
  CHECK(last_line(pass.out) == "VERDICT: PASS incompat");
  const auto fail = invoke({"incompat", "--config", cfg, "--n-max", "300"});
  CHECK(fail.code == kExitVerdictFail);
  CHECK(last_line(fail.out) == "VERDICT: FAIL incompat");
  const auto small = invoke({"incompat", "--config", cfg, "--n-max", "20"});
  CHECK(small.code == kExitOk);
  CHECK(last_line(small.out) == "VERDICT: INCONCLUSIVE incompat");
}

TEST_CASE("validation errors exit 2 and name the field") {
  Workspace ws;
  json broken = json::parse(kUnit);
  broken["bc"]["alpha"] = 3.5;
  const auto cfg = ws.write("broken.json", broken.dump());
  const auto r = invoke({"spectrum", "--config", cfg});
  CHECK(r.code == kExitInvalid);
  CHECK(r.err.find("bc.alpha must lie in [0, π)") != std::string::npos);

  json extra = json::parse(kUnit);
  extra["coefficients"]["p"] = 1;
  const auto r2 = invoke({"spectrum", "--config", ws.write("extra.json", extra.dump())});
  CHECK(r2.code == kExitInvalid);
  CHECK(r2.err.find("coefficients.p") != std::string::npos);

  json mismatch = json::parse(kUnit);
  mismatch["coefficients"]["q"]["values"] = json::array({1, 2});
  const auto r3 = invoke({"spectrum", "--config", ws.write("mismatch.json", mismatch.dump())});
  CHECK(r3.code == kExitInvalid);
  CHECK(r3.err.find("coefficients.q") != std::string::npos);

  const auto r4 = invoke({"spectrum", "--config", ws.write("garbage.json", "{not json")});
  CHECK(r4.code == kExitInvalid);
  CHECK(r4.err.find("BadConfig") != std::string::npos);

  CHECK(invoke({"spectrum", "--config", ws.path("missing.json")}).code == kExitInvalid);
  CHECK(invoke({"spectrum"}).code == kExitInvalid);
  CHECK(invoke({"spectrum", "--config", ws.write("u.json", kUnit), "--out", ws.path("no/such/dir/x.csv")}).code ==
        kExitInvalid);
}

TEST_CASE("unknown and missing commands") {
  const auto r = invoke({"frobnicate"});
  CHECK(r.code == kExitInvalid);
  CHECK(r.err.find("UnknownCommand") != std::string::npos);
  CHECK(invoke({}).code == kExitInvalid);
  CHECK(invoke({"--help"}).code == kExitOk);
  CHECK(invoke({"primes", "--bogus"}).code == kExitInvalid);
}

TEST_CASE("problem document round trip") {
  const json doc = json::parse(R"({
    "interval": {"a": -1, "b": 2},
    "coefficients": {
      "s": {"breakpoints": [-1, 0.5, 2], "values": [1, 0]},
      "q": {"breakpoints": [-1, 0, 2], "values": [3.25, -7]},
      "r": {"breakpoints": [-1, 2], "values": [2]}
    },
    "bc": {"alpha": "pi/2", "beta": 1.25},
    "solver": {"angle_tol": 1e-9, "lambda_tol_rel": 1e-11, "lambda_cap": 1e10}
  })");
  const auto parsed = parse_problem(doc);
  const json once = to_json(parsed);
  const auto reparsed = parse_problem(once);
  CHECK(to_json(reparsed) == once);
  CHECK(reparsed.problem.bc.alpha() == pi / 2);
  CHECK(reparsed.problem.bc.beta() == 1.25);
  CHECK(reparsed.solver.angle_tol == 1e-9);
  CHECK(reparsed.solver.lambda_cap == 1e10);
  CHECK(reparsed.problem.coeffs.q() == parsed.problem.coeffs.q());
  CHECK(once["bc"]["alpha"] == "pi/2");
}

TEST_CASE("exit codes per subcommand") {
  Workspace ws;
  const auto cfg = ws.write("unit.json", kUnit);

  SUBCASE("nonlinear") {
    const auto r = invoke({"nonlinear", "--n-max", "5", "--out", ws.path("nl.csv")});
    CHECK(r.code == kExitOk);
    const auto ls = lines(slurp(ws.path("nl.csv")));
    CHECK(ls[0].starts_with("# slprime 0.1.0 command=nonlinear"));
    CHECK(ls[1] == "n,mu,lambda,p_n,lambda_minus_p_n");
    CHECK(ls.size() == 7);
    const auto q = ws.write("q.json", R"({"q": {"breakpoints": [0, 1], "values": [5]}})");
    CHECK(invoke({"nonlinear", "--config", q, "--n-max", "3"}).code == kExitOk);
    const auto bad = ws.write("qbad.json", R"({"q": {"breakpoints": [0, 2], "values": [5]}})");
    CHECK(invoke({"nonlinear", "--config", bad}).code == kExitInvalid);
  }
  SUBCASE("primes") {
    const auto r = invoke({"primes", "--n-max", "100000"});
    CHECK(r.code == kExitOk);
    CHECK(last_line(r.out) == "VERDICT: PASS primes");
    CHECK(r.out.find("\n1000,7919,") != std::string::npos);
    CHECK(last_line(invoke({"primes", "--n-max", "500"}).out) == "VERDICT: INCONCLUSIVE primes");
  }
  SUBCASE("growth") {
    const auto r = invoke({"growth", "--config", cfg, "--lambda-re", "0", "--lambda-im", "10000"});
    CHECK(r.code == kExitOk);
    CHECK(last_line(r.out) == "VERDICT: PASS growth");
    CHECK(invoke({"growth", "--config", cfg, "--lambda-re", "0.1"}).code == kExitInvalid);
  }
  SUBCASE("order") {
    const auto r = invoke({"order", "--config", cfg});
    CHECK(r.code == kExitOk);
    CHECK(last_line(r.out) == "VERDICT: PASS order");
    const auto short_span = invoke({"order", "--config", cfg, "--radii", "1000", "10000"});
    CHECK(short_span.code == kExitOk);
    CHECK(last_line(short_span.out) == "VERDICT: INCONCLUSIVE order");
    CHECK(invoke({"order", "--config", cfg, "--angular", "4"}).code == kExitInvalid);
  }
  SUBCASE("series") {
    const auto r = invoke({"series", "--n-max", "100000"});
    CHECK(r.code == kExitOk);
    CHECK(last_line(r.out) == "VERDICT: PASS series");
    const auto bad = invoke({"series", "--epsilon", "0.6"});
    CHECK(bad.code == kExitInvalid);
    CHECK(bad.err.find("EpsilonOutOfRange") != std::string::npos);
  }
  SUBCASE("invert") {
    const auto sc = ws.write("search.json", R"({"pieces": 2, "targets": 2, "restarts": 2, "max_iters": 20})");
    const auto r = invoke({"invert", "--config", sc, "--seed", "3", "--out", ws.path("res.json"), "--csv",
                           ws.path("targets.csv")});
    CHECK(r.code == kExitOk);
    const auto res = json::parse(slurp(ws.path("res.json")));
    CHECK(res["config"]["seed"] == 3);
    CHECK(res["best_objective"].get<double>() <= res["baseline_objective"].get<double>());
    const auto ls = lines(slurp(ws.path("targets.csv")));
    CHECK(ls[0].starts_with("# slprime 0.1.0 command=invert"));
    CHECK(ls.size() == 4);
    CHECK(invoke({"invert", "--config", ws.write("bad.json", R"({"pieces": 0})")}).code == kExitInvalid);
    CHECK(invoke({"invert", "--config", ws.write("bad2.json", R"({"colour": 1})")}).code == kExitInvalid);
  }
}
