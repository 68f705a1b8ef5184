#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "slprime/coeff.hpp"
#include "slprime/inverse.hpp"
#include "slprime/nonlinear.hpp"
#include "slprime/spectrum.hpp"

namespace slprime {

/// A problem as described on disk: interval, coefficients, boundary angles and solver settings.
struct ProblemDocument {
  SLProblem problem;
  SolverOptions solver;
};

/// Validates a problem document; unknown fields and every coefficient invariant are
/// reported as BadConfig naming the offending field.
ProblemDocument parse_problem(const nlohmann::json& doc);
nlohmann::json to_json(const ProblemDocument& doc);

/// Reads and parses a JSON file (IoFailure when unreadable, BadConfig when malformed).
nlohmann::json read_json_file(const std::filesystem::path& path);
ProblemDocument load_problem(const std::filesystem::path& path);

/// {"breakpoints": [...], "values": [...]}
PiecewiseConstant parse_piecewise(const nlohmann::json& j, const std::string& field);
nlohmann::json to_json(const PiecewiseConstant& f);

/// Angle in radians, or one of the literals "pi", "pi/2", "0".
double parse_angle(const nlohmann::json& j, const std::string& field);
nlohmann::json angle_to_json(double x);

/// {"q": {...}} on [0, 1]; an empty document means q = 0.
NonlinearProblem parse_nonlinear(const nlohmann::json& doc);

SearchConfig parse_search_config(const nlohmann::json& doc);
nlohmann::json to_json(const SearchConfig& cfg);
nlohmann::json to_json(const SearchResult& result);

}  // namespace slprime
