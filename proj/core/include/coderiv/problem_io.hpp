#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "coderiv/problem.hpp"

namespace coderiv {

/// Throws SchemaError (with a field path) or DimensionMismatch.
ParametricProblem parse_problem(const nlohmann::json& doc);
ParametricProblem parse_problem_text(std::string_view text);
/// A file path, or the name of a shipped example when no such file exists.
ParametricProblem load_problem(const std::string& path_or_name);

/// Canonical document: dense row-major matrices, rationals as strings.
nlohmann::json serialize_problem(const ParametricProblem& problem);
/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string problem_digest(const ParametricProblem& problem);

std::vector<std::string> example_names();
/// Throws UnknownBuiltin.
ParametricProblem builtin_example(std::string_view name);

}  // namespace coderiv
