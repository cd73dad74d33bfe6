#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coderiv/coderivative.hpp"
#include "coderiv/error.hpp"
#include "coderiv/oracle.hpp"

namespace coderiv::report {

using nlohmann::json;

inline constexpr const char* kToolVersion = "0.3.0";

enum class Format { Json, Text };
Format parse_format(std::string_view text);

enum class Method { Formula, Oracle, Both };
Method parse_method(std::string_view text);

/// Process exit code for a library error: 2 input, 3 infeasible,
/// 4 unbounded, 5 qualification / efficiency, 6 domination, 1 otherwise.
int exit_code(ErrorCode code);

json vec_json(const Vec& v);
json dvec_json(const DVec& v);
/// Canonical H-representation plus generators.
json poly_json(const HPolyhedron& poly);
json qualification_json(const QualReport& q);
json domination_json(const DominationCertificate& cert, std::size_t max_violations = 20);

struct FrontierQuery {
  std::optional<Vec> p;
  std::size_t weights = 21;
};
json frontier_report(const ParametricProblem& problem, const FrontierQuery& query);

struct CoderivQuery {
  std::optional<Vec> p;
  std::optional<Vec> x;
  std::vector<Vec> ystars;
  Variant variant = Variant::Min;
  Method method = Method::Formula;
  bool assume_domination = false;
  DominationOptions domination;
  EpiOptions epi;
  double eps = 1e-3;
};
json coderivative_report(const ParametricProblem& problem, const CoderivQuery& query);

json domination_report(const ParametricProblem& problem, const std::optional<Vec>& pbar, Variant variant,
                       const DominationOptions& options);

json validate_report(const ParametricProblem& problem);

struct OracleQuery {
  std::optional<Vec> p;
  std::optional<Vec> x;
  Vec ystar;
  /// Candidate (p*, −y*) vectors; formula extreme points when absent.
  std::vector<DVec> candidates;
  EpiOptions epi;
  double eps = 1e-3;
  bool product_norm = false;
};
json oracle_report(const ParametricProblem& problem, const OracleQuery& query);

/// Verdicts of the Fréchet test on the points, rays and lines of a formula set.
json oracle_verdicts(const EpiCloud& cloud, const CoderivSet& set, double eps, bool product_norm = false);

/// Header fields shared by every report.
json header(const std::string& command, const ParametricProblem& problem);

/// JSON text, or an indented "key: value" rendering.
std::string render(const json& report, Format format);

}  // namespace coderiv::report
