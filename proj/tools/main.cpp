#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "coderiv/problem_io.hpp"
#include "coderiv/report.hpp"

using namespace coderiv;
using report::json;

namespace {

Vec parse_vec(const std::string& text) {
  Vec out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_scalar(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<Vec> opt_vec(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_vec(text);
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(text, &used, 16);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::SchemaError, "seed must be hexadecimal, got '" + text + "'");
  }
}

int emit(const json& body, const std::string& out_path, report::Format format) {
  const std::string text = report::render(body, format);
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out_path);
  if (!f) {
    std::cerr << "cannot write " << out_path << "\n";
    return 2;
  }
  f << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coderivatives of parametric convex vector optimization problems"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path, seed_text = "5EED", format_text = "json";
  app.add_option("--out", out_path, "Write the report to a file");
  app.add_option("--seed", seed_text, "Sampling seed (hex)");
  app.add_option("--format", format_text, "json or text");

  std::string problem_arg, p_text, x_text, variant_text = "min", method_text = "formula";
  std::vector<std::string> ystar_texts, vstar_texts;
  std::size_t weights = 21, samples = 32, grid = 15;
  double radius = 0.5, delta = 0.1, eps = 1e-3;
  bool assume_domination = false, strict_tilde = false, product_norm = false;

  auto* frontier = app.add_subcommand("frontier", "Sample the efficient frontier at a parameter");
  frontier->add_option("problem", problem_arg, "Problem file or example name")->required();
  frontier->add_option("--p", p_text, "Parameter, comma separated");
  frontier->add_option("--weights", weights, "Number of scalarization weights");

  auto* coder = app.add_subcommand("coderivative", "Coderivative of the frontier map");
  coder->add_option("problem", problem_arg)->required();
  coder->add_option("--p", p_text);
  coder->add_option("--x", x_text);
  coder->add_option("--ystar", ystar_texts, "Dual direction (repeatable)")->required();
  coder->add_option("--variant", variant_text, "min, weak or proper");
  coder->add_option("--method", method_text, "formula, oracle or both");
  coder->add_flag("--assume-domination", assume_domination);
  coder->add_option("--radius", radius);
  coder->add_option("--samples", samples);
  coder->add_option("--delta", delta);
  coder->add_option("--eps", eps);

  auto* dom = app.add_subcommand("domination", "Empirical domination certificate");
  dom->add_option("problem", problem_arg)->required();
  dom->add_option("--p", p_text);
  dom->add_option("--variant", variant_text);
  dom->add_option("--radius", radius);
  dom->add_option("--samples", samples);
  dom->add_option("--grid", grid);
  dom->add_flag("--strict-tilde", strict_tilde);

  auto* val = app.add_subcommand("validate", "Check the problem hypotheses");
  val->add_option("problem", problem_arg)->required();

  auto* orc = app.add_subcommand("oracle", "Brute-force Fréchet normal test");
  orc->add_option("problem", problem_arg)->required();
  orc->add_option("--p", p_text);
  orc->add_option("--x", x_text);
  orc->add_option("--ystar", ystar_texts)->required();
  orc->add_option("--vstar", vstar_texts, "Candidate (p*, -y*) (repeatable)");
  orc->add_option("--delta", delta);
  orc->add_option("--eps", eps);
  orc->add_flag("--product-norm", product_norm);

  std::string example_name;
  auto* ex = app.add_subcommand("example", "Write a shipped example problem");
  ex->add_option("name", example_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const auto started = std::chrono::steady_clock::now();
    const report::Format format = report::parse_format(format_text);
    const std::uint64_t seed = parse_seed(seed_text);
    json body;
    if (ex->parsed()) {
      return emit(serialize_problem(builtin_example(example_name)), out_path, report::Format::Json);
    }
    const ParametricProblem problem = load_problem(problem_arg);
    if (frontier->parsed()) {
      body = report::frontier_report(problem, {opt_vec(p_text), weights});
    } else if (coder->parsed()) {
      report::CoderivQuery q;
      q.p = opt_vec(p_text);
      q.x = opt_vec(x_text);
      for (const auto& t : ystar_texts) q.ystars.push_back(parse_vec(t));
      q.variant = parse_variant(variant_text);
      q.method = report::parse_method(method_text);
      q.assume_domination = assume_domination;
      q.domination.radius = radius;
      q.domination.param_samples = samples;
      q.domination.seed = seed;
      q.epi.delta = delta;
      q.epi.seed = seed;
      q.eps = eps;
      body = report::coderivative_report(problem, q);
    } else if (dom->parsed()) {
      DominationOptions o;
      o.radius = radius;
      o.param_samples = samples;
      o.grid = grid;
      o.seed = seed;
      o.strict_tilde = strict_tilde;
      body = report::domination_report(problem, opt_vec(p_text), parse_variant(variant_text), o);
    } else if (val->parsed()) {
      body = report::validate_report(problem);
    } else if (orc->parsed()) {
      report::OracleQuery q;
      q.p = opt_vec(p_text);
      q.x = opt_vec(x_text);
      q.ystar = parse_vec(ystar_texts.front());
      for (const auto& t : vstar_texts) q.candidates.push_back(to_doubles(parse_vec(t)));
      q.epi.delta = delta;
      q.epi.seed = seed;
      q.eps = eps;
      q.product_norm = product_norm;
      body = report::oracle_report(problem, q);
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    body["timing_ms"] = ms;
    int rc = emit(body, out_path, format);
    if (rc != 0) return rc;
    if (dom->parsed() && !body["certificate"]["holds_empirically"].get<bool>()) return 6;
    if (val->parsed() && !body["ok"].get<bool>()) return 2;
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return report::exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
