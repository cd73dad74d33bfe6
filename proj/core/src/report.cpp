#include "coderiv/report.hpp"

#include <cmath>
#include <sstream>

#include "coderiv/problem_io.hpp"

namespace coderiv::report {

Format parse_format(std::string_view text) {
  if (text == "json") return Format::Json;
  if (text == "text") return Format::Text;
  throw Error(ErrorCode::SchemaError, "format must be json or text, got '" + std::string(text) + "'");
}

Method parse_method(std::string_view text) {
  if (text == "formula") return Method::Formula;
  if (text == "oracle") return Method::Oracle;
  if (text == "both") return Method::Both;
  throw Error(ErrorCode::SchemaError, "method must be formula, oracle or both");
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::SchemaError:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::UnknownBuiltin:
    case ErrorCode::MissingTildeCone:
    case ErrorCode::ConeNotPointed:
    case ErrorCode::ConeNotSolid:
    case ErrorCode::ConeDegenerate:
    case ErrorCode::UnsupportedConstraintKind:
      return 2;
    case ErrorCode::Infeasible:
    case ErrorCode::InfeasiblePoint:
      return 3;
    case ErrorCode::UnboundedScalarization:
    case ErrorCode::FrontierEmpty:
      return 4;
    case ErrorCode::QualificationFailed:
    case ErrorCode::NotEfficient:
    case ErrorCode::ACQRequired:
    case ErrorCode::BCQRequired:
    case ErrorCode::SubspaceConditionFailed:
      return 5;
    case ErrorCode::DominationNotCertified:
      return 6;
    default:
      return 1;
  }
}

json vec_json(const Vec& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(format_scalar(s));
  return out;
}

json dvec_json(const DVec& v) {
  json out = json::array();
  for (double d : v) {
    if (std::isfinite(d)) out.push_back(d);
    else out.push_back(format_double(d));
  }
  return out;
}

namespace {

json vec_list(const std::vector<Vec>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(vec_json(v));
  return out;
}

json dist_json(double d) {
  if (std::isfinite(d)) return d;
  return "inf";
}

BasePoint resolve_base(const ParametricProblem& pr, const std::optional<Vec>& p, const std::optional<Vec>& x,
                       Variant variant) {
  Vec pb = p ? *p : pr.base_p.value_or(Vec{});
  if (!p && !pr.base_p) throw Error(ErrorCode::SchemaError, "no base parameter: pass --p or set base_point");
  if (!x && !pr.base_x) throw Error(ErrorCode::SchemaError, "no base decision: pass --x or set base_point");
  Vec xb = x ? *x : *pr.base_x;
  return check_solution_point(pr, pb, xb, variant);
}

json base_json(const BasePoint& b) {
  return {{"p", vec_json(b.p)}, {"x", vec_json(b.x)}, {"y", vec_json(b.y)}, {"exact", b.exact}};
}

}  // namespace

json poly_json(const HPolyhedron& poly) {
  const HPolyhedron c = poly.canonical();
  json ineq = json::array(), eq = json::array();
  for (std::size_t i = 0; i < c.ineq_matrix().rows(); ++i)
    ineq.push_back({{"a", vec_json(c.ineq_matrix()[i])}, {"b", format_scalar(c.ineq_rhs()[i])}});
  for (std::size_t i = 0; i < c.eq_matrix().rows(); ++i)
    eq.push_back({{"a", vec_json(c.eq_matrix()[i])}, {"b", format_scalar(c.eq_rhs()[i])}});
  json out = {{"dim", c.dim()}, {"inequalities", ineq}, {"equalities", eq}};
  if (c.is_empty()) {
    out["empty"] = true;
    return out;
  }
  const PolyGenerators g = c.generators();
  out["empty"] = false;
  out["generators"] = {{"points", vec_list(g.points)}, {"rays", vec_list(g.rays)}, {"lines", vec_list(g.lines)}};
  return out;
}

json qualification_json(const QualReport& q) {
  auto cond = [](const QualCondition& c) {
    return json{{"holds", c.holds},
                {"note", c.note},
                {"cone_rays", vec_list(c.cone.rays())},
                {"cone_lines", vec_list(c.cone.lines())}};
  };
  return {{"holds", q.holds()}, {"condition_i", cond(q.condition_i)}, {"condition_ii", cond(q.condition_ii)}};
}

json domination_json(const DominationCertificate& cert, std::size_t max_violations) {
  json viol = json::array();
  for (std::size_t i = 0; i < cert.violations.size() && i < max_violations; ++i) {
    const auto& v = cert.violations[i];
    viol.push_back({{"p", vec_json(v.p)}, {"y", vec_json(v.y)}, {"distance", dist_json(v.distance)},
                    {"reason", v.reason}});
  }
  std::ostringstream seed;
  seed << "0x" << std::hex << std::uppercase << cert.seed;
  return {{"variant", std::string(to_string(cert.variant))},
          {"radius", cert.radius},
          {"seed", seed.str()},
          {"n_param_samples", cert.n_param_samples},
          {"n_image_samples", cert.n_image_samples},
          {"n_infeasible", cert.n_infeasible},
          {"holds_empirically", cert.holds_empirically},
          {"truncated", cert.truncated},
          {"strict_tilde", cert.strict_tilde},
          {"n_violations", cert.violations.size()},
          {"violations", viol}};
}

json header(const std::string& command, const ParametricProblem& pr) {
  return {{"tool", "coderiv"},
          {"version", kToolVersion},
          {"command", command},
          {"problem", pr.name},
          {"digest", problem_digest(pr)}};
}

json frontier_report(const ParametricProblem& pr, const FrontierQuery& q) {
  check_structure(pr);
  if (!q.p && !pr.base_p) throw Error(ErrorCode::SchemaError, "no parameter: pass --p or set base_point");
  const Vec p = q.p ? *q.p : *pr.base_p;
  const FrontierSample fs = frontier_sample_detailed(pr, p, weight_grid(pr.cone, q.weights));
  json out = header("frontier", pr);
  out["p"] = vec_json(p);
  out["exact"] = fs.exact;
  out["cloud"] = vec_list(fs.cloud.points);
  out["preimages"] = vec_list(fs.preimages);
  out["unbounded_weights"] = vec_list(fs.unbounded);
  json cls;
  auto indices = [&](auto fn) -> json {
    try {
      return fn(fs.cloud, pr.cone).indices;
    } catch (const Error& e) {
      return std::string(e.what());
    }
  };
  cls["min"] = indices(min_points);
  cls["wmin"] = indices(wmin_points);
  cls["prmin"] = indices(prmin_points);
  out["classification"] = cls;
  return out;
}

json oracle_verdicts(const EpiCloud& cloud, const CoderivSet& set, double eps, bool product_norm) {
  json out = json::array();
  if (set.empty()) return out;
  const DVec neg_y = to_doubles(neg(set.ystar));
  auto candidate = [&](const Vec& pstar) {
    DVec v = to_doubles(pstar);
    v.insert(v.end(), neg_y.begin(), neg_y.end());
    return v;
  };
  auto verdict = [&](const std::string& kind, const Vec& pstar) {
    const DVec v = candidate(pstar);
    const double q = frechet_quotient(cloud, v, product_norm);
    out.push_back({{"kind", kind}, {"pstar", vec_json(pstar)}, {"quotient", q}, {"pass", q <= eps}});
  };
  const PolyGenerators g = set.generators();
  for (const Vec& pt : g.points) {
    verdict("point", pt);
    for (const Vec& r : g.rays) verdict("point+ray", add(pt, r));
    for (const Vec& l : g.lines) {
      verdict("point+line", add(pt, l));
      verdict("point-line", sub(pt, l));
    }
  }
  return out;
}

json coderivative_report(const ParametricProblem& pr, const CoderivQuery& q) {
  check_structure(pr);
  if (q.ystars.empty()) throw Error(ErrorCode::SchemaError, "at least one y* is required");
  const BasePoint base = resolve_base(pr, q.p, q.x, q.variant);
  json out = header("coderivative", pr);
  out["base"] = base_json(base);
  out["method"] = q.method == Method::Formula ? "formula" : q.method == Method::Oracle ? "oracle" : "both";
  json records = json::array();
  FrontierOptions fo;
  fo.assume_domination = q.assume_domination;
  fo.domination = q.domination;
  std::optional<EpiCloud> cloud;
  for (const Vec& ystar : q.ystars) {
    if (ystar.size() != pr.dims.y) throw Error(ErrorCode::DimensionMismatch, "y* has the wrong dimension");
    FrontierResult fr = frontier_coderivative_detailed(pr, base, ystar, q.variant, fo);
    json rec;
    rec["ystar"] = vec_json(ystar);
    rec["variant"] = std::string(to_string(q.variant));
    rec["provenance"] = fr.value.provenance;
    rec["exact"] = fr.value.exact;
    rec["tolerance"] = fr.value.tolerance;
    rec["qualification"] = qualification_json(fr.qualification);
    if (fr.domination) rec["domination"] = domination_json(*fr.domination, 5);
    else rec["domination"] = nullptr;
    const bool justified = fr.qualification.holds() && fr.domination && fr.domination->holds_empirically;
    rec["justification"] = justified ? "qualification and domination certified" : "formula-unjustified";
    if (q.method != Method::Oracle) rec["set"] = poly_json(fr.value.set);
    else rec["empty"] = fr.value.empty();
    if (q.method != Method::Formula) {
      if (!cloud) {
        EpiOptions eo = q.epi;
        for (const Vec& y : q.ystars) eo.extra_weights.push_back(y);
        cloud = epi_cloud(pr, base.p, base.y, eo);
      }
      json verdicts = oracle_verdicts(*cloud, fr.value, q.eps);
      bool all = true;
      for (const auto& v : verdicts) all = all && v["pass"].get<bool>();
      rec["oracle"] = {{"delta", cloud->delta},
                       {"eps", q.eps},
                       {"n_samples", cloud->samples.size()},
                       {"pass", all},
                       {"verdicts", verdicts}};
    }
    records.push_back(std::move(rec));
  }
  out["queries"] = records;
  return out;
}

json domination_report(const ParametricProblem& pr, const std::optional<Vec>& pbar, Variant variant,
                       const DominationOptions& options) {
  check_structure(pr);
  if (!pbar && !pr.base_p) throw Error(ErrorCode::SchemaError, "no base parameter: pass --p or set base_point");
  const Vec p = pbar ? *pbar : *pr.base_p;
  json out = header("domination", pr);
  out["pbar"] = vec_json(p);
  out["certificate"] = domination_json(check_domination(pr, p, variant, options), 50);
  return out;
}

json validate_report(const ParametricProblem& pr) {
  const ValidationReport rep = validate(pr);
  json out = header("validate", pr);
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  out["checks"] = checks;
  out["ok"] = rep.ok();
  out["convexity_witness"] = rep.convexity_witness ? vec_json(*rep.convexity_witness) : json(nullptr);
  return out;
}

json oracle_report(const ParametricProblem& pr, const OracleQuery& q) {
  check_structure(pr);
  const BasePoint base = resolve_base(pr, q.p, q.x, Variant::Min);
  if (q.ystar.size() != pr.dims.y) throw Error(ErrorCode::DimensionMismatch, "y* has the wrong dimension");
  EpiOptions eo = q.epi;
  eo.extra_weights.push_back(q.ystar);
  const EpiCloud cloud = epi_cloud(pr, base.p, base.y, eo);
  json out = header("oracle", pr);
  out["base"] = base_json(base);
  out["ystar"] = vec_json(q.ystar);
  out["delta"] = cloud.delta;
  out["eps"] = q.eps;
  out["n_samples"] = cloud.samples.size();
  out["skipped_parameters"] = cloud.skipped;
  out["product_norm"] = q.product_norm;
  if (q.candidates.empty()) {
    FrontierOptions fo;
    fo.assume_domination = true;
    const CoderivSet set = frontier_coderivative(pr, base, q.ystar, Variant::Min, fo);
    out["candidates_from"] = "formula";
    out["verdicts"] = oracle_verdicts(cloud, set, q.eps, q.product_norm);
  } else {
    json verdicts = json::array();
    for (const DVec& v : q.candidates) {
      const double quo = frechet_quotient(cloud, v, q.product_norm);
      verdicts.push_back({{"vstar", dvec_json(v)}, {"quotient", quo}, {"pass", quo <= q.eps}});
    }
    out["candidates_from"] = "input";
    out["verdicts"] = verdicts;
  }
  const DMatrix fd = finite_diff_gradient(pr, to_doubles(base.p), to_doubles(base.x));
  const DMatrix an = objective_jacobian(pr, to_doubles(base.p), to_doubles(base.x));
  double err = 0;
  for (std::size_t i = 0; i < fd.size(); ++i)
    for (std::size_t j = 0; j < fd[i].size(); ++j)
      err = std::max(err, std::abs(fd[i][j] - an[i][j]) / std::max(1.0, std::abs(an[i][j])));
  out["jacobian_check"] = {{"max_relative_error", err}, {"pass", err <= 1e-6}};
  return out;
}

namespace {

void render_text(const json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      render_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else if (j.is_array()) {
    os << prefix << ": (";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) os << ", ";
      os << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
    }
    os << ")\n";
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::string render(const json& report, Format format) {
  if (format == Format::Json) return report.dump(2) + "\n";
  std::ostringstream os;
  render_text(report, "", os);
  return os.str();
}

}  // namespace coderiv::report
