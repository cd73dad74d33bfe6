#include "coderiv/coderivative.hpp"

#include <numeric>

#include "coderiv/constraint_calculus.hpp"
#include "coderiv/error.hpp"

namespace coderiv {

bool same_coderivative(const CoderivSet& a, const CoderivSet& b) { return same_set(a.set, b.set); }

SubgradientPair scalar_subdifferential(const ParametricProblem& pr, const BasePoint& base,
                                       const Vec& ystar) {
  if (ystar.size() != pr.dims.y) throw Error(ErrorCode::DimensionMismatch, "y* has wrong dimension");
  Jacobian j = objective_jacobian(pr, base.p, base.x);
  return {j.jp.transpose_times(ystar), j.jx.transpose_times(ystar), j.exact};
}

HPolyhedron coderivative_constraint(const ParametricProblem& pr, const BasePoint& base,
                                    const Vec& xstar) {
  if (xstar.size() != pr.dims.x) throw Error(ErrorCode::DimensionMismatch, "x* has wrong dimension");
  HPolyhedron g = graph_polyhedron(pr);
  PolyCone n = normal_cone(g, concat(base.p, base.x));
  std::vector<std::size_t> xcoords(pr.dims.x);
  std::iota(xcoords.begin(), xcoords.end(), pr.dims.p);
  return n.halfspaces().substitute(xcoords, neg(xstar));
}

QualReport qualification_check(const ParametricProblem& pr, const BasePoint& base) {
  const std::size_t np = pr.dims.p, nx = pr.dims.x;
  QualReport rep;
  // Every shipped objective is defined on all of P × X.
  HPolyhedron dom_f(np + nx);
  HPolyhedron range, dom_c;
  if (pr.polyhedral_constraints()) {
    range = graph_polyhedron(pr);
    std::vector<std::size_t> pc(np);
    std::iota(pc.begin(), pc.end(), std::size_t{0});
    dom_c = project(range, pc);
    rep.condition_i.note = "computed from the polyhedral graph";
  } else {
    // Non-polyhedral graph: any nonempty subset gives the same difference with a total dom f.
    range = HPolyhedron::point(concat(base.p, base.x));
    dom_c = HPolyhedron::point(base.p);
    rep.condition_i.note = "dom f is total; the base point stands in for the graph";
  }
  rep.condition_ii.note = rep.condition_i.note;
  rep.condition_i.cone = cone_hull(minkowski_difference(range, dom_f));
  rep.condition_i.holds = is_linear_subspace(rep.condition_i.cone);
  rep.condition_ii.cone = cone_hull(minkowski_difference(HPolyhedron(np), dom_c));
  rep.condition_ii.holds = is_linear_subspace(rep.condition_ii.cone);
  return rep;
}

CoderivSet profile_coderivative_F(const ParametricProblem& pr, const BasePoint& base, const Vec& ystar,
                                  const OrderCone* cone_override) {
  const OrderCone& k = cone_override ? *cone_override : pr.cone;
  if (ystar.size() != pr.dims.y) throw Error(ErrorCode::DimensionMismatch, "y* has wrong dimension");
  QualReport q = qualification_check(pr, base);
  if (!q.holds())
    throw Error(ErrorCode::QualificationFailed,
                std::string("condition ") + (q.condition_i.holds ? "(ii)" : "(i)") + " is not a subspace");
  CoderivSet out;
  out.ystar = ystar;
  if (!k.dual_contains(ystar)) {
    out.set = HPolyhedron::empty_set(pr.dims.p);
    out.provenance = "profile formula: y* outside K*, empty";
    return out;
  }
  SubgradientPair s = scalar_subdifferential(pr, base, ystar);
  HPolyhedron d;
  if (pr.polyhedral_constraints()) {
    d = coderivative_constraint(pr, base, s.xstar);
  } else {
    MultiplierPolyhedron m = multiplier_polyhedron(pr, base, s.xstar);
    d = image_p_star(m);
    s.exact = s.exact && m.exact;
  }
  out.set = d.translate(s.pstar).canonical();
  out.exact = s.exact;
  out.tolerance = s.exact ? 0 : 1e-9;
  out.provenance = pr.polyhedral_constraints() ? "profile formula: gradient + constraint coderivative"
                                               : "profile formula: gradient + multiplier image";
  return out;
}

FrontierResult frontier_coderivative_detailed(const ParametricProblem& pr, const BasePoint& base,
                                              const Vec& ystar, Variant variant,
                                              const FrontierOptions& options) {
  const OrderCone* cone = &pr.cone;
  if (variant == Variant::Weak) {
    if (!pr.cone_tilde) throw Error(ErrorCode::MissingTildeCone, "weak variant needs cone_tilde");
    cone = &*pr.cone_tilde;
  }
  check_solution_point(pr, base.p, base.x, variant);
  FrontierResult res;
  res.qualification = qualification_check(pr, base);
  if (!options.assume_domination) {
    res.domination = check_domination(pr, base.p, variant, options.domination);
    if (!res.domination->holds_empirically)
      throw Error(ErrorCode::DominationNotCertified,
                  std::to_string(res.domination->violations.size()) + " violation(s) near p̄");
  }
  res.value = profile_coderivative_F(pr, base, ystar, cone);
  res.value.variant = variant;
  std::string just = options.assume_domination ? "domination assumed" : "domination certified empirically";
  switch (variant) {
    case Variant::Min: res.value.provenance = "frontier(min) = profile coderivative; " + just; break;
    case Variant::Weak: res.value.provenance = "frontier(weak) = profile coderivative with K~; " + just; break;
    case Variant::Proper: res.value.provenance = "frontier(proper) = profile coderivative; " + just; break;
  }
  return res;
}

CoderivSet frontier_coderivative(const ParametricProblem& pr, const BasePoint& base, const Vec& ystar,
                                 Variant variant, const FrontierOptions& options) {
  return frontier_coderivative_detailed(pr, base, ystar, variant, options).value;
}

}  // namespace coderiv
