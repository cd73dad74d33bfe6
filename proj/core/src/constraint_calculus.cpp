#include "coderiv/constraint_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coderiv/error.hpp"
#include "detail/search.hpp"

namespace coderiv {

bool ActiveSet::empty() const {
  if (!rows.empty()) return false;
  for (const auto& f : families)
    if (f.whole_interval || !f.roots.empty() || !f.float_roots.empty()) return false;
  return true;
}

namespace {

// Finite rows of the system, without the semi-infinite families.
const std::vector<AffineRow>* finite_rows(const ParametricProblem& pr) {
  if (const auto* a = std::get_if<AffineSystem>(&pr.constraints)) return &a->rows;
  if (const auto* s = std::get_if<SemiInfiniteSystem>(&pr.constraints)) return &s->rows;
  return nullptr;
}

Scalar row_value(const AffineRow& r, const BasePoint& b) { return dot(r.ap, b.p) + dot(r.ax, b.x) + r.b; }

std::optional<Scalar> rational_sqrt(const Scalar& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn = sqrt(n), rd = sqrt(d);
  return Scalar(rn, rd);
}

FamilyActivity family_activity(const SemiInfiniteFamily& f, std::size_t index, const BasePoint& b) {
  FamilyActivity act;
  act.family = index;
  const std::size_t top = std::max({f.ap.size(), f.ax.size(), f.b.size()});
  Vec c(top, Scalar(0));
  for (std::size_t k = 0; k < top; ++k) {
    if (k < f.ap.size()) c[k] += dot(f.ap[k], b.p);
    if (k < f.ax.size()) c[k] += dot(f.ax[k], b.x);
    if (k < f.b.size()) c[k] += f.b[k];
  }
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  auto in_range = [&](const Scalar& t) { return t >= f.t_lo && t <= f.t_hi; };
  if (c.empty()) {
    act.whole_interval = true;
    return act;
  }
  if (c.size() == 1) return act;
  if (c.size() == 2) {
    Scalar t = -c[0] / c[1];
    if (in_range(t)) act.roots.push_back(t);
    return act;
  }
  if (c.size() > 3) throw Error(ErrorCode::UnsupportedConstraintKind, "family of degree > 2");
  Scalar disc = c[1] * c[1] - 4 * c[2] * c[0];
  if (sgn(disc) < 0) return act;
  if (auto r = rational_sqrt(disc)) {
    for (Scalar t : {Scalar((-c[1] - *r) / (2 * c[2])), Scalar((-c[1] + *r) / (2 * c[2]))})
      if (in_range(t) && std::find(act.roots.begin(), act.roots.end(), t) == act.roots.end())
        act.roots.push_back(t);
    std::sort(act.roots.begin(), act.roots.end());
  } else {
    double sd = std::sqrt(disc.get_d());
    double lo = f.t_lo.get_d(), hi = f.t_hi.get_d();
    for (double t : {(-c[1].get_d() - sd) / (2 * c[2].get_d()), (-c[1].get_d() + sd) / (2 * c[2].get_d())})
      if (t >= lo - 1e-12 && t <= hi + 1e-12) act.float_roots.push_back(t);
    std::sort(act.float_roots.begin(), act.float_roots.end());
  }
  return act;
}

struct GradientList {
  std::vector<Vec> gp, gx;
  std::vector<Relation> rel;
  std::vector<bool> active;
  bool exact = true;
};

GradientList gradients(const ParametricProblem& pr, const BasePoint& b) {
  GradientList g;
  if (const auto* s = std::get_if<SmoothSystem>(&pr.constraints)) {
    DVec pd = to_doubles(b.p), xd = to_doubles(b.x);
    for (const auto& n : s->names) {
      const auto& c = builtin_constraint(n);
      DVec grad = c.gradient(pd, xd);
      g.gp.push_back(from_doubles(std::span<const double>(grad.data(), pr.dims.p)));
      g.gx.push_back(from_doubles(std::span<const double>(grad.data() + pr.dims.p, pr.dims.x)));
      g.rel.push_back(Relation::Le);
      g.active.push_back(std::abs(c.value(pd, xd)) <= 1e-12);
    }
    g.exact = false;
    return g;
  }
  for (const auto& r : polyhedral_rows(pr)) {
    g.gp.push_back(r.ap);
    g.gx.push_back(r.ax);
    g.rel.push_back(r.rel);
    g.active.push_back(r.rel == Relation::Eq || sgn(row_value(r, b)) == 0);
  }
  return g;
}

bool smooth_feasible(const ParametricProblem& pr, const DVec& z) {
  return is_feasible(pr, std::span<const double>(z.data(), pr.dims.p),
                     std::span<const double>(z.data() + pr.dims.p, pr.dims.x));
}

}  // namespace

ActiveSet active_set(const ParametricProblem& pr, const BasePoint& b) {
  ActiveSet out;
  if (const auto* s = std::get_if<SmoothSystem>(&pr.constraints)) {
    DVec pd = to_doubles(b.p), xd = to_doubles(b.x);
    if (!is_feasible(pr, pd, xd, 1e-9)) throw Error(ErrorCode::InfeasiblePoint, "base not in gph C");
    for (std::size_t i = 0; i < s->names.size(); ++i)
      if (std::abs(builtin_constraint(s->names[i]).value(pd, xd)) <= 1e-12) out.rows.push_back(i);
    return out;
  }
  if (!graph_polyhedron(pr).contains(concat(b.p, b.x)))
    throw Error(ErrorCode::InfeasiblePoint, "base not in gph C");
  const auto& rows = *finite_rows(pr);
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].rel == Relation::Eq || sgn(row_value(rows[i], b)) == 0) out.rows.push_back(i);
  if (const auto* s = std::get_if<SemiInfiniteSystem>(&pr.constraints))
    for (std::size_t i = 0; i < s->families.size(); ++i) {
      FamilyActivity a = family_activity(s->families[i], i, b);
      if (!a.float_roots.empty()) out.irrational = true;
      out.families.push_back(std::move(a));
    }
  return out;
}

AcqResult acq_check(const ParametricProblem& pr, const BasePoint& b) {
  const std::size_t n = pr.dims.p + pr.dims.x;
  Vec z = concat(b.p, b.x);
  GradientList g = gradients(pr, b);
  Matrix ineq(n), eq(n);
  for (std::size_t i = 0; i < g.rel.size(); ++i) {
    if (!g.active[i]) continue;
    Vec row = concat(g.gp[i], g.gx[i]);
    if (g.rel[i] == Relation::Eq)
      eq.push_row(std::move(row));
    else
      ineq.push_row(std::move(row));
  }
  AcqResult res;
  res.linearization = PolyCone::from_halfspaces(ineq, eq);
  if (pr.polyhedral_constraints()) {
    res.tangent = tangent_cone(graph_polyhedron(pr), z);
    res.holds = res.tangent.contains(res.linearization);
    return res;
  }
  res.exact = false;
  const auto& names = std::get<SmoothSystem>(pr.constraints).names;
  DVec zd = to_doubles(z);
  auto worst = [&](const DVec& w) {
    double m = -1e300;
    for (const auto& nm : names)
      m = std::max(m, builtin_constraint(nm).value(std::span<const double>(w.data(), pr.dims.p),
                                                   std::span<const double>(w.data() + pr.dims.p, pr.dims.x)));
    return m;
  };
  DVec best = detail::pattern_search(worst, [](const DVec&) { return true; }, zd, 0.5, 1e-8, 20000);
  if (names.empty() || worst(best) < -1e-9) {
    // Slater point: convex constraints satisfy the qualification.
    res.tangent = res.linearization;
    res.holds = true;
    return res;
  }
  // Keep the linearization generators along which the set extends.
  auto feasible_dir = [&](const Vec& d) {
    DVec dd = to_doubles(d);
    for (double tau : {1e-3, 1e-4, 1e-5}) {
      DVec w = zd;
      for (std::size_t i = 0; i < n; ++i) w[i] += tau * dd[i];
      if (!smooth_feasible(pr, w)) return false;
    }
    return true;
  };
  std::vector<Vec> rays;
  for (const auto& r : res.linearization.rays())
    if (feasible_dir(r)) rays.push_back(r);
  for (const auto& l : res.linearization.lines()) {
    if (feasible_dir(l)) rays.push_back(l);
    if (feasible_dir(neg(l))) rays.push_back(neg(l));
  }
  res.tangent = PolyCone::from_generators(n, std::move(rays));
  res.holds = res.tangent.contains(res.linearization);
  return res;
}

MultiplierPolyhedron multiplier_polyhedron(const ParametricProblem& pr, const BasePoint& b, const Vec& xstar) {
  if (xstar.size() != pr.dims.x) throw Error(ErrorCode::DimensionMismatch, "x* has wrong dimension");
  if (!acq_check(pr, b).holds) throw Error(ErrorCode::ACQRequired, "tangent cone is smaller than the linearization");
  GradientList g = gradients(pr, b);
  const std::size_t m = g.rel.size();
  MultiplierPolyhedron out;
  out.lambda = HPolyhedron(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!g.active[i]) {
      out.lambda.add_equality(unit(m, i), 0);
    } else if (g.rel[i] == Relation::Le) {
      out.lambda.add_inequality(neg(unit(m, i)), 0);
    }
  }
  // Σ λ_i ∇_x g_i = −x*
  for (std::size_t j = 0; j < pr.dims.x; ++j) {
    Vec row(m);
    for (std::size_t i = 0; i < m; ++i) row[i] = g.gx[i][j];
    out.lambda.add_equality(std::move(row), -xstar[j]);
  }
  out.grad_p = std::move(g.gp);
  out.grad_x = std::move(g.gx);
  out.rel = std::move(g.rel);
  out.active = std::move(g.active);
  out.exact = g.exact;
  return out;
}

HPolyhedron image_p_star(const MultiplierPolyhedron& mult) {
  const std::size_t m = mult.grad_p.size();
  const std::size_t np = m ? mult.grad_p.front().size() : 0;
  if (m == 0) {
    // No multipliers: the image is {0} when Λ is nonempty.
    return mult.lambda.is_empty() ? HPolyhedron::empty_set(np) : HPolyhedron::point(zeros(np));
  }
  Matrix gp(np, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < np; ++k) gp(k, i) = mult.grad_p[i][k];
  return mult.lambda.linear_image(gp);
}

PolyCone bcq_cone(const ParametricProblem& pr, const BasePoint& b) {
  if (!pr.polyhedral_constraints())
    throw Error(ErrorCode::UnsupportedConstraintKind, "BCQ cone needs affine or semi-infinite rows");
  const std::size_t n = pr.dims.p + pr.dims.x;
  ActiveSet act = active_set(pr, b);
  const auto& rows = *finite_rows(pr);
  std::vector<Vec> rays, lines;
  for (auto i : act.rows) {
    Vec grad = concat(rows[i].ap, rows[i].ax);
    (rows[i].rel == Relation::Eq ? lines : rays).push_back(std::move(grad));
  }
  if (const auto* s = std::get_if<SemiInfiniteSystem>(&pr.constraints)) {
    for (const auto& fa : act.families) {
      const auto& f = s->families[fa.family];
      auto grad_at = [&](const Scalar& t) {
        AffineRow r = f.at(t);
        r.ap.resize(pr.dims.p);
        r.ax.resize(pr.dims.x);
        return concat(r.ap, r.ax);
      };
      if (fa.whole_interval)
        for (const auto& t : f.reduction_points()) rays.push_back(grad_at(t));
      for (const auto& t : fa.roots) rays.push_back(grad_at(t));
      for (double t : fa.float_roots) rays.push_back(grad_at(from_double(t)));
    }
  }
  return PolyCone::from_generators(n, std::move(rays), std::move(lines));
}

bool bcq_check(const ParametricProblem& pr, const BasePoint& b) {
  PolyCone n = normal_cone(graph_polyhedron(pr), concat(b.p, b.x));
  return bcq_cone(pr, b).contains(n);
}

CoderivSet semi_infinite_frontier_coderivative(const ParametricProblem& pr, const BasePoint& b,
                                               const Vec& ystar, const FrontierOptions& options) {
  if (ystar.size() != pr.dims.y) throw Error(ErrorCode::DimensionMismatch, "y* has wrong dimension");
  if (!bcq_check(pr, b)) throw Error(ErrorCode::BCQRequired, "normal cone not covered by active gradients");
  QualReport q = qualification_check(pr, b);
  if (!q.holds()) throw Error(ErrorCode::QualificationFailed, "qualification conditions fail");
  if (!options.assume_domination) {
    DominationCertificate cert = check_domination(pr, b.p, Variant::Min, options.domination);
    if (!cert.holds_empirically)
      throw Error(ErrorCode::DominationNotCertified,
                  std::to_string(cert.violations.size()) + " violation(s) near p̄");
  }
  CoderivSet out;
  out.ystar = ystar;
  out.variant = Variant::Min;
  if (!pr.cone.dual_contains(ystar)) {
    out.set = HPolyhedron::empty_set(pr.dims.p);
    out.provenance = "active-gradient formula: y* outside K*, empty";
    return out;
  }
  SubgradientPair s = scalar_subdifferential(pr, b, ystar);
  PolyCone cone = bcq_cone(pr, b);
  std::vector<std::size_t> xcoords(pr.dims.x);
  std::iota(xcoords.begin(), xcoords.end(), pr.dims.p);
  out.set = cone.halfspaces().substitute(xcoords, neg(s.xstar)).translate(s.pstar).canonical();
  out.exact = s.exact;
  out.tolerance = s.exact ? 0 : 1e-9;
  out.provenance = "active-gradient formula over the semi-infinite index set";
  return out;
}

}  // namespace coderiv
