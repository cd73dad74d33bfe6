#include "coderiv/problem.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "coderiv/error.hpp"
#include "coderiv/lp.hpp"
#include "detail/regions.hpp"
#include "detail/search.hpp"

namespace coderiv {

namespace {

[[noreturn]] void mismatch(const std::string& what) { throw Error(ErrorCode::DimensionMismatch, what); }

void expect_size(std::size_t got, std::size_t want, const std::string& what) {
  if (got != want)
    mismatch(what + ": expected " + std::to_string(want) + ", got " + std::to_string(got));
}

void expect_shape(const Matrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
  expect_size(m.rows(), rows, what + " rows");
  if (rows > 0) expect_size(m.cols(), cols, what + " columns");
}

Vec lincomb(const std::vector<Vec>& coeffs, const Scalar& t, std::size_t n) {
  Vec out = zeros(n);
  Scalar power = 1;
  for (const auto& c : coeffs) {
    for (std::size_t i = 0; i < n && i < c.size(); ++i) out[i] += c[i] * power;
    power *= t;
  }
  return out;
}

std::size_t vec_len(const std::vector<Vec>& coeffs) {
  std::size_t n = 0;
  for (const auto& c : coeffs) n = std::max(n, c.size());
  return n;
}

bool all_zero(const std::vector<Vec>& coeffs, std::size_t k) {
  return k >= coeffs.size() || is_zero(coeffs[k]);
}

DVec dvec(const Vec& v) { return to_doubles(v); }

// {x ∈ C(p) : ybar − f(p,x) ∈ K} for an affine objective, in x-space.
std::string format_dvec(const DVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_double(v[i]);
  }
  return s + ")";
}

}  // namespace

namespace detail {

HPolyhedron dominated_region(const ParametricProblem& pr, const Vec& p, const Vec& ybar,
                             const PolyCone& k) {
  const auto& obj = std::get<AffineObjective>(pr.objective);
  HPolyhedron out = feasible_polyhedron(pr, p);
  Vec r = sub(sub(ybar, obj.fp * p), obj.c);  // ybar − Fp p − c
  const Matrix& ak = k.halfspaces().ineq_matrix();
  const Matrix& ek = k.halfspaces().eq_matrix();
  // rows a·(r − Fx x) ≤ 0  ⇔  −(Fxᵀa)·x ≤ −a·r
  for (std::size_t i = 0; i < ak.rows(); ++i)
    out.add_inequality(neg(obj.fx.transpose_times(ak[i])), -dot(ak[i], r));
  for (std::size_t i = 0; i < ek.rows(); ++i)
    out.add_equality(neg(obj.fx.transpose_times(ek[i])), -dot(ek[i], r));
  return out;
}

bool in_cone_d(const PolyCone& k, const DVec& v, double tol) {
  const Matrix& ak = k.halfspaces().ineq_matrix();
  const Matrix& ek = k.halfspaces().eq_matrix();
  auto ddot = [&](const Vec& a) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i].get_d() * v[i];
    return s;
  };
  for (std::size_t i = 0; i < ak.rows(); ++i)
    if (ddot(ak[i]) > tol) return false;
  for (std::size_t i = 0; i < ek.rows(); ++i)
    if (std::abs(ddot(ek[i])) > tol) return false;
  return true;
}

}  // namespace detail

using detail::dominated_region;
using detail::in_cone_d;

// ---- semi-infinite families ----

std::size_t SemiInfiniteFamily::degree() const {
  std::size_t top = std::max({ap.size(), ax.size(), b.size()});
  for (std::size_t k = top; k-- > 0;) {
    bool zero = all_zero(ap, k) && all_zero(ax, k) && (k >= b.size() || sgn(b[k]) == 0);
    if (!zero) return k;
  }
  return 0;
}

AffineRow SemiInfiniteFamily::at(const Scalar& t) const {
  AffineRow row;
  row.ap = lincomb(ap, t, vec_len(ap));
  row.ax = lincomb(ax, t, vec_len(ax));
  Scalar power = 1;
  row.b = 0;
  for (const auto& c : b) {
    row.b += c * power;
    power *= t;
  }
  row.rel = Relation::Le;
  return row;
}

std::vector<Scalar> SemiInfiniteFamily::reduction_points() const {
  const std::size_t d = degree();
  if (d <= 1) return {t_lo, t_hi};
  if (d > 2)
    throw Error(ErrorCode::UnsupportedConstraintKind, "semi-infinite family of degree > 2");
  if (!all_zero(ap, 2) || !all_zero(ax, 2))
    throw Error(ErrorCode::UnsupportedConstraintKind,
                "quadratic t-dependence of (p,x) coefficients gives a non-polyhedral set");
  const Scalar b2 = b.size() > 2 ? b[2] : Scalar(0);
  if (sgn(b2) > 0) return {t_lo, t_hi};  // convex in t: maximum at an endpoint
  if (!all_zero(ap, 1) || !all_zero(ax, 1))
    throw Error(ErrorCode::UnsupportedConstraintKind,
                "concave t-dependence with varying coefficients gives a non-polyhedral set");
  const Scalar b1 = b.size() > 1 ? b[1] : Scalar(0);
  Scalar tc = -b1 / (2 * b2);
  std::vector<Scalar> out{t_lo, t_hi};
  if (tc > t_lo && tc < t_hi) out.push_back(tc);
  return out;
}

// ---- structure ----

void check_structure(const ParametricProblem& pr) {
  const Dims& d = pr.dims;
  expect_size(pr.cone.dim(), d.y, "cone dimension");
  if (pr.cone_tilde) {
    expect_size(pr.cone_tilde->dim(), d.y, "cone_tilde dimension");
    for (const auto& r : pr.cone_tilde->extreme_rays())
      if (!pr.cone.interior_contains(r))
        throw Error(ErrorCode::SchemaError,
                    "cone_tilde generator " + format_vec(r) + " is not interior to cone");
  }
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, AffineObjective>) {
          expect_shape(o.fp, d.y, d.p, "objective.Fp");
          expect_shape(o.fx, d.y, d.x, "objective.Fx");
          expect_size(o.c.size(), d.y, "objective.c");
        } else if constexpr (std::is_same_v<T, QuadraticObjective>) {
          const std::size_t n = d.p + d.x;
          expect_size(o.q.size(), d.y, "objective.Q count");
          for (const auto& q : o.q) {
            expect_shape(q, n, n, "objective.Q");
            if (q.transpose() != q) throw Error(ErrorCode::SchemaError, "objective.Q not symmetric");
          }
          expect_shape(o.l, d.y, n, "objective.L");
          expect_size(o.c.size(), d.y, "objective.c");
        } else {
          const auto& b = builtin_objective(o.name);
          expect_size(d.y, b.n_y, "objective '" + o.name + "' outputs");
          if (d.p < b.min_p || d.x < b.min_x) mismatch("objective '" + o.name + "' needs more inputs");
        }
      },
      pr.objective);
  auto check_row = [&](const AffineRow& r, const std::string& what) {
    expect_size(r.ap.size(), d.p, what + ".ap");
    expect_size(r.ax.size(), d.x, what + ".ax");
  };
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, AffineSystem>) {
          for (std::size_t i = 0; i < c.rows.size(); ++i)
            check_row(c.rows[i], "constraints.rows[" + std::to_string(i) + "]");
        } else if constexpr (std::is_same_v<T, SemiInfiniteSystem>) {
          for (std::size_t i = 0; i < c.rows.size(); ++i)
            check_row(c.rows[i], "constraints.rows[" + std::to_string(i) + "]");
          for (std::size_t i = 0; i < c.families.size(); ++i) {
            const auto& f = c.families[i];
            std::string what = "constraints.families[" + std::to_string(i) + "]";
            for (const auto& v : f.ap) expect_size(v.size(), d.p, what + ".ap");
            for (const auto& v : f.ax) expect_size(v.size(), d.x, what + ".ax");
            if (!(f.t_lo < f.t_hi)) throw Error(ErrorCode::SchemaError, what + ": t_lo >= t_hi");
          }
        } else {
          for (const auto& n : c.names) {
            const auto& b = builtin_constraint(n);
            if (d.p < b.min_p || d.x < b.min_x) mismatch("constraint '" + n + "' needs more inputs");
          }
        }
      },
      pr.constraints);
  if (pr.base_p) expect_size(pr.base_p->size(), d.p, "base_point.p");
  if (pr.base_x) expect_size(pr.base_x->size(), d.x, "base_point.x");
}

// ---- objective ----

Vec evaluate_objective(const ParametricProblem& pr, const Vec& p, const Vec& x) {
  if (const auto* a = std::get_if<AffineObjective>(&pr.objective))
    return add(add(a->fp * p, a->fx * x), a->c);
  if (const auto* q = std::get_if<QuadraticObjective>(&pr.objective)) {
    Vec z = concat(p, x);
    Vec out = add(q->l * z, q->c);
    for (std::size_t i = 0; i < q->q.size(); ++i) out[i] += dot(z, q->q[i] * z) / 2;
    return out;
  }
  DVec pd = dvec(p), xd = dvec(x);
  DVec v = evaluate_objective(pr, std::span<const double>(pd), std::span<const double>(xd));
  return from_doubles(v);
}

DVec evaluate_objective(const ParametricProblem& pr, std::span<const double> p,
                        std::span<const double> x) {
  if (const auto* n = std::get_if<NamedObjective>(&pr.objective))
    return builtin_objective(n->name).value(p, x);
  Vec e = evaluate_objective(pr, from_doubles(p), from_doubles(x));
  return to_doubles(e);
}

Jacobian objective_jacobian(const ParametricProblem& pr, const Vec& p, const Vec& x) {
  const Dims& d = pr.dims;
  Jacobian j{Matrix(d.y, d.p), Matrix(d.y, d.x), true};
  if (const auto* a = std::get_if<AffineObjective>(&pr.objective)) {
    j.jp = a->fp;
    j.jx = a->fx;
    return j;
  }
  if (const auto* q = std::get_if<QuadraticObjective>(&pr.objective)) {
    Vec z = concat(p, x);
    for (std::size_t i = 0; i < d.y; ++i) {
      Vec g = add(q->q[i] * z, q->l[i]);
      for (std::size_t k = 0; k < d.p; ++k) j.jp(i, k) = g[k];
      for (std::size_t k = 0; k < d.x; ++k) j.jx(i, k) = g[d.p + k];
    }
    return j;
  }
  DVec pd = dvec(p), xd = dvec(x);
  DMatrix g = objective_jacobian(pr, std::span<const double>(pd), std::span<const double>(xd));
  for (std::size_t i = 0; i < d.y; ++i) {
    for (std::size_t k = 0; k < d.p; ++k) j.jp(i, k) = from_double(g[i][k]);
    for (std::size_t k = 0; k < d.x; ++k) j.jx(i, k) = from_double(g[i][d.p + k]);
  }
  j.exact = false;
  return j;
}

DMatrix objective_jacobian(const ParametricProblem& pr, std::span<const double> p,
                           std::span<const double> x) {
  if (const auto* n = std::get_if<NamedObjective>(&pr.objective))
    return builtin_objective(n->name).jacobian(p, x);
  Jacobian j = objective_jacobian(pr, from_doubles(p), from_doubles(x));
  DMatrix out(pr.dims.y);
  for (std::size_t i = 0; i < pr.dims.y; ++i) {
    for (std::size_t k = 0; k < pr.dims.p; ++k) out[i].push_back(j.jp(i, k).get_d());
    for (std::size_t k = 0; k < pr.dims.x; ++k) out[i].push_back(j.jx(i, k).get_d());
  }
  return out;
}

// ---- constraints ----

std::vector<AffineRow> polyhedral_rows(const ParametricProblem& pr) {
  if (const auto* a = std::get_if<AffineSystem>(&pr.constraints)) return a->rows;
  if (const auto* s = std::get_if<SemiInfiniteSystem>(&pr.constraints)) {
    std::vector<AffineRow> rows = s->rows;
    for (const auto& f : s->families)
      for (const auto& t : f.reduction_points()) {
        AffineRow r = f.at(t);
        if (r.ap.size() < pr.dims.p) r.ap.resize(pr.dims.p);
        if (r.ax.size() < pr.dims.x) r.ax.resize(pr.dims.x);
        rows.push_back(std::move(r));
      }
    return rows;
  }
  throw Error(ErrorCode::UnsupportedConstraintKind, "smooth constraint systems are not polyhedral");
}

HPolyhedron graph_polyhedron(const ParametricProblem& pr) {
  HPolyhedron g(pr.dims.p + pr.dims.x);
  for (const auto& r : polyhedral_rows(pr)) {
    Vec a = concat(r.ap, r.ax);
    if (r.rel == Relation::Le)
      g.add_inequality(std::move(a), -r.b);
    else
      g.add_equality(std::move(a), -r.b);
  }
  return g;
}

HPolyhedron feasible_polyhedron(const ParametricProblem& pr, const Vec& p) {
  expect_size(p.size(), pr.dims.p, "parameter");
  HPolyhedron c(pr.dims.x);
  for (const auto& r : polyhedral_rows(pr)) {
    Scalar rhs = -r.b - dot(r.ap, p);
    if (r.rel == Relation::Le)
      c.add_inequality(r.ax, std::move(rhs));
    else
      c.add_equality(r.ax, std::move(rhs));
  }
  return c;
}

bool is_feasible(const ParametricProblem& pr, std::span<const double> p, std::span<const double> x,
                 double tol) {
  if (const auto* s = std::get_if<SmoothSystem>(&pr.constraints)) {
    for (const auto& n : s->names)
      if (builtin_constraint(n).value(p, x) > tol) return false;
    return true;
  }
  for (const auto& r : polyhedral_rows(pr)) {
    double v = r.b.get_d();
    for (std::size_t i = 0; i < p.size(); ++i) v += r.ap[i].get_d() * p[i];
    for (std::size_t i = 0; i < x.size(); ++i) v += r.ax[i].get_d() * x[i];
    if (r.rel == Relation::Le ? v > tol : std::abs(v) > tol) return false;
  }
  return true;
}

std::optional<DVec> feasible_point(const ParametricProblem& pr, std::span<const double> p) {
  if (const auto* s = std::get_if<SmoothSystem>(&pr.constraints)) {
    DVec x(pr.dims.x, 0.0);
    for (const auto& n : s->names) {
      DVec c = builtin_constraint(n).feasible_point(p, pr.dims.x);
      if (c.empty()) return std::nullopt;
      x = c;
    }
    if (!is_feasible(pr, p, x)) return std::nullopt;
    return x;
  }
  auto pt = feasible_polyhedron(pr, from_doubles(p)).some_point();
  if (!pt) return std::nullopt;
  return to_doubles(*pt);
}

// ---- solution points ----

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Min: return "min";
    case Variant::Weak: return "weak";
    case Variant::Proper: return "proper";
  }
  return "min";
}

Variant parse_variant(std::string_view text) {
  if (text == "min") return Variant::Min;
  if (text == "weak") return Variant::Weak;
  if (text == "proper") return Variant::Proper;
  throw Error(ErrorCode::SchemaError, "unknown variant '" + std::string(text) + "'");
}

namespace {

[[noreturn]] void not_efficient(const Vec& witness, std::string_view variant) {
  throw Error(ErrorCode::NotEfficient,
              std::string(variant) + " efficiency fails; dominating x = " + format_vec(witness));
}

BasePoint check_exact(const ParametricProblem& pr, const Vec& p, const Vec& x, Variant variant) {
  HPolyhedron c = feasible_polyhedron(pr, p);
  if (!c.contains(x)) throw Error(ErrorCode::InfeasiblePoint, "x = " + format_vec(x));
  BasePoint bp{p, x, evaluate_objective(pr, p, x), true};
  const auto& obj = std::get<AffineObjective>(pr.objective);
  const OrderCone& k = pr.cone;

  if (variant == Variant::Min) {
    // max ⟨e, ȳ − f(p,x)⟩ over the dominated region; positive means dominated.
    Vec e = k.dual_interior_point();
    HPolyhedron region = dominated_region(pr, p, bp.y, k.cone());
    lp::Result r = lp::minimize(obj.fx.transpose_times(e), region.ineq_matrix(),
                                region.ineq_rhs(), region.eq_matrix(), region.eq_rhs());
    if (r.status == lp::Status::Unbounded) not_efficient(r.x, "min");
    if (r.status == lp::Status::Optimal && r.value < dot(obj.fx.transpose_times(e), x))
      not_efficient(r.x, "min");
    return bp;
  }
  if (variant == Variant::Weak) {
    if (!k.is_solid()) throw Error(ErrorCode::ConeNotSolid, "weak efficiency needs int K");
    // variables (x, s): a·(ȳ − f) + s ≤ 0 for every K row, s ≤ 1; maximize s.
    const std::size_t n = pr.dims.x;
    Matrix a(n + 1);
    Vec b;
    for (std::size_t i = 0; i < c.ineq_matrix().rows(); ++i) {
      a.push_row(concat(c.ineq_matrix()[i], Vec{0}));
      b.push_back(c.ineq_rhs()[i]);
    }
    Matrix e(n + 1);
    Vec d;
    for (std::size_t i = 0; i < c.eq_matrix().rows(); ++i) {
      e.push_row(concat(c.eq_matrix()[i], Vec{0}));
      d.push_back(c.eq_rhs()[i]);
    }
    Vec r = sub(sub(bp.y, obj.fp * p), obj.c);
    const Matrix& ak = k.cone().halfspaces().ineq_matrix();
    for (std::size_t i = 0; i < ak.rows(); ++i) {
      a.push_row(concat(neg(obj.fx.transpose_times(ak[i])), Vec{1}));
      b.push_back(-dot(ak[i], r));
    }
    a.push_row(concat(zeros(n), Vec{1}));
    b.push_back(1);
    lp::Result res = lp::maximize(unit(n + 1, n), a, b, e, d);
    if (res.status == lp::Status::Optimal && sgn(res.value) > 0)
      not_efficient(Vec(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(n)), "weak");
    return bp;
  }
  // Proper: ∃ w with ⟨w,k⟩ ≥ 1 on extreme rays of K and −Fxᵀw ∈ N(x̄, C(p̄)).
  const std::size_t ny = pr.dims.y;
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < c.ineq_matrix().rows(); ++i)
    if (dot(c.ineq_matrix()[i], x) == c.ineq_rhs()[i]) active.push_back(i);
  const std::size_t m = active.size(), r = c.eq_matrix().rows();
  const std::size_t nv = ny + m + r;
  Matrix a(nv), e(nv);
  Vec b, d;
  for (const auto& ray : k.extreme_rays()) {
    Vec row = zeros(nv);
    for (std::size_t i = 0; i < ny; ++i) row[i] = -ray[i];
    a.push_row(std::move(row));
    b.push_back(-1);
  }
  for (std::size_t j = 0; j < m; ++j) {
    Vec row = zeros(nv);
    row[ny + j] = -1;
    a.push_row(std::move(row));
    b.push_back(0);
  }
  for (std::size_t col = 0; col < pr.dims.x; ++col) {
    Vec row = zeros(nv);
    for (std::size_t i = 0; i < ny; ++i) row[i] = obj.fx(i, col);
    for (std::size_t j = 0; j < m; ++j) row[ny + j] = c.ineq_matrix()[active[j]][col];
    for (std::size_t j = 0; j < r; ++j) row[ny + m + j] = c.eq_matrix()[j][col];
    e.push_row(std::move(row));
    d.push_back(0);
  }
  if (!lp::feasible_point(a, b, e, d)) {
    // Report a dominating point when one exists, else the plain failure.
    try {
      check_exact(pr, p, x, Variant::Min);
    } catch (const Error& err) {
      throw Error(ErrorCode::NotEfficient, std::string("proper ") + err.what());
    }
    throw Error(ErrorCode::NotEfficient, "proper efficiency fails: no strictly positive weight supports x");
  }
  return bp;
}

BasePoint check_numeric(const ParametricProblem& pr, const Vec& p, const Vec& x) {
  DVec pd = dvec(p), xd = dvec(x);
  if (!is_feasible(pr, pd, xd, 1e-9)) throw Error(ErrorCode::InfeasiblePoint, "x = " + format_vec(x));
  BasePoint bp{p, x, evaluate_objective(pr, p, x), false};
  DVec y = evaluate_objective(pr, std::span<const double>(pd), std::span<const double>(xd));
  Vec e = pr.cone.dual_interior_point();
  DVec w = to_doubles(e);
  auto phi = [&](const DVec& z) {
    DVec fz = evaluate_objective(pr, std::span<const double>(pd), std::span<const double>(z));
    double s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * fz[i];
    return s;
  };
  auto ok = [&](const DVec& z) {
    if (!is_feasible(pr, pd, z)) return false;
    DVec fz = evaluate_objective(pr, std::span<const double>(pd), std::span<const double>(z));
    DVec diff(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) diff[i] = y[i] - fz[i];
    return in_cone_d(pr.cone.cone(), diff, 1e-12);
  };
  DVec best = detail::pattern_search(phi, ok, xd, 0.5, 1e-9, 100000);
  if (phi(best) < phi(xd) - 1e-7)
    throw Error(ErrorCode::NotEfficient, "dominating x ≈ " + format_dvec(best));
  return bp;
}

}  // namespace

BasePoint check_solution_point(const ParametricProblem& pr, const Vec& p, const Vec& x,
                               Variant variant) {
  expect_size(p.size(), pr.dims.p, "base p");
  expect_size(x.size(), pr.dims.x, "base x");
  if (pr.exact_path()) return check_exact(pr, p, x, variant);
  return check_numeric(pr, p, x);
}

// ---- validation ----

bool is_psd(Matrix m) {
  const std::size_t n = m.rows();
  std::vector<bool> alive(n, true);
  for (;;) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i)
      if (alive[i] && sgn(m(i, i)) > 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (alive[j] && sgn(m(i, j)) != 0) return false;
      }
      return true;
    }
    alive[piv] = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i] || sgn(m(i, piv)) == 0) continue;
      Scalar f = m(i, piv) / m(piv, piv);
      for (std::size_t j = 0; j < n; ++j)
        if (alive[j]) m(i, j) -= f * m(piv, j);
    }
  }
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

bool midpoint_convexity_holds(const ParametricProblem& pr, const Vec& p1, const Vec& x1,
                              const Vec& p2, const Vec& x2) {
  const Scalar half(1, 2);
  Vec pm = scale(half, add(p1, p2));
  Vec xm = scale(half, add(x1, x2));
  Vec ym = scale(half, add(evaluate_objective(pr, p1, x1), evaluate_objective(pr, p2, x2)));
  if (pr.exact_path()) {
    if (feasible_polyhedron(pr, pm).contains(xm) &&
        pr.cone.contains(sub(ym, evaluate_objective(pr, pm, xm))))
      return true;
    return !dominated_region(pr, pm, ym, pr.cone.cone()).is_empty();
  }
  DVec pd = to_doubles(pm), xd = to_doubles(xm);
  if (!is_feasible(pr, pd, xd, 1e-9)) return false;
  DVec fm = evaluate_objective(pr, std::span<const double>(pd), std::span<const double>(xd));
  DVec diff(fm.size());
  for (std::size_t i = 0; i < fm.size(); ++i) diff[i] = ym[i].get_d() - fm[i];
  return in_cone_d(pr.cone.cone(), diff, 1e-9);
}

ValidationReport validate(const ParametricProblem& pr) {
  ValidationReport rep;
  {
    ValidationCheck c{"cone_pointed", pr.cone.cone().is_pointed(), ""};
    c.detail = pr.cone.is_solid() ? "solid" : "not solid (weak variant unavailable)";
    rep.checks.push_back(c);
  }
  if (pr.cone_tilde) {
    ValidationCheck c{"cone_tilde_inside", true, "generators interior to K"};
    for (const auto& r : pr.cone_tilde->extreme_rays())
      if (!pr.cone.interior_contains(r)) {
        c.passed = false;
        c.detail = "generator " + format_vec(r) + " not in int K";
      }
    rep.checks.push_back(c);
  }

  // K-convexity of f through the extreme rays of K* (and ± its lines).
  std::vector<Vec> dual_dirs = pr.cone.dual().rays();
  for (const auto& l : pr.cone.dual().lines()) {
    dual_dirs.push_back(l);
    dual_dirs.push_back(neg(l));
  }
  ValidationCheck kc{"objective_k_convex", true, ""};
  if (pr.affine_objective()) {
    kc.detail = "affine";
  } else if (const auto* q = std::get_if<QuadraticObjective>(&pr.objective)) {
    kc.detail = "exact PSD test per extreme ray of K*";
    const std::size_t n = pr.dims.p + pr.dims.x;
    for (const auto& w : dual_dirs) {
      Matrix m(n, n);
      for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t s = 0; s < n; ++s) m(r, s) += w[i] * q->q[i](r, s);
      if (!is_psd(m)) {
        kc.passed = false;
        kc.detail = "<w,f> not convex for w = " + format_vec(w);
        rep.convexity_witness = w;
        break;
      }
    }
  } else {
    kc.detail = "sampled midpoint test per extreme ray of K*";
    std::mt19937_64 rng(0x5EED);
    std::uniform_real_distribution<double> u(-2, 2);
    const std::size_t n = pr.dims.p + pr.dims.x;
    for (const auto& w : dual_dirs) {
      DVec wd = to_doubles(w);
      auto phi = [&](const DVec& z) {
        DVec f = evaluate_objective(pr, std::span<const double>(z.data(), pr.dims.p),
                                    std::span<const double>(z.data() + pr.dims.p, pr.dims.x));
        double s = 0;
        for (std::size_t i = 0; i < f.size(); ++i) s += wd[i] * f[i];
        return s;
      };
      for (int trial = 0; trial < 200 && kc.passed; ++trial) {
        DVec a(n), b(n), m(n);
        for (std::size_t i = 0; i < n; ++i) {
          a[i] = u(rng);
          b[i] = u(rng);
          m[i] = (a[i] + b[i]) / 2;
        }
        double lhs = phi(m), rhs = (phi(a) + phi(b)) / 2;
        if (lhs > rhs + 1e-9 * (1 + std::abs(rhs))) {
          kc.passed = false;
          kc.detail = "<w,f> fails midpoint convexity for w = " + format_vec(w);
          rep.convexity_witness = w;
        }
      }
      if (!kc.passed) break;
    }
  }
  rep.checks.push_back(kc);

  ValidationCheck cc{"constraints_convex", true, ""};
  if (const auto* s = std::get_if<SemiInfiniteSystem>(&pr.constraints)) {
    cc.detail = "affine in (p,x) for every t";
    for (const auto& f : s->families) {
      try {
        f.reduction_points();
      } catch (const Error& e) {
        cc.passed = false;
        cc.detail = e.what();
      }
    }
  } else if (std::holds_alternative<AffineSystem>(pr.constraints)) {
    cc.detail = "affine";
  } else {
    cc.detail = "shipped convex builtins";
  }
  rep.checks.push_back(cc);

  // Midpoint smoke test of epi F on a few deterministic parameter pairs.
  ValidationCheck mc{"epi_midpoint", true, ""};
  if (kc.passed && cc.passed) {
    std::mt19937_64 rng(0x5EED);
    std::uniform_int_distribution<int> u(-8, 8);
    std::size_t tested = 0;
    for (int trial = 0; trial < 8; ++trial) {
      Vec p1(pr.dims.p), p2(pr.dims.p);
      for (std::size_t i = 0; i < pr.dims.p; ++i) {
        p1[i] = Scalar(u(rng), 4);
        p2[i] = Scalar(u(rng), 4);
      }
      std::optional<Vec> x1, x2;
      if (pr.polyhedral_constraints()) {
        x1 = feasible_polyhedron(pr, p1).some_point();
        x2 = feasible_polyhedron(pr, p2).some_point();
      } else {
        if (auto d1 = feasible_point(pr, to_doubles(p1))) x1 = from_doubles(*d1);
        if (auto d2 = feasible_point(pr, to_doubles(p2))) x2 = from_doubles(*d2);
      }
      if (!x1 || !x2) continue;
      ++tested;
      if (!midpoint_convexity_holds(pr, p1, *x1, p2, *x2)) {
        mc.passed = false;
        mc.detail = "violated at p1 = " + format_vec(p1) + ", p2 = " + format_vec(p2);
        break;
      }
    }
    if (mc.passed) mc.detail = std::to_string(tested) + " pairs";
  } else {
    mc.detail = "skipped";
  }
  rep.checks.push_back(mc);
  return rep;
}

}  // namespace coderiv
