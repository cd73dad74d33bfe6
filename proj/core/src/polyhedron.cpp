#include "coderiv/polyhedron.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>

#include "coderiv/lp.hpp"

namespace coderiv {

namespace {

struct Row {
  Vec a;
  Scalar b;
  friend bool operator<(const Row& x, const Row& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }
  friend bool operator==(const Row&, const Row&) = default;
};

// Positive rescaling of (a, b) to a primitive integer row.
Row normalize(const Vec& a, const Scalar& b) {
  Vec ab = a;
  ab.push_back(b);
  ab = primitive(ab);
  Scalar nb = ab.back();
  ab.pop_back();
  return {std::move(ab), std::move(nb)};
}

}  // namespace

HPolyhedron::HPolyhedron(std::size_t dim) : dim_(dim), a_(dim), e_(dim) {}

HPolyhedron::HPolyhedron(Matrix ineq, Vec ineq_rhs, Matrix eq, Vec eq_rhs)
    : dim_(std::max(ineq.cols(), eq.cols())),
      a_(std::move(ineq)),
      b_(std::move(ineq_rhs)),
      e_(std::move(eq)),
      d_(std::move(eq_rhs)) {
  if (a_.rows() == 0) a_ = Matrix(dim_);
  if (e_.rows() == 0) e_ = Matrix(dim_);
  assert(a_.cols() == dim_ && e_.cols() == dim_);
  assert(b_.size() == a_.rows() && d_.size() == e_.rows());
}

HPolyhedron HPolyhedron::empty_set(std::size_t dim) {
  HPolyhedron p(dim);
  p.add_inequality(zeros(dim), Scalar(-1));
  return p;
}

HPolyhedron HPolyhedron::point(const Vec& x) {
  HPolyhedron p(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) p.add_equality(unit(x.size(), i), x[i]);
  return p;
}

void HPolyhedron::add_inequality(Vec row, Scalar rhs) {
  a_.push_row(std::move(row));
  b_.push_back(std::move(rhs));
}

void HPolyhedron::add_equality(Vec row, Scalar rhs) {
  e_.push_row(std::move(row));
  d_.push_back(std::move(rhs));
}

bool HPolyhedron::contains(std::span<const Scalar> x) const {
  assert(x.size() == dim_);
  for (std::size_t i = 0; i < a_.rows(); ++i)
    if (dot(a_[i], x) > b_[i]) return false;
  for (std::size_t i = 0; i < e_.rows(); ++i)
    if (dot(e_[i], x) != d_[i]) return false;
  return true;
}

std::optional<Vec> HPolyhedron::some_point() const {
  for (std::size_t i = 0; i < a_.rows(); ++i)
    if (is_zero(a_[i]) && sgn(b_[i]) < 0) return std::nullopt;
  return lp::feasible_point(a_, b_, e_, d_);
}

bool HPolyhedron::is_empty() const { return !some_point().has_value(); }

bool HPolyhedron::is_homogeneous() const {
  return std::all_of(b_.begin(), b_.end(), [](const Scalar& s) { return sgn(s) == 0; }) &&
         std::all_of(d_.begin(), d_.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

HPolyhedron HPolyhedron::intersect(const HPolyhedron& other) const {
  assert(other.dim_ == dim_);
  HPolyhedron out = *this;
  for (std::size_t i = 0; i < other.a_.rows(); ++i) out.add_inequality(other.a_[i], other.b_[i]);
  for (std::size_t i = 0; i < other.e_.rows(); ++i) out.add_equality(other.e_[i], other.d_[i]);
  return out;
}

HPolyhedron HPolyhedron::substitute(std::span<const std::size_t> coords,
                                    std::span<const Scalar> values) const {
  std::vector<bool> fixed(dim_, false);
  for (auto c : coords) fixed[c] = true;
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < dim_; ++j)
    if (!fixed[j]) rest.push_back(j);
  auto reduce = [&](const Vec& row, const Scalar& rhs, Vec& out_row, Scalar& out_rhs) {
    out_rhs = rhs;
    for (std::size_t k = 0; k < coords.size(); ++k) out_rhs -= row[coords[k]] * values[k];
    out_row.clear();
    for (auto j : rest) out_row.push_back(row[j]);
  };
  HPolyhedron out(rest.size());
  Vec r;
  Scalar s;
  for (std::size_t i = 0; i < a_.rows(); ++i) {
    reduce(a_[i], b_[i], r, s);
    out.add_inequality(r, s);
  }
  for (std::size_t i = 0; i < e_.rows(); ++i) {
    reduce(e_[i], d_[i], r, s);
    out.add_equality(r, s);
  }
  return out;
}

HPolyhedron HPolyhedron::translate(std::span<const Scalar> shift) const {
  HPolyhedron out = *this;
  for (std::size_t i = 0; i < a_.rows(); ++i) out.b_[i] += dot(a_[i], shift);
  for (std::size_t i = 0; i < e_.rows(); ++i) out.d_[i] += dot(e_[i], shift);
  return out;
}

HPolyhedron HPolyhedron::scaled(const Scalar& t) const {
  assert(sgn(t) > 0);
  HPolyhedron out = *this;
  for (auto& x : out.b_) x *= t;
  for (auto& x : out.d_) x *= t;
  return out;
}

HPolyhedron HPolyhedron::linear_image(const Matrix& m) const {
  PolyGenerators g = generators();
  PolyGenerators img;
  img.dim = m.rows();
  if (g.empty()) return empty_set(img.dim);
  for (const auto& p : g.points) img.points.push_back(m * p);
  for (const auto& r : g.rays) img.rays.push_back(m * r);
  for (const auto& l : g.lines) img.lines.push_back(m * l);
  return from_generators(img);
}

PolyGenerators HPolyhedron::generators() const {
  const std::size_t n = dim_;
  Matrix hin(n + 1), heq(n + 1);
  for (std::size_t i = 0; i < a_.rows(); ++i) {
    Vec row = a_[i];
    row.push_back(-b_[i]);
    hin.push_row(std::move(row));
  }
  Vec t_row = zeros(n + 1);
  t_row[n] = -1;
  hin.push_row(std::move(t_row));
  for (std::size_t i = 0; i < e_.rows(); ++i) {
    Vec row = e_[i];
    row.push_back(-d_[i]);
    heq.push_row(std::move(row));
  }
  ConeGenerators cg = cone_generators(hin, heq);
  PolyGenerators out;
  out.dim = n;
  for (const auto& r : cg.rays) {
    Vec x(r.begin(), r.end() - 1);
    if (sgn(r[n]) > 0)
      out.points.push_back(scale(1 / r[n], x));
    else
      out.rays.push_back(std::move(x));
  }
  for (const auto& l : cg.lines) {
    assert(sgn(l[n]) == 0);
    out.lines.emplace_back(l.begin(), l.end() - 1);
  }
  if (out.points.empty()) {
    out.rays.clear();
    out.lines.clear();
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

ConeGenerators HPolyhedron::recession_generators() const { return cone_generators(a_, e_); }

HPolyhedron HPolyhedron::from_generators(const PolyGenerators& gens) {
  const std::size_t n = gens.dim;
  if (gens.points.empty()) return empty_set(n);
  std::vector<Vec> rays, lines;
  for (const auto& p : gens.points) {
    Vec v = p;
    v.push_back(1);
    rays.push_back(std::move(v));
  }
  for (const auto& r : gens.rays) {
    Vec v = r;
    v.push_back(0);
    rays.push_back(std::move(v));
  }
  for (const auto& l : gens.lines) {
    Vec v = l;
    v.push_back(0);
    lines.push_back(std::move(v));
  }
  ConeGenerators cg = canonical_generators(n + 1, std::move(rays), std::move(lines));
  ConeHalfspaces hs = cone_halfspaces(cg);
  HPolyhedron out(n);
  for (std::size_t i = 0; i < hs.ineq.rows(); ++i) {
    const Vec& r = hs.ineq[i];
    Vec a(r.begin(), r.end() - 1);
    if (is_zero(a)) continue;  // the homogenizing row t ≥ 0
    out.add_inequality(std::move(a), -r[n]);
  }
  for (std::size_t i = 0; i < hs.eq.rows(); ++i) {
    const Vec& r = hs.eq[i];
    Vec a(r.begin(), r.end() - 1);
    if (is_zero(a)) continue;
    out.add_equality(std::move(a), -r[n]);
  }
  return out;
}

HPolyhedron remove_redundancy(const HPolyhedron& poly) {
  const std::size_t n = poly.dim();
  std::vector<Row> rows;
  for (std::size_t i = 0; i < poly.ineq_matrix().rows(); ++i)
    rows.push_back({poly.ineq_matrix()[i], poly.ineq_rhs()[i]});
  std::vector<bool> alive(rows.size(), true);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Matrix a(n);
    Vec b;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j == i || !alive[j]) continue;
      a.push_row(rows[j].a);
      b.push_back(rows[j].b);
    }
    lp::Result r = lp::maximize(rows[i].a, a, b, poly.eq_matrix(), poly.eq_rhs());
    if (r.status == lp::Status::Infeasible) return HPolyhedron::empty_set(n);
    if (r.status == lp::Status::Optimal && r.value <= rows[i].b) alive[i] = false;
  }
  HPolyhedron out(n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (alive[i]) out.add_inequality(rows[i].a, rows[i].b);
  for (std::size_t i = 0; i < poly.eq_matrix().rows(); ++i)
    out.add_equality(poly.eq_matrix()[i], poly.eq_rhs()[i]);
  return out;
}

HPolyhedron HPolyhedron::canonical() const {
  const std::size_t n = dim_;
  auto x0 = some_point();
  if (!x0) return empty_set(n);

  // Promote implicit equalities.
  std::vector<bool> implicit(a_.rows(), false);
  for (std::size_t i = 0; i < a_.rows(); ++i) {
    if (is_zero(a_[i])) continue;
    if (dot(a_[i], *x0) < b_[i]) continue;
    lp::Result r = lp::minimize(a_[i], a_, b_, e_, d_);
    if (r.status == lp::Status::Optimal && r.value == b_[i]) implicit[i] = true;
  }

  Matrix aug(n + 1);
  for (std::size_t i = 0; i < e_.rows(); ++i) {
    Vec row = e_[i];
    row.push_back(d_[i]);
    aug.push_row(std::move(row));
  }
  for (std::size_t i = 0; i < a_.rows(); ++i) {
    if (!implicit[i]) continue;
    Vec row = a_[i];
    row.push_back(b_[i]);
    aug.push_row(std::move(row));
  }
  auto pivots = rref(aug);
  HPolyhedron out(n);
  std::vector<Vec> eq_rows;
  for (std::size_t k = 0; k < pivots.size(); ++k) eq_rows.push_back(aug[k]);

  std::set<Row> ineq;
  for (std::size_t i = 0; i < a_.rows(); ++i) {
    if (implicit[i]) continue;
    Vec row = a_[i];
    row.push_back(b_[i]);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      Scalar f = row[pivots[k]];
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j <= n; ++j) row[j] -= f * eq_rows[k][j];
    }
    Vec a(row.begin(), row.end() - 1);
    if (is_zero(a)) continue;
    ineq.insert(normalize(a, row.back()));
  }

  HPolyhedron reduced(n);
  for (const auto& r : ineq) reduced.add_inequality(r.a, r.b);
  for (const auto& e : eq_rows) {
    Vec p = primitive(e);
    Scalar rhs = p.back();
    p.pop_back();
    reduced.add_equality(std::move(p), std::move(rhs));
  }
  HPolyhedron pruned = remove_redundancy(reduced);
  // remove_redundancy preserves order, so rows stay lexicographically sorted.
  return pruned;
}

bool lp_feasible(const HPolyhedron& poly) { return !poly.is_empty(); }

bool is_subset(const HPolyhedron& inner, const HPolyhedron& outer) {
  assert(inner.dim() == outer.dim());
  PolyGenerators g = inner.generators();
  if (g.empty()) return true;
  for (const auto& p : g.points)
    if (!outer.contains(p)) return false;
  const Matrix& a = outer.ineq_matrix();
  const Matrix& e = outer.eq_matrix();
  auto in_recession = [&](const Vec& r, bool both_signs) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      Scalar v = dot(a[i], r);
      if (sgn(v) > 0 || (both_signs && sgn(v) < 0)) return false;
    }
    for (std::size_t i = 0; i < e.rows(); ++i)
      if (sgn(dot(e[i], r)) != 0) return false;
    return true;
  };
  for (const auto& r : g.rays)
    if (!in_recession(r, false)) return false;
  for (const auto& l : g.lines)
    if (!in_recession(l, true)) return false;
  return true;
}

bool same_set(const HPolyhedron& p, const HPolyhedron& q) {
  return p.dim() == q.dim() && is_subset(p, q) && is_subset(q, p);
}

HPolyhedron project(const HPolyhedron& poly, std::span<const std::size_t> keep,
                    bool remove_redundant) {
  const std::size_t n = poly.dim();
  std::vector<bool> kept(n, false);
  for (auto k : keep) kept[k] = true;

  std::vector<Row> ineq, eq;
  for (std::size_t i = 0; i < poly.ineq_matrix().rows(); ++i)
    ineq.push_back({poly.ineq_matrix()[i], poly.ineq_rhs()[i]});
  for (std::size_t i = 0; i < poly.eq_matrix().rows(); ++i)
    eq.push_back({poly.eq_matrix()[i], poly.eq_rhs()[i]});

  std::vector<std::size_t> todo;
  for (std::size_t j = 0; j < n; ++j)
    if (!kept[j]) todo.push_back(j);

  auto tidy = [&]() -> bool {
    std::set<Row> uniq;
    for (auto& r : ineq) {
      if (is_zero(r.a)) {
        if (sgn(r.b) < 0) return false;
        continue;
      }
      uniq.insert(normalize(r.a, r.b));
    }
    ineq.assign(uniq.begin(), uniq.end());
    std::vector<Row> eqs;
    for (auto& r : eq) {
      if (is_zero(r.a)) {
        if (sgn(r.b) != 0) return false;
        continue;
      }
      eqs.push_back(std::move(r));
    }
    eq = std::move(eqs);
    return true;
  };

  while (!todo.empty()) {
    if (!tidy()) return HPolyhedron::empty_set(keep.size());

    // Prefer a variable with an equality; otherwise the cheapest FM step.
    std::size_t pick = todo.size();
    std::size_t eq_row = eq.size();
    for (std::size_t t = 0; t < todo.size() && eq_row == eq.size(); ++t)
      for (std::size_t i = 0; i < eq.size(); ++i)
        if (sgn(eq[i].a[todo[t]]) != 0) {
          pick = t;
          eq_row = i;
          break;
        }
    if (pick == todo.size()) {
      std::size_t best_cost = 0;
      for (std::size_t t = 0; t < todo.size(); ++t) {
        std::size_t np = 0, nn = 0;
        for (const auto& r : ineq) {
          int s = sgn(r.a[todo[t]]);
          np += s > 0;
          nn += s < 0;
        }
        std::size_t cost = np * nn;
        if (pick == todo.size() || cost < best_cost) {
          pick = t;
          best_cost = cost;
        }
      }
    }
    const std::size_t j = todo[pick];
    todo.erase(todo.begin() + static_cast<std::ptrdiff_t>(pick));

    if (eq_row != eq.size()) {
      Row piv = eq[eq_row];
      eq.erase(eq.begin() + static_cast<std::ptrdiff_t>(eq_row));
      auto eliminate = [&](Row& r) {
        Scalar f = r.a[j] / piv.a[j];
        if (sgn(f) == 0) return;
        for (std::size_t k = 0; k < n; ++k) r.a[k] -= f * piv.a[k];
        r.b -= f * piv.b;
      };
      for (auto& r : ineq) eliminate(r);
      for (auto& r : eq) eliminate(r);
      continue;
    }

    std::vector<Row> pos, negs, next;
    for (auto& r : ineq) {
      int s = sgn(r.a[j]);
      if (s > 0)
        pos.push_back(std::move(r));
      else if (s < 0)
        negs.push_back(std::move(r));
      else
        next.push_back(std::move(r));
    }
    for (const auto& p : pos)
      for (const auto& q : negs) {
        Scalar cp = -q.a[j];
        Scalar cq = p.a[j];
        Row r;
        r.a = add(scale(cp, p.a), scale(cq, q.a));
        r.a[j] = 0;
        r.b = cp * p.b + cq * q.b;
        next.push_back(std::move(r));
      }
    ineq = std::move(next);
    if (!tidy()) return HPolyhedron::empty_set(keep.size());
    if (ineq.size() > 8 * n + 16) {
      HPolyhedron tmp(n);
      for (const auto& r : ineq) tmp.add_inequality(r.a, r.b);
      for (const auto& r : eq) tmp.add_equality(r.a, r.b);
      tmp = remove_redundancy(tmp);
      if (tmp.ineq_matrix().rows() == 1 && is_zero(tmp.ineq_matrix()[0]) &&
          sgn(tmp.ineq_rhs()[0]) < 0)
        return HPolyhedron::empty_set(keep.size());
      ineq.clear();
      for (std::size_t i = 0; i < tmp.ineq_matrix().rows(); ++i)
        ineq.push_back({tmp.ineq_matrix()[i], tmp.ineq_rhs()[i]});
    }
  }
  if (!tidy()) return HPolyhedron::empty_set(keep.size());

  HPolyhedron out(keep.size());
  auto select = [&](const Vec& a) {
    Vec r;
    r.reserve(keep.size());
    for (auto k : keep) r.push_back(a[k]);
    return r;
  };
  for (const auto& r : ineq) out.add_inequality(select(r.a), r.b);
  for (const auto& r : eq) out.add_equality(select(r.a), r.b);
  return remove_redundant ? remove_redundancy(out) : out;
}

HPolyhedron minkowski_sum(const HPolyhedron& p, const HPolyhedron& q) {
  assert(p.dim() == q.dim());
  PolyGenerators gp = p.generators();
  PolyGenerators gq = q.generators();
  if (gp.empty() || gq.empty()) return HPolyhedron::empty_set(p.dim());
  PolyGenerators s;
  s.dim = p.dim();
  for (const auto& x : gp.points)
    for (const auto& y : gq.points) s.points.push_back(add(x, y));
  s.rays = gp.rays;
  s.rays.insert(s.rays.end(), gq.rays.begin(), gq.rays.end());
  s.lines = gp.lines;
  s.lines.insert(s.lines.end(), gq.lines.begin(), gq.lines.end());
  return HPolyhedron::from_generators(s);
}

HPolyhedron minkowski_difference(const HPolyhedron& p, const HPolyhedron& q) {
  Matrix minus(q.dim(), q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) minus(i, i) = -1;
  return minkowski_sum(p, q.linear_image(minus));
}

HPolyhedron product(const HPolyhedron& p, const HPolyhedron& q) {
  const std::size_t n = p.dim() + q.dim();
  HPolyhedron out(n);
  Vec zp = zeros(p.dim()), zq = zeros(q.dim());
  for (std::size_t i = 0; i < p.ineq_matrix().rows(); ++i)
    out.add_inequality(concat(p.ineq_matrix()[i], zq), p.ineq_rhs()[i]);
  for (std::size_t i = 0; i < q.ineq_matrix().rows(); ++i)
    out.add_inequality(concat(zp, q.ineq_matrix()[i]), q.ineq_rhs()[i]);
  for (std::size_t i = 0; i < p.eq_matrix().rows(); ++i)
    out.add_equality(concat(p.eq_matrix()[i], zq), p.eq_rhs()[i]);
  for (std::size_t i = 0; i < q.eq_matrix().rows(); ++i)
    out.add_equality(concat(zp, q.eq_matrix()[i]), q.eq_rhs()[i]);
  return out;
}

}  // namespace coderiv
