#include "coderiv/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "coderiv/error.hpp"
#include "coderiv/lp.hpp"
#include "detail/search.hpp"

namespace coderiv {

std::string_view to_string(EfficiencyKind kind) {
  switch (kind) {
    case EfficiencyKind::Min: return "min";
    case EfficiencyKind::WMin: return "wmin";
    case EfficiencyKind::PrMin: return "prmin";
  }
  return "min";
}

namespace {

// Unique points with the index of their first occurrence.
std::vector<std::pair<Vec, std::size_t>> unique_points(const PointCloud& cloud) {
  if (cloud.points.empty()) throw Error(ErrorCode::EmptyCloud, "point cloud is empty");
  std::map<Vec, std::size_t> first;
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    if (cloud.points[i].size() != cloud.dim)
      throw Error(ErrorCode::DimensionMismatch, "cloud point " + std::to_string(i));
    first.emplace(cloud.points[i], i);
  }
  std::vector<std::pair<Vec, std::size_t>> out(first.begin(), first.end());
  return out;
}

// Unique points sorted by ⟨e,a⟩ for e ∈ int K*: a dominator always scores lower.
std::vector<std::pair<Vec, std::size_t>> by_score(const PointCloud& cloud, const OrderCone& k,
                                                  std::vector<Scalar>& scores) {
  auto pts = unique_points(cloud);
  if (k.dim() != cloud.dim) throw Error(ErrorCode::DimensionMismatch, "cone vs cloud dimension");
  Vec e = k.dual_interior_point();
  std::vector<std::pair<Scalar, std::size_t>> order;
  for (std::size_t i = 0; i < pts.size(); ++i) order.emplace_back(dot(e, pts[i].first), i);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Vec, std::size_t>> out;
  scores.clear();
  for (const auto& [s, i] : order) {
    out.push_back(pts[i]);
    scores.push_back(s);
  }
  return out;
}

// Positions (into the sorted list) of the Min points.
std::vector<std::size_t> minimal_positions(const std::vector<std::pair<Vec, std::size_t>>& pts,
                                           const std::vector<Scalar>& scores, const OrderCone& k) {
  std::vector<std::size_t> minimal;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (auto j : minimal) {
      if (!(scores[j] < scores[i])) break;
      if (k.contains(sub(pts[i].first, pts[j].first))) {
        dominated = true;
        break;
      }
    }
    if (!dominated) minimal.push_back(i);
  }
  return minimal;
}

std::vector<std::size_t> sorted_indices(const std::vector<std::pair<Vec, std::size_t>>& pts,
                                        const std::vector<std::size_t>& pos) {
  std::vector<std::size_t> out;
  for (auto i : pos) out.push_back(pts[i].second);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

EfficiencyResult min_points(const PointCloud& cloud, const OrderCone& k) {
  std::vector<Scalar> scores;
  auto pts = by_score(cloud, k, scores);
  return {EfficiencyKind::Min, sorted_indices(pts, minimal_positions(pts, scores, k)), {}};
}

EfficiencyResult wmin_points(const PointCloud& cloud, const OrderCone& k) {
  if (!k.is_solid()) throw Error(ErrorCode::ConeNotSolid, "weak efficiency needs int K nonempty");
  std::vector<Scalar> scores;
  auto pts = by_score(cloud, k, scores);
  auto minimal = minimal_positions(pts, scores, k);
  // Every point is dominated by some Min point, so strict domination by a
  // Min point is the only way to fail.
  std::vector<std::size_t> weak;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool strictly = false;
    for (auto j : minimal)
      if (k.interior_contains(sub(pts[i].first, pts[j].first))) {
        strictly = true;
        break;
      }
    if (!strictly) weak.push_back(i);
  }
  return {EfficiencyKind::WMin, sorted_indices(pts, weak), {}};
}

EfficiencyResult prmin_points(const PointCloud& cloud, const OrderCone& k) {
  if (!k.dual_is_solid()) throw Error(ErrorCode::ConeDegenerate, "int K* is empty");
  std::vector<Scalar> scores;
  auto pts = by_score(cloud, k, scores);
  auto minimal = minimal_positions(pts, scores, k);

  std::vector<Vec> candidates{k.dual_interior_point()};
  for (auto& w : weight_grid(k)) candidates.push_back(std::move(w));

  auto supports = [&](const Vec& w, std::size_t i) {
    Scalar s = dot(w, pts[i].first);
    for (const auto& q : pts)
      if (dot(w, q.first) < s) return false;
    return true;
  };

  std::vector<std::pair<std::size_t, Vec>> certified;
  for (auto i : minimal) {
    std::optional<Vec> found;
    for (const auto& w : candidates)
      if (k.dual_interior_contains(w) && supports(w, i)) {
        found = w;
        break;
      }
    if (!found) {
      // LP: ⟨w,k_r⟩ ≥ 1 on extreme rays of K, ⟨w, a_i − a_j⟩ ≤ 0 for all j.
      Matrix a(cloud.dim);
      Vec b;
      for (const auto& r : k.extreme_rays()) {
        a.push_row(neg(r));
        b.push_back(-1);
      }
      for (const auto& q : pts) {
        a.push_row(sub(pts[i].first, q.first));
        b.push_back(0);
      }
      found = lp::feasible_point(a, b, Matrix(cloud.dim), {});
    }
    if (found) certified.emplace_back(pts[i].second, primitive(*found));
  }
  std::sort(certified.begin(), certified.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  EfficiencyResult res{EfficiencyKind::PrMin, {}, {}};
  for (auto& [i, w] : certified) {
    res.indices.push_back(i);
    res.weights.push_back(std::move(w));
  }
  return res;
}

std::vector<Vec> weight_grid(const OrderCone& k, std::size_t count, bool boundary) {
  std::vector<Vec> gens = k.dual().rays();
  for (const auto& l : k.dual().lines()) {
    gens.push_back(l);
    gens.push_back(neg(l));
  }
  const std::size_t m = gens.size();
  const std::size_t n = k.dim();
  std::vector<Vec> raw;
  auto combine = [&](const std::vector<std::size_t>& parts, std::size_t total) {
    Vec w = zeros(n);
    for (std::size_t g = 0; g < m; ++g)
      if (parts[g]) w = add(w, scale(Scalar(parts[g], total), gens[g]));
    raw.push_back(std::move(w));
  };
  if (m == 1) {
    raw.push_back(gens[0]);
  } else if (m == 2) {
    const std::size_t total = count + 1;
    if (boundary) combine({total, 0}, total);
    for (std::size_t i = 1; i <= count; ++i) combine({total - i, i}, total);
    if (boundary) combine({0, total}, total);
  } else if (m > 2) {
    const std::size_t total = m + 3;
    std::vector<std::size_t> parts(m, 0);
    // Enumerate compositions of total into m parts.
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t g, std::size_t left) {
      if (g + 1 == m) {
        parts[g] = left;
        bool interior = std::all_of(parts.begin(), parts.end(), [](std::size_t v) { return v > 0; });
        if (boundary || interior) combine(parts, total);
        return;
      }
      for (std::size_t v = 0; v <= left; ++v) {
        parts[g] = v;
        rec(g + 1, left - v);
      }
    };
    rec(0, total);
  }
  std::vector<Vec> out;
  std::set<Vec> seen;
  for (auto& w : raw) {
    if (is_zero(w)) continue;
    Scalar s = 0;
    for (const auto& v : w) s += v;
    Vec nw = sgn(s) > 0 ? scale(1 / s, w) : primitive(w);
    if (seen.insert(nw).second) out.push_back(std::move(nw));
  }
  return out;
}

namespace {

FrontierSample exact_frontier(const ParametricProblem& pr, const Vec& p,
                              const std::vector<Vec>& weights) {
  HPolyhedron c = feasible_polyhedron(pr, p);
  PolyGenerators gens = c.generators();
  if (gens.empty()) throw Error(ErrorCode::Infeasible, "C(p) is empty at p = " + format_vec(p));
  const auto& obj = std::get<AffineObjective>(pr.objective);
  FrontierSample out;
  out.cloud.dim = pr.dims.y;
  std::map<Vec, Vec> images;
  for (const auto& w : weights) {
    Vec g = obj.fx.transpose_times(w);
    bool unbounded = false;
    for (const auto& r : gens.rays)
      if (sgn(dot(g, r)) < 0) unbounded = true;
    for (const auto& l : gens.lines)
      if (sgn(dot(g, l)) != 0) unbounded = true;
    if (unbounded) {
      out.unbounded.push_back(w);
      continue;
    }
    std::optional<Scalar> best;
    for (const auto& x : gens.points) {
      Scalar v = dot(g, x);
      if (!best || v < *best) best = v;
    }
    for (const auto& x : gens.points)
      if (dot(g, x) == *best) images.emplace(evaluate_objective(pr, p, x), x);
  }
  for (auto& [y, x] : images) {
    out.cloud.points.push_back(y);
    out.preimages.push_back(x);
  }
  return out;
}

double round9(double v) { return std::round(v * 1e9) / 1e9; }

FrontierSample numeric_frontier(const ParametricProblem& pr, const Vec& p,
                                const std::vector<Vec>& weights) {
  DVec pd = to_doubles(p);
  auto start = feasible_point(pr, pd);
  if (!start) throw Error(ErrorCode::Infeasible, "no feasible point at p = " + format_vec(p));
  const std::size_t nx = pr.dims.x;

  // x = x0 + N z keeps equality rows satisfied.
  std::vector<DVec> basis;
  if (pr.polyhedral_constraints()) {
    HPolyhedron c = feasible_polyhedron(pr, p);
    for (const auto& v : null_space(c.eq_matrix().rows() ? c.eq_matrix() : Matrix(nx)))
      basis.push_back(to_doubles(v));
  } else {
    for (std::size_t i = 0; i < nx; ++i) {
      DVec e(nx, 0.0);
      e[i] = 1;
      basis.push_back(e);
    }
  }
  auto lift = [&](const DVec& z) {
    DVec x = *start;
    for (std::size_t k = 0; k < basis.size(); ++k)
      for (std::size_t i = 0; i < nx; ++i) x[i] += z[k] * basis[k][i];
    return x;
  };
  const double box = 1e3;
  FrontierSample out;
  out.exact = false;
  out.cloud.dim = pr.dims.y;
  std::map<Vec, Vec> images;
  for (const auto& w : weights) {
    DVec wd = to_doubles(w);
    auto phi = [&](const DVec& z) {
      DVec x = lift(z);
      DVec f = evaluate_objective(pr, std::span<const double>(pd), std::span<const double>(x));
      double s = 0;
      for (std::size_t i = 0; i < f.size(); ++i) s += wd[i] * f[i];
      return s;
    };
    auto ok = [&](const DVec& z) {
      DVec x = lift(z);
      for (double v : x)
        if (std::abs(v) > box) return false;
      return is_feasible(pr, pd, x);
    };
    DVec z = detail::pattern_search(phi, ok, DVec(basis.size(), 0.0), 1.0, 1e-10, 200000);
    DVec x = lift(z);
    bool at_box = std::any_of(x.begin(), x.end(), [&](double v) { return std::abs(v) > box - 2; });
    if (at_box) {
      out.unbounded.push_back(w);
      continue;
    }
    for (double& v : x) v = round9(v);
    Vec xq = from_doubles(x);
    DVec y = evaluate_objective(pr, std::span<const double>(pd), std::span<const double>(x));
    for (double& v : y) v = round9(v);
    images.emplace(from_doubles(y), xq);
  }
  for (auto& [y, x] : images) {
    out.cloud.points.push_back(y);
    out.preimages.push_back(x);
  }
  return out;
}

}  // namespace

FrontierSample frontier_sample_detailed(const ParametricProblem& pr, const Vec& p,
                                        const std::vector<Vec>& weights) {
  for (const auto& w : weights)
    if (!pr.cone.dual_contains(w) || is_zero(w))
      throw Error(ErrorCode::DimensionMismatch, "weight " + format_vec(w) + " is not in K*\\{0}");
  FrontierSample out = pr.exact_path() ? exact_frontier(pr, p, weights) : numeric_frontier(pr, p, weights);
  if (!weights.empty() && out.cloud.points.empty())
    throw Error(ErrorCode::UnboundedScalarization,
                "every weight is unbounded below, e.g. w = " + format_vec(out.unbounded.front()));
  return out;
}

PointCloud frontier_sample(const ParametricProblem& pr, const Vec& p, const std::vector<Vec>& weights) {
  FrontierSample s = frontier_sample_detailed(pr, p, weights);
  if (!s.unbounded.empty())
    throw Error(ErrorCode::UnboundedScalarization,
                "scalarization unbounded below for w = " + format_vec(s.unbounded.front()));
  return s.cloud;
}

}  // namespace coderiv
