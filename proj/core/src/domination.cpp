#include "coderiv/domination.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "coderiv/error.hpp"
#include "coderiv/lp.hpp"
#include "detail/regions.hpp"
#include "detail/search.hpp"

namespace coderiv {

namespace {

std::vector<Vec> parameter_samples(const Vec& pbar, double radius, std::size_t count, std::uint64_t seed) {
  std::vector<Vec> out;
  if (count == 0) return out;
  out.push_back(pbar);
  const std::size_t n = pbar.size();
  if (n == 0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::vector<double> base = to_doubles(pbar);
  while (out.size() < count) {
    std::vector<double> dir(n);
    double norm = 0;
    for (auto& d : dir) {
      d = gauss(rng);
      norm += d * d;
    }
    norm = std::sqrt(norm);
    const double r = radius * std::pow(unif(rng), 1.0 / static_cast<double>(n));
    if (norm == 0) continue;
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = base[i] + r * dir[i] / norm;
    out.push_back(from_doubles(p));
  }
  return out;
}

// y ∈ conv(cloud) + K, decided by an LP in the convex weights.
bool in_hull_plus_cone(const std::vector<Vec>& cloud, const PolyCone& k, const Vec& y) {
  for (const Vec& c : cloud)
    if (k.contains(sub(y, c))) return true;
  const std::size_t m = cloud.size();
  if (m < 2) return false;
  const HPolyhedron& h = k.halfspaces();
  Matrix a(0, m), e(0, m);
  Vec b, d;
  for (std::size_t i = 0; i < h.ineq_matrix().rows(); ++i) {
    // ⟨a, y − Σλc⟩ ≤ 0
    Vec row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = -dot(h.ineq_matrix()[i], cloud[j]);
    a.push_row(std::move(row));
    b.push_back(-dot(h.ineq_matrix()[i], y));
  }
  for (std::size_t i = 0; i < h.eq_matrix().rows(); ++i) {
    Vec row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = -dot(h.eq_matrix()[i], cloud[j]);
    e.push_row(std::move(row));
    d.push_back(-dot(h.eq_matrix()[i], y));
  }
  for (std::size_t j = 0; j < m; ++j) {
    a.push_row(scale(Scalar(-1), unit(m, j)));
    b.push_back(0);
  }
  e.push_row(Vec(m, Scalar(1)));
  d.push_back(1);
  return lp::feasible_point(a, b, e, d).has_value();
}

double distance_bound(const std::vector<Vec>& cloud, const PolyCone& k, const Vec& y) {
  if (cloud.empty()) return std::numeric_limits<double>::infinity();
  const HPolyhedron& h = k.halfspaces();
  double best = std::numeric_limits<double>::infinity();
  for (const Vec& c : cloud) {
    const Vec diff = sub(y, c);
    double worst = 0;
    auto consider = [&](const Vec& a, bool two_sided) {
      const double s = dot(a, diff).get_d();
      double nrm = 0;
      for (const auto& v : a) nrm += v.get_d() * v.get_d();
      nrm = std::sqrt(nrm);
      if (nrm == 0) return;
      const double viol = two_sided ? std::abs(s) : std::max(0.0, s);
      worst = std::max(worst, viol / nrm);
    };
    for (std::size_t i = 0; i < h.ineq_matrix().rows(); ++i) consider(h.ineq_matrix()[i], false);
    for (std::size_t i = 0; i < h.eq_matrix().rows(); ++i) consider(h.eq_matrix()[i], true);
    best = std::min(best, worst);
  }
  return best;
}

Scalar grid_value(const Scalar& lo, const Scalar& hi, std::size_t i, std::size_t count) {
  if (count <= 1) return (lo + hi) / 2;
  return lo + (hi - lo) * Scalar(static_cast<long>(i), static_cast<long>(count - 1));
}

void grid_walk(const std::vector<std::pair<Scalar, Scalar>>& box, std::size_t count,
               const std::function<void(const Vec&)>& visit) {
  const std::size_t n = box.size();
  std::vector<std::size_t> idx(n, 0);
  Vec x(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) x[i] = grid_value(box[i].first, box[i].second, idx[i], count);
    visit(x);
    std::size_t i = 0;
    while (i < n && ++idx[i] == count) idx[i++] = 0;
    if (i == n) break;
  }
}

struct ImageSample {
  std::vector<Vec> points;
  std::vector<DVec> preimages;
  bool truncated = false;
};

ImageSample polyhedral_images(const ParametricProblem& pr, const Vec& p, const DominationOptions& opt) {
  ImageSample out;
  const HPolyhedron c = feasible_polyhedron(pr, p);
  const std::size_t n = pr.dims.x;
  const Scalar box = from_double(opt.box);
  std::vector<std::pair<Scalar, Scalar>> bounds(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto lo = lp::minimize(unit(n, i), c.ineq_matrix(), c.ineq_rhs(), c.eq_matrix(), c.eq_rhs());
    auto hi = lp::maximize(unit(n, i), c.ineq_matrix(), c.ineq_rhs(), c.eq_matrix(), c.eq_rhs());
    Scalar l = lo.status == lp::Status::Optimal ? lo.value : Scalar(-box);
    Scalar h = hi.status == lp::Status::Optimal ? hi.value : box;
    if (lo.status != lp::Status::Optimal || hi.status != lp::Status::Optimal || l < -box || h > box)
      out.truncated = true;
    bounds[i] = {std::max(l, Scalar(-box)), std::min(h, box)};
  }
  std::vector<Vec> xs;
  if (n > 0) {
    grid_walk(bounds, opt.grid, [&](const Vec& x) {
      if (c.contains(x)) xs.push_back(x);
    });
  }
  const PolyGenerators gens = c.generators();
  for (const Vec& v : gens.points) {
    xs.push_back(v);
    for (const Vec& r : gens.rays)
      for (long t : {1L, 5L}) xs.push_back(add(v, scale(Scalar(t), r)));
    for (const Vec& l : gens.lines)
      for (long t : {-5L, -1L, 1L, 5L}) xs.push_back(add(v, scale(Scalar(t), l)));
  }
  for (std::size_t i = 0; i < gens.points.size(); ++i)
    for (std::size_t j = i + 1; j < gens.points.size(); ++j)
      xs.push_back(scale(Scalar(1, 2), add(gens.points[i], gens.points[j])));
  for (const Vec& x : xs) {
    out.preimages.push_back(to_doubles(x));
    if (pr.affine_objective()) {
      out.points.push_back(evaluate_objective(pr, p, x));
    } else {
      const auto pd = to_doubles(p), xd = to_doubles(x);
      out.points.push_back(from_doubles(evaluate_objective(pr, pd, xd)));
    }
  }
  return out;
}

ImageSample smooth_images(const ParametricProblem& pr, const Vec& p, const DominationOptions& opt) {
  ImageSample out;
  const auto pd = to_doubles(p);
  auto start = feasible_point(pr, pd);
  if (!start) return out;
  const std::size_t n = pr.dims.x;
  auto feasible = [&](const DVec& x) {
    for (double v : x)
      if (std::abs(v) > opt.box) return false;
    return is_feasible(pr, pd, x, 1e-12);
  };
  std::vector<std::pair<Scalar, Scalar>> bounds(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto lo = detail::pattern_search([&](const DVec& x) { return x[i]; }, feasible, *start, 1.0, 1e-8, 20000);
    auto hi = detail::pattern_search([&](const DVec& x) { return -x[i]; }, feasible, *start, 1.0, 1e-8, 20000);
    if (lo[i] <= -opt.box + 1e-6 || hi[i] >= opt.box - 1e-6) out.truncated = true;
    bounds[i] = {from_double(lo[i]), from_double(hi[i])};
  }
  std::vector<DVec> xs{*start};
  grid_walk(bounds, opt.grid, [&](const Vec& x) {
    DVec xd = to_doubles(x);
    if (feasible(xd)) xs.push_back(std::move(xd));
  });
  for (const DVec& x : xs) out.points.push_back(from_doubles(evaluate_objective(pr, pd, x)));
  out.preimages = std::move(xs);
  return out;
}

// Minimizing ⟨e, f⟩ over {x ∈ C(p) : y − f(p,x) ∈ K} with e ∈ int K* lands on a
// minimal point dominating y; unboundedness means no minimal point does.
std::optional<Vec> dominating_minimal(const ParametricProblem& pr, const Vec& p, const Vec& y, const DVec& x0,
                                      const PolyCone& k, const Vec& e, const DominationOptions& opt) {
  if (pr.exact_path()) {
    const auto& obj = std::get<AffineObjective>(pr.objective);
    const HPolyhedron region = detail::dominated_region(pr, p, y, k);
    const auto r = lp::minimize(obj.fx.transpose_times(e), region.ineq_matrix(), region.ineq_rhs(),
                                region.eq_matrix(), region.eq_rhs());
    if (r.status != lp::Status::Optimal) return std::nullopt;
    return evaluate_objective(pr, p, r.x);
  }
  const auto pd = to_doubles(p), yd = to_doubles(y), ed = to_doubles(e);
  auto image = [&](const DVec& x) { return evaluate_objective(pr, pd, x); };
  auto feasible = [&](const DVec& x) {
    for (double v : x)
      if (std::abs(v) > opt.box) return false;
    if (!is_feasible(pr, pd, x, 1e-12)) return false;
    DVec gap = yd;
    const DVec fx = image(x);
    for (std::size_t i = 0; i < gap.size(); ++i) gap[i] -= fx[i];
    return detail::in_cone_d(k, gap, opt.slack);
  };
  if (!feasible(x0)) return std::nullopt;
  auto score = [&](const DVec& x) {
    const DVec fx = image(x);
    double s = 0;
    for (std::size_t i = 0; i < fx.size(); ++i) s += ed[i] * fx[i];
    return s;
  };
  const DVec best = detail::pattern_search(score, feasible, x0, 0.5, 1e-9, 50000);
  for (double v : best)
    if (std::abs(v) >= opt.box - 1e-6) return std::nullopt;
  return from_doubles(image(best));
}

Vec cone_interior_direction(const PolyCone& k) {
  Vec d = zeros(k.dim());
  for (const Vec& r : k.rays()) d = add(d, r);
  double nrm = 0;
  for (const auto& v : d) nrm += v.get_d() * v.get_d();
  if (nrm == 0) return d;
  return scale(from_double(1.0 / std::sqrt(nrm)), d);
}

}  // namespace

DominationCertificate check_domination(const ParametricProblem& pr, const Vec& pbar, Variant variant,
                                       const DominationOptions& opt) {
  if (pbar.size() != pr.dims.p) throw Error(ErrorCode::DimensionMismatch, "p̄ has the wrong dimension");
  const bool tilde = variant == Variant::Weak && opt.strict_tilde;
  if (tilde && !pr.cone_tilde) throw Error(ErrorCode::MissingTildeCone, "strict weak mode needs K̃");
  const PolyCone& k = tilde ? pr.cone_tilde->cone() : pr.cone.cone();
  const Vec e = tilde ? pr.cone_tilde->dual_interior_point() : pr.cone.dual_interior_point();
  const std::vector<Vec> weights = weight_grid(pr.cone, opt.weights, variant == Variant::Weak);
  const Vec shift = pr.exact_path() ? zeros(pr.dims.y) : scale(from_double(opt.slack), cone_interior_direction(k));

  DominationCertificate cert;
  cert.variant = variant;
  cert.radius = opt.radius;
  cert.seed = opt.seed;
  cert.strict_tilde = tilde;
  for (const Vec& p : parameter_samples(pbar, opt.radius, opt.param_samples, opt.seed)) {
    ++cert.n_param_samples;
    FrontierSample front;
    bool empty_front = false;
    try {
      front = frontier_sample_detailed(pr, p, weights);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Infeasible) {
        ++cert.n_infeasible;
        continue;
      }
      if (e.code() != ErrorCode::UnboundedScalarization && e.code() != ErrorCode::FrontierEmpty) throw;
      empty_front = true;
    }
    ImageSample images = pr.polyhedral_constraints() ? polyhedral_images(pr, p, opt) : smooth_images(pr, p, opt);
    cert.truncated = cert.truncated || images.truncated;
    cert.n_image_samples += images.points.size();
    if (empty_front) {
      Violation v{p, images.points.empty() ? Vec{} : images.points.front(),
                  std::numeric_limits<double>::infinity(), "frontier empty"};
      cert.violations.push_back(std::move(v));
      continue;
    }
    std::sort(front.cloud.points.begin(), front.cloud.points.end());
    front.cloud.points.erase(std::unique(front.cloud.points.begin(), front.cloud.points.end()),
                             front.cloud.points.end());
    for (std::size_t i = 0; i < images.points.size(); ++i) {
      const Vec& y = images.points[i];
      const Vec ys = add(y, shift);
      if (in_hull_plus_cone(front.cloud.points, k, ys)) continue;
      if (auto c = dominating_minimal(pr, p, y, images.preimages[i], k, e, opt)) {
        front.cloud.points.push_back(std::move(*c));
        continue;
      }
      cert.violations.push_back({p, y, distance_bound(front.cloud.points, k, ys), "not dominated"});
    }
  }
  std::sort(cert.violations.begin(), cert.violations.end(), [](const Violation& a, const Violation& b) {
    if (a.p != b.p) return a.p < b.p;
    return a.y < b.y;
  });
  cert.holds_empirically = cert.violations.empty();
  return cert;
}

bool exact_domination_at(const ParametricProblem& pr, const Vec& p, Variant variant, std::size_t weights) {
  if (!pr.exact_path()) throw Error(ErrorCode::UnsupportedConstraintKind, "exact domination needs affine data");
  const auto& obj = std::get<AffineObjective>(pr.objective);
  FrontierSample front;
  try {
    front = frontier_sample_detailed(pr, p, weight_grid(pr.cone, weights, variant == Variant::Weak));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnboundedScalarization) return false;
    throw;
  }
  const PolyCone& k = pr.cone.cone();
  const PolyGenerators gens = feasible_polyhedron(pr, p).generators();
  for (const Vec& v : gens.points)
    if (!in_hull_plus_cone(front.cloud.points, k, evaluate_objective(pr, p, v))) return false;
  for (const Vec& r : gens.rays)
    if (!k.contains(obj.fx * r)) return false;
  for (const Vec& l : gens.lines) {
    const Vec d = obj.fx * l;
    if (!k.contains(d) || !k.contains(neg(d))) return false;
  }
  return true;
}

}  // namespace coderiv
