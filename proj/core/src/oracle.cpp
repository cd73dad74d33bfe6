#include "coderiv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "coderiv/error.hpp"

namespace coderiv {

namespace {

DVec concat_doubles(const DVec& a, const DVec& b) {
  DVec out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

double norm2(const DVec& v, std::size_t from, std::size_t to) {
  double s = 0;
  for (std::size_t i = from; i < to; ++i) s += v[i] * v[i];
  return std::sqrt(s);
}

double sample_norm(const DVec& d, std::size_t n_p, bool product) {
  if (product) return norm2(d, 0, n_p) + norm2(d, n_p, d.size());
  return norm2(d, 0, d.size());
}

// Offsets of the grid in [−δ, δ]^n.
std::vector<DVec> cube_grid(std::size_t n, std::size_t count, double delta) {
  std::vector<DVec> out;
  if (n == 0 || count < 2) return {DVec(n, 0.0)};
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    DVec v(n);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = -delta + 2 * delta * static_cast<double>(idx[i]) / static_cast<double>(count - 1);
    out.push_back(std::move(v));
    std::size_t i = 0;
    while (i < n && ++idx[i] == count) idx[i++] = 0;
    if (i == n) break;
  }
  return out;
}

}  // namespace

EpiCloud epi_cloud(const ParametricProblem& pr, const Vec& pbar, const Vec& ybar, const EpiOptions& opt) {
  if (pbar.size() != pr.dims.p || ybar.size() != pr.dims.y)
    throw Error(ErrorCode::DimensionMismatch, "base point dimensions");
  EpiCloud cloud;
  cloud.base = concat_doubles(to_doubles(pbar), to_doubles(ybar));
  cloud.n_p = pr.dims.p;
  cloud.delta = opt.delta;
  cloud.grid = opt.grid;
  cloud.seed = opt.seed;
  if (opt.delta <= 0) return cloud;

  std::vector<Vec> weights = weight_grid(pr.cone, opt.weights);
  for (const Vec& w : opt.extra_weights)
    if (pr.cone.dual_contains(w) && !is_zero(w)) weights.push_back(w);

  std::vector<DVec> kdirs;
  for (const Vec& r : pr.cone.extreme_rays()) kdirs.push_back(to_doubles(r));

  std::set<DVec> seen;
  std::vector<DVec> raw;
  const std::vector<double> pb = to_doubles(pbar);
  auto push = [&](DVec u) {
    DVec d(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) d[i] = u[i] - cloud.base[i];
    const double nrm = norm2(d, 0, d.size());
    if (nrm > opt.delta) {
      for (std::size_t i = 0; i < u.size(); ++i) u[i] = cloud.base[i] + d[i] * (opt.delta / nrm);
    }
    if (seen.insert(u).second) raw.push_back(std::move(u));
  };
  push(cloud.base);

  for (const DVec& off : cube_grid(pr.dims.p, opt.grid, opt.delta)) {
    DVec pd(pr.dims.p);
    for (std::size_t i = 0; i < pd.size(); ++i) pd[i] = pb[i] + off[i];
    const Vec p = from_doubles(pd);
    PointCloud front;
    try {
      front = frontier_sample(pr, p, weights);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Infeasible && e.code() != ErrorCode::UnboundedScalarization &&
          e.code() != ErrorCode::FrontierEmpty)
        throw;
      ++cloud.skipped;
      continue;
    }
    for (const Vec& c : front.points) {
      const DVec cd = to_doubles(c);
      push(concat_doubles(pd, cd));
      for (const DVec& k : kdirs) {
        const double kn = norm2(k, 0, k.size());
        for (double s : {0.25, 0.5, 1.0}) {
          DVec y = cd;
          for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * opt.delta * k[i] / kn;
          push(concat_doubles(pd, y));
        }
      }
    }
  }
  if (raw.size() > opt.cap) {
    // keep the base and an even stride through the rest
    std::vector<DVec> kept{raw.front()};
    const double stride = static_cast<double>(raw.size() - 1) / static_cast<double>(opt.cap - 1);
    for (std::size_t i = 1; i < opt.cap; ++i)
      kept.push_back(raw[1 + static_cast<std::size_t>(static_cast<double>(i - 1) * stride)]);
    raw = std::move(kept);
  }
  cloud.samples = std::move(raw);
  return cloud;
}

double frechet_quotient(const EpiCloud& cloud, const DVec& vstar, bool product_norm) {
  if (vstar.size() != cloud.base.size()) throw Error(ErrorCode::DimensionMismatch, "v* dimension");
  double worst = 0;
  DVec d(cloud.base.size());
  for (const DVec& u : cloud.samples) {
    double ip = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      d[i] = u[i] - cloud.base[i];
      ip += vstar[i] * d[i];
    }
    const double nrm = sample_norm(d, cloud.n_p, product_norm);
    if (nrm < 1e-9) continue;
    worst = std::max(worst, ip / nrm);
  }
  return worst;
}

bool frechet_normal_test(const EpiCloud& cloud, const DVec& vstar, double eps, bool product_norm) {
  return frechet_quotient(cloud, vstar, product_norm) <= eps;
}

DMatrix finite_diff_gradient(const ParametricProblem& pr, const DVec& p, const DVec& x, double h) {
  const std::size_t np = p.size(), nx = x.size();
  DMatrix jac(pr.dims.y, DVec(np + nx, 0.0));
  for (std::size_t j = 0; j < np + nx; ++j) {
    DVec pp = p, xp = x, pm = p, xm = x;
    if (j < np) {
      pp[j] += h;
      pm[j] -= h;
    } else {
      xp[j - np] += h;
      xm[j - np] -= h;
    }
    const DVec fp = evaluate_objective(pr, pp, xp);
    const DVec fm = evaluate_objective(pr, pm, xm);
    for (std::size_t i = 0; i < pr.dims.y; ++i) jac[i][j] = (fp[i] - fm[i]) / (2 * h);
  }
  return jac;
}

std::vector<std::size_t> brute_force_min(const PointCloud& cloud, const PolyCone& k) {
  std::vector<std::size_t> out;
  const auto& pts = cloud.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool first = true, dominated = false;
    for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
      if (pts[j] == pts[i]) {
        if (j < i) first = false;
        continue;
      }
      if (k.contains(sub(pts[i], pts[j]))) dominated = true;
    }
    if (first && !dominated) out.push_back(i);
  }
  return out;
}

}  // namespace coderiv
