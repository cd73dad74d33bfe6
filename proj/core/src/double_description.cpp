#include "coderiv/double_description.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>

namespace coderiv {

namespace {

// Set of constraint indices a ray makes tight.
class ZeroSet {
 public:
  void set(std::size_t i) {
    if (words_.size() <= i / 64) words_.resize(i / 64 + 1, 0);
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  ZeroSet operator&(const ZeroSet& o) const {
    ZeroSet r;
    std::size_t n = std::min(words_.size(), o.words_.size());
    r.words_.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }
  bool contains(const ZeroSet& o) const {
    for (std::size_t i = 0; i < o.words_.size(); ++i) {
      std::uint64_t mine = i < words_.size() ? words_[i] : 0;
      if ((o.words_[i] & ~mine) != 0) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  Vec v;
  ZeroSet zero;
};

// Projects v onto the orthogonal complement of span(lines).
Vec reduce_modulo_lines(const Vec& v, const std::vector<Vec>& lines) {
  if (lines.empty()) return v;
  const std::size_t k = lines.size();
  Matrix gram(k, k);
  Vec rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram(i, j) = dot(lines[i], lines[j]);
    rhs[i] = dot(lines[i], v);
  }
  auto coef = solve_linear(gram, rhs);
  assert(coef);
  Vec out = v;
  for (std::size_t i = 0; i < k; ++i)
    if (sgn((*coef)[i]) != 0)
      for (std::size_t j = 0; j < v.size(); ++j) out[j] -= (*coef)[i] * lines[i][j];
  return out;
}

}  // namespace

ConeGenerators canonical_generators(std::size_t dim, std::vector<Vec> rays,
                                    std::vector<Vec> lines) {
  ConeGenerators out;
  out.dim = dim;
  if (!lines.empty()) {
    Matrix lm(dim, lines);
    auto pivots = rref(lm);
    for (std::size_t i = 0; i < pivots.size(); ++i) out.lines.push_back(primitive(lm[i]));
  }
  for (auto& r : rays) {
    Vec red = primitive(reduce_modulo_lines(r, out.lines));
    if (is_zero(red)) continue;
    out.rays.push_back(std::move(red));
  }
  std::sort(out.rays.begin(), out.rays.end());
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  return out;
}

ConeGenerators cone_generators(const Matrix& ineq, const Matrix& eq) {
  const std::size_t n = std::max(ineq.cols(), eq.cols());
  std::vector<Vec> lines;
  for (std::size_t i = 0; i < n; ++i) lines.push_back(unit(n, i));
  std::vector<Ray> rays;

  // Equalities only cut the lineality space while no rays exist yet.
  for (std::size_t e = 0; e < eq.rows(); ++e) {
    const Vec& a = eq[e];
    std::size_t piv = lines.size();
    Scalar ap;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      Scalar v = dot(a, lines[i]);
      if (sgn(v) != 0) {
        piv = i;
        ap = v;
        break;
      }
    }
    if (piv == lines.size()) continue;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (i == piv) continue;
      Scalar v = dot(a, lines[i]);
      if (sgn(v) != 0) lines[i] = primitive(sub(lines[i], scale(v / ap, lines[piv])));
    }
    lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(piv));
  }

  for (std::size_t c = 0; c < ineq.rows(); ++c) {
    const Vec& a = ineq[c];
    if (is_zero(a)) continue;

    std::size_t piv = lines.size();
    Scalar ap;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      Scalar v = dot(a, lines[i]);
      if (sgn(v) != 0) {
        piv = i;
        ap = v;
        break;
      }
    }
    if (piv != lines.size()) {
      const Vec l0 = lines[piv];
      for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i == piv) continue;
        Scalar v = dot(a, lines[i]);
        if (sgn(v) != 0) lines[i] = primitive(sub(lines[i], scale(v / ap, l0)));
      }
      for (auto& r : rays) {
        Scalar v = dot(a, r.v);
        if (sgn(v) != 0) r.v = primitive(sub(r.v, scale(v / ap, l0)));
        r.zero.set(c);
      }
      lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(piv));
      Ray fresh;
      fresh.v = sgn(ap) > 0 ? neg(l0) : l0;
      for (std::size_t k = 0; k < c; ++k) fresh.zero.set(k);
      rays.push_back(std::move(fresh));
      continue;
    }

    std::vector<Scalar> val(rays.size());
    std::vector<std::size_t> pos, negs;
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      int s = sgn(val[i]);
      if (s > 0)
        pos.push_back(i);
      else if (s < 0)
        negs.push_back(i);
    }
    if (pos.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (sgn(val[i]) == 0) rays[i].zero.set(c);
      continue;
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (sgn(val[i]) > 0) continue;
      Ray r = rays[i];
      if (sgn(val[i]) == 0) r.zero.set(c);
      next.push_back(std::move(r));
    }
    for (std::size_t ip : pos) {
      for (std::size_t in : negs) {
        ZeroSet common = rays[ip].zero & rays[in].zero;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == ip || k == in) continue;
          if (rays[k].zero.contains(common)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray r;
        r.v = primitive(add(scale(val[ip], rays[in].v), scale(-val[in], rays[ip].v)));
        r.zero = common;
        r.zero.set(c);
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
  }

  std::vector<Vec> ray_vecs;
  ray_vecs.reserve(rays.size());
  for (auto& r : rays) ray_vecs.push_back(std::move(r.v));
  return canonical_generators(n, std::move(ray_vecs), std::move(lines));
}

ConeHalfspaces cone_halfspaces(const ConeGenerators& gens) {
  const std::size_t n = gens.dim;
  // Polar {y : y·r ≤ 0, y·l = 0}; its generators are the outward normals.
  Matrix ineq(n, gens.rays);
  Matrix eq(n, gens.lines);
  ConeGenerators polar = cone_generators(ineq, eq);
  ConeHalfspaces out{Matrix(n), Matrix(n)};
  for (const auto& r : polar.rays) out.ineq.push_row(r);
  for (const auto& l : polar.lines) out.eq.push_row(l);
  return out;
}

}  // namespace coderiv
