#include "coderiv/lp.hpp"

#include <cassert>
#include <limits>

namespace coderiv::lp {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Dense tableau in "maximize" convention: row 0 holds reduced costs
// (entering candidates are negative entries), last column holds the rhs.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cols_(cols), t_(rows + 1, zeros(cols + 1)), basis_(rows, kNone) {}

  Scalar& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  Scalar& rhs(std::size_t r) { return t_[r][cols_]; }
  Scalar& obj(std::size_t c) { return t_[0][c]; }
  std::size_t rows() const { return basis_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t row, std::size_t col) {
    Vec& pr = t_[row];
    Scalar inv = 1 / pr[col];
    for (auto& x : pr)
      if (sgn(x) != 0) x *= inv;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == row || sgn(t_[i][col]) == 0) continue;
      Scalar f = t_[i][col];
      Vec& ri = t_[i];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (sgn(pr[j]) != 0) ri[j] -= f * pr[j];
    }
    basis_[row - 1] = col;
  }

  // Runs Bland's-rule iterations over columns [0, allowed). Returns false when
  // the objective is unbounded.
  bool optimize(std::size_t allowed) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < allowed; ++j)
        if (sgn(t_[0][j]) < 0) {
          enter = j;
          break;
        }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Scalar best;
      for (std::size_t i = 1; i < t_.size(); ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Scalar ratio = t_[i][cols_] / t_[i][enter];
        if (leave == kNone || ratio < best ||
            (ratio == best && basis_[i - 1] < basis_[leave - 1])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }

  void drop_row(std::size_t row) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(row));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(row - 1));
  }

 private:
  std::size_t cols_;
  std::vector<Vec> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Result maximize(const Vec& c, const Matrix& A, const Vec& b, const Matrix& E, const Vec& d) {
  const std::size_t n = c.size();
  const std::size_t m_in = A.rows();
  const std::size_t m_eq = E.rows();
  const std::size_t m = m_in + m_eq;
  assert(A.rows() == 0 || A.cols() == n);
  assert(E.rows() == 0 || E.cols() == n);

  // Columns: u (n), v (n), slacks (m_in), artificials (one per row needing one).
  std::vector<bool> needs_art(m, false);
  std::size_t n_art = 0;
  for (std::size_t i = 0; i < m_in; ++i)
    if (sgn(b[i]) < 0) needs_art[i] = true, ++n_art;
  for (std::size_t i = 0; i < m_eq; ++i) needs_art[m_in + i] = true, ++n_art;

  const std::size_t slack0 = 2 * n;
  const std::size_t art0 = slack0 + m_in;
  const std::size_t total = art0 + n_art;
  Tableau tab(m, total);

  std::size_t art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec& row = i < m_in ? A[i] : E[i - m_in];
    Scalar rhs = i < m_in ? b[i] : d[i - m_in];
    int sign = sgn(rhs) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(row[j]) == 0) continue;
      tab.at(i + 1, j) = sign * row[j];
      tab.at(i + 1, n + j) = -sign * row[j];
    }
    if (i < m_in) tab.at(i + 1, slack0 + i) = sign;
    tab.rhs(i + 1) = sign * rhs;
    if (needs_art[i]) {
      tab.at(i + 1, art) = 1;
      tab.basis()[i] = art++;
    } else {
      tab.basis()[i] = slack0 + i;
    }
  }

  if (n_art > 0) {
    // Phase 1: maximize -sum(artificials).
    for (std::size_t j = art0; j < total; ++j) tab.obj(j) = 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (!needs_art[i]) continue;
      for (std::size_t j = 0; j <= total; ++j) {
        Scalar v = tab.at(i + 1, j);
        if (sgn(v) != 0) tab.at(0, j) -= v;
      }
    }
    tab.optimize(total);
    if (sgn(tab.rhs(0)) != 0) return {Status::Infeasible, 0, {}};
    // Drive remaining artificials out of the basis.
    for (std::size_t i = tab.rows(); i-- > 0;) {
      if (tab.basis()[i] < art0) continue;
      std::size_t col = kNone;
      for (std::size_t j = 0; j < art0; ++j)
        if (sgn(tab.at(i + 1, j)) != 0) {
          col = j;
          break;
        }
      if (col == kNone)
        tab.drop_row(i + 1);
      else
        tab.pivot(i + 1, col);
    }
  }

  // Phase 2 objective over real columns; artificials are excluded from entering.
  for (std::size_t j = 0; j <= total; ++j) tab.obj(j) = 0;
  for (std::size_t j = 0; j < n; ++j) {
    tab.obj(j) = -c[j];
    tab.obj(n + j) = c[j];
  }
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    std::size_t bc = tab.basis()[i];
    Scalar f = tab.obj(bc);
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j <= total; ++j) {
      Scalar v = tab.at(i + 1, j);
      if (sgn(v) != 0) tab.at(0, j) -= f * v;
    }
  }
  bool bounded = tab.optimize(art0);

  Vec x = zeros(n);
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    std::size_t bc = tab.basis()[i];
    if (bc < n)
      x[bc] += tab.rhs(i + 1);
    else if (bc < 2 * n)
      x[bc - n] -= tab.rhs(i + 1);
  }
  if (!bounded) return {Status::Unbounded, 0, std::move(x)};
  return {Status::Optimal, tab.rhs(0), std::move(x)};
}

std::optional<Vec> feasible_point(const Matrix& A, const Vec& b, const Matrix& E, const Vec& d) {
  std::size_t n = A.cols();
  if (A.rows() == 0 && E.rows() == 0) return zeros(n);
  Result r = maximize(zeros(n), A, b, E, d);
  if (r.status == Status::Infeasible) return std::nullopt;
  return r.x;
}

}  // namespace coderiv::lp
