#include "coderiv/matrix.hpp"

#include <cassert>

namespace coderiv {

Matrix::Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, zeros(cols)) {}

Matrix::Matrix(std::size_t cols, std::vector<Vec> rows) : cols_(cols), rows_(std::move(rows)) {
#ifndef NDEBUG
  for (const auto& r : rows_) assert(r.size() == cols_);
#endif
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_ints(std::size_t cols,
                         std::initializer_list<std::initializer_list<long>> rows) {
  Matrix m(cols);
  for (const auto& r : rows) m.push_row(coderiv::from_ints(r));
  return m;
}

void Matrix::push_row(Vec row) {
  assert(row.size() == cols_);
  rows_.push_back(std::move(row));
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = rows_[i][j];
  return t;
}

Vec Matrix::operator*(const Vec& x) const {
  Vec out(rows());
  for (std::size_t i = 0; i < rows(); ++i) out[i] = dot(rows_[i], x);
  return out;
}

Vec Matrix::transpose_times(const Vec& y) const {
  Vec out = zeros(cols_);
  for (std::size_t i = 0; i < rows(); ++i) {
    if (sgn(y[i]) == 0) continue;
    for (std::size_t j = 0; j < cols_; ++j) out[j] += rows_[i][j] * y[i];
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
  Matrix out(rows(), other.cols());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (sgn(rows_[i][k]) == 0) continue;
      for (std::size_t j = 0; j < other.cols(); ++j) out(i, j) += rows_[i][k] * other(k, j);
    }
  return out;
}

Matrix Matrix::columns(std::span<const std::size_t> cols) const {
  Matrix out(cols.size());
  for (const auto& r : rows_) {
    Vec nr;
    nr.reserve(cols.size());
    for (auto c : cols) nr.push_back(r[c]);
    out.push_row(std::move(nr));
  }
  return out;
}

Matrix Matrix::hconcat(const Matrix& other) const {
  assert(rows() == other.rows());
  Matrix out(cols_ + other.cols());
  for (std::size_t i = 0; i < rows(); ++i) out.push_row(concat(rows_[i], other[i]));
  return out;
}

std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(m[p], m[r]);
    Scalar inv = 1 / m(r, c);
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<Vec> null_space(const Matrix& m) {
  Matrix work = m;
  auto pivots = rref(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v = zeros(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -work(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(Matrix m) { return rref(m).size(); }

std::optional<Vec> solve_linear(const Matrix& m, const Vec& rhs) {
  Matrix aug(m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Vec row = m[i];
    row.push_back(rhs[i]);
    aug.push_row(std::move(row));
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vec x = zeros(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
  return x;
}

}  // namespace coderiv
