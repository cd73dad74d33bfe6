#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "coderiv/scalar.hpp"

namespace coderiv {

/// Dense row-major matrix of exact rationals, stored as a list of rows.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  explicit Matrix(std::size_t cols) : cols_(cols) {}
  Matrix(std::size_t cols, std::vector<Vec> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_ints(std::size_t cols, std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_.empty(); }

  Vec& operator[](std::size_t i) { return rows_[i]; }
  const Vec& operator[](std::size_t i) const { return rows_[i]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return rows_[i][j]; }

  void push_row(Vec row);
  const std::vector<Vec>& row_list() const noexcept { return rows_; }

  Matrix transpose() const;
  Vec operator*(const Vec& x) const;
  /// Aᵀ y.
  Vec transpose_times(const Vec& y) const;
  Matrix operator*(const Matrix& other) const;
  Matrix columns(std::span<const std::size_t> cols) const;
  /// [this | other], same row count required.
  Matrix hconcat(const Matrix& other) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<Vec> rows_;
};

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m);

/// Basis of the null space {x : M x = 0}.
std::vector<Vec> null_space(const Matrix& m);

std::size_t rank(Matrix m);

/// Solves M x = rhs exactly; nullopt if inconsistent. When underdetermined,
/// free variables are set to zero.
std::optional<Vec> solve_linear(const Matrix& m, const Vec& rhs);

}  // namespace coderiv
