#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "capgrp/field.hpp"

namespace capgrp {

/// Dense row-major matrix over GF(p).
///
/// Zero-row and zero-column matrices are legal values; they show up as the
/// basis of the zero subspace and as maps out of V(1).
class Matrix {
 public:
  Matrix(PrimeModulus field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(PrimeModulus field, std::size_t n);
  /// Entries are reduced mod p, so negative literals are fine.
  static Matrix from_rows(PrimeModulus field, std::size_t cols,
                          const std::vector<std::vector<std::int64_t>>& rows);
  static Matrix from_vectors(PrimeModulus field, std::size_t cols, const std::vector<Vec>& rows);

  const PrimeModulus& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Scalar at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vec row_vec(std::size_t r) const { return Vec(row(r).begin(), row(r).end()); }
  Vec col_vec(std::size_t c) const;

  void append_row(std::span<const Scalar> v);
  void truncate_rows(std::size_t n);
  void swap_rows(std::size_t a, std::size_t b);

  /// this * x, with x a column vector of length cols().
  Vec apply(std::span<const Scalar> x) const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix transpose() const;

  bool is_zero() const noexcept;

  /// [A | B | ...]; all blocks must have the same row count.
  static Matrix hstack(const std::vector<const Matrix*>& blocks);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  PrimeModulus field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

struct RrefResult {
  Matrix reduced;  // only the rank nonzero rows are kept
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

RrefResult rref(Matrix m);
std::size_t rank(const Matrix& m);

}  // namespace capgrp
