#include "capgrp/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace capgrp {

Matrix Matrix::identity(PrimeModulus field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(PrimeModulus field, std::size_t cols,
                         const std::vector<std::vector<std::int64_t>>& rows) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix literal");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = field.reduce(rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_vectors(PrimeModulus field, std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(field, 0, cols);
  for (const auto& v : rows) m.append_row(v);
  return m;
}

Vec Matrix::col_vec(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

void Matrix::append_row(std::span<const Scalar> v) {
  if (v.size() != cols_) throw std::invalid_argument("row length does not match column count");
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

void Matrix::truncate_rows(std::size_t n) {
  if (n < rows_) {
    rows_ = n;
    data_.resize(rows_ * cols_);
  }
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
}

Vec Matrix::apply(std::span<const Scalar> x) const {
  if (x.size() != cols_) throw std::invalid_argument("vector length does not match column count");
  Vec y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    const auto rr = row(r);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (rr[c] != 0 && x[c] != 0) acc = (acc + static_cast<std::uint64_t>(rr[c]) * x[c]) % field_.value();
    }
    y[r] = static_cast<Scalar>(acc);
  }
  return y;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  if (!(field_ == rhs.field_)) throw std::invalid_argument("matrix product over different fields");
  Matrix out(field_, rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar a = at(r, k);
      if (a == 0) continue;
      auto orow = out.row(r);
      const auto brow = rhs.row(k);
      for (std::size_t c = 0; c < rhs.cols_; ++c) {
        if (brow[c] != 0) orow[c] = field_.fma(orow[c], a, brow[c]);
      }
    }
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Scalar s) { return s == 0; });
}

Matrix Matrix::hstack(const std::vector<const Matrix*>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("hstack of no blocks");
  const auto rows = blocks.front()->rows();
  std::size_t cols = 0;
  for (const auto* b : blocks) {
    if (b->rows() != rows) throw std::invalid_argument("hstack blocks differ in row count");
    cols += b->cols();
  }
  Matrix out(blocks.front()->field(), rows, cols);
  std::size_t offset = 0;
  for (const auto* b : blocks) {
    for (std::size_t r = 0; r < rows; ++r)
      std::copy(b->row(r).begin(), b->row(r).end(), out.row(r).begin() + static_cast<std::ptrdiff_t>(offset));
    offset += b->cols();
  }
  return out;
}

RrefResult rref(Matrix m) {
  const auto& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m.at(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    m.swap_rows(sel, r);

    const Scalar scale = f.inv(m.at(r, c));
    auto prow = m.row(r);
    for (std::size_t k = c; k < m.cols(); ++k) prow[k] = f.mul(prow[k], scale);

    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const Scalar factor = m.at(i, c);
      if (factor == 0) continue;
      const Scalar neg = f.neg(factor);
      auto irow = m.row(i);
      for (std::size_t k = c; k < m.cols(); ++k) {
        if (prow[k] != 0) irow[k] = f.fma(irow[k], neg, prow[k]);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  m.truncate_rows(r);
  return {std::move(m), r, std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

}  // namespace capgrp
