#include "capgrp/subspace.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace capgrp {

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b, const char* what) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw std::invalid_argument(std::string(what) + ": ambient dimensions differ (" +
                                std::to_string(a.ambient_dim()) + " vs " + std::to_string(b.ambient_dim()) + ")");
  }
  if (!(a.field() == b.field())) throw std::invalid_argument(std::string(what) + ": subspaces over different fields");
}

}  // namespace

Subspace Subspace::zero(PrimeModulus field, std::size_t ambient) { return Subspace(Matrix(field, 0, ambient), {}); }

Subspace Subspace::full(PrimeModulus field, std::size_t ambient) {
  std::vector<std::size_t> pivots(ambient);
  for (std::size_t i = 0; i < ambient; ++i) pivots[i] = i;
  return Subspace(Matrix::identity(field, ambient), std::move(pivots));
}

Subspace Subspace::span(const Matrix& generators) {
  auto r = rref(generators);
  return Subspace(std::move(r.reduced), std::move(r.pivots));
}

Subspace Subspace::span(PrimeModulus field, std::size_t ambient, const std::vector<Vec>& generators) {
  return span(Matrix::from_vectors(field, ambient, generators));
}

std::vector<Vec> Subspace::vectors() const {
  std::vector<Vec> out;
  out.reserve(dim());
  for (std::size_t r = 0; r < dim(); ++r) out.push_back(basis_.row_vec(r));
  return out;
}

Vec Subspace::reduce(std::span<const Scalar> v) const {
  if (v.size() != ambient_dim()) throw std::invalid_argument("vector length does not match ambient dimension");
  const auto& f = field();
  Vec res(v.begin(), v.end());
  for (std::size_t r = 0; r < dim(); ++r) {
    const Scalar c = res[pivots_[r]];
    if (c == 0) continue;
    const Scalar neg = f.neg(c);
    const auto row = basis_.row(r);
    for (std::size_t k = pivots_[r]; k < res.size(); ++k) {
      if (row[k] != 0) res[k] = f.fma(res[k], neg, row[k]);
    }
  }
  return res;
}

bool Subspace::contains(std::span<const Scalar> v) const {
  const auto res = reduce(v);
  return std::all_of(res.begin(), res.end(), [](Scalar s) { return s == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  require_same_ambient(*this, other, "containment");
  if (other.dim() > dim()) return false;
  for (std::size_t r = 0; r < other.dim(); ++r) {
    if (!contains(other.basis_.row(r))) return false;
  }
  return true;
}

Subspace kernel_basis(const Matrix& m) {
  const auto r = rref(m);
  const auto& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;

  Matrix gens(f, 0, m.cols());
  Vec x(m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::fill(x.begin(), x.end(), 0);
    x[free] = 1;
    for (std::size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = f.neg(r.reduced.at(i, free));
    gens.append_row(x);
  }
  return Subspace::span(gens);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "subspace_sum");
  Matrix stacked = a.basis();
  for (std::size_t r = 0; r < b.dim(); ++r) stacked.append_row(b.basis().row(r));
  return Subspace::span(stacked);
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "subspace_intersect");
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.field(), a.ambient_dim());
  // (x, y) with x^T A + y^T B = 0 gives x^T A in A ∩ B, and every element arises this way.
  const Matrix at = a.basis().transpose();
  const Matrix bt = b.basis().transpose();
  const auto k = kernel_basis(Matrix::hstack({&at, &bt}));
  const auto& f = a.field();
  Matrix gens(f, 0, a.ambient_dim());
  Vec v(a.ambient_dim());
  for (std::size_t r = 0; r < k.dim(); ++r) {
    std::fill(v.begin(), v.end(), 0);
    const auto coeffs = k.basis().row(r);
    for (std::size_t t = 0; t < a.dim(); ++t) {
      if (coeffs[t] == 0) continue;
      const auto arow = a.basis().row(t);
      for (std::size_t c = 0; c < v.size(); ++c) v[c] = f.fma(v[c], coeffs[t], arow[c]);
    }
    gens.append_row(v);
  }
  return Subspace::span(gens);
}

Subspace annihilator(const Subspace& a) { return kernel_basis(a.basis()); }

Subspace preimage(const Matrix& m, const Subspace& y) {
  if (m.rows() != y.ambient_dim()) {
    throw std::invalid_argument("preimage: map codomain has dimension " + std::to_string(m.rows()) +
                                " but target subspace lives in dimension " + std::to_string(y.ambient_dim()));
  }
  // Mx lies in Y exactly when every functional vanishing on Y vanishes on Mx.
  const auto ann = annihilator(y);
  return kernel_basis(ann.basis() * m);
}

Subspace image(const Matrix& m, const Subspace& x) {
  if (m.cols() != x.ambient_dim()) throw std::invalid_argument("image: map domain does not match subspace ambient");
  return Subspace::span(x.basis() * m.transpose());
}

bool contains(const Subspace& a, std::span<const Scalar> v) { return a.contains(v); }

bool subspace_eq(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "subspace_eq");
  return a == b;
}

}  // namespace capgrp
