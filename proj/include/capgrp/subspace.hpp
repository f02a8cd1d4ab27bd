#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "capgrp/matrix.hpp"

namespace capgrp {

/// A subspace of GF(p)^d held in canonical reduced row-echelon form.
///
/// The basis rows are the nonzero rows of the RREF of any spanning set, so two
/// subspaces are equal exactly when their bases are identical entry for entry.
class Subspace {
 public:
  static Subspace zero(PrimeModulus field, std::size_t ambient);
  static Subspace full(PrimeModulus field, std::size_t ambient);
  /// Row span of `generators`.
  static Subspace span(const Matrix& generators);
  static Subspace span(PrimeModulus field, std::size_t ambient, const std::vector<Vec>& generators);

  const PrimeModulus& field() const noexcept { return basis_.field(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  std::vector<Vec> vectors() const;

  /// Residue of v after clearing every pivot column; zero iff v is in the span.
  Vec reduce(std::span<const Scalar> v) const;
  bool contains(std::span<const Scalar> v) const;
  /// other is a subspace of *this.
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  Subspace(Matrix basis, std::vector<std::size_t> pivots)
      : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Null space {x : M x = 0}.
Subspace kernel_basis(const Matrix& m);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
/// {x : M x in Y}; M maps GF(p)^cols into the ambient space of Y.
Subspace preimage(const Matrix& m, const Subspace& y);
/// M(X) for X inside GF(p)^cols.
Subspace image(const Matrix& m, const Subspace& x);
/// {z : <a, z> = 0 for every a in A} under the standard bilinear form.
Subspace annihilator(const Subspace& a);

bool contains(const Subspace& a, std::span<const Scalar> v);
bool subspace_eq(const Subspace& a, const Subspace& b);

}  // namespace capgrp
