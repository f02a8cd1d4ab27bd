#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "capgrp/matrix.hpp"
#include "capgrp/subspace.hpp"

namespace capgrp {

/// Column positions for the distinguished bases of U(n), V(n) and W(n).
///
/// All indices handed in or out are 1-based generator labels. V is ordered by
/// (i, j) ascending over pairs v_{ji}, i < j; W by (i, j, k) over w_{jik} with
/// i < j and i <= k.
class WedgeIndexing {
 public:
  explicit WedgeIndexing(int n);

  int n() const noexcept { return n_; }
  std::size_t dim_u() const noexcept { return static_cast<std::size_t>(n_); }
  std::size_t dim_v() const noexcept { return v_pairs_.size(); }
  std::size_t dim_w() const noexcept { return w_triples_.size(); }

  /// Column of v_{ji}; requires 1 <= i < j <= n.
  std::size_t v_index(int j, int i) const;
  /// (j, i) for a V column.
  std::pair<int, int> v_pair(std::size_t idx) const { return v_pairs_.at(idx); }
  /// Column of w_{jik}; requires 1 <= i < j <= n and i <= k <= n.
  std::size_t w_index(int j, int i, int k) const;
  std::array<int, 3> w_triple(std::size_t idx) const { return w_triples_.at(idx); }

  bool valid_v(int j, int i) const noexcept { return 1 <= i && i < j && j <= n_; }
  bool valid_w(int j, int i, int k) const noexcept { return valid_v(j, i) && i <= k && k <= n_; }

 private:
  int n_;
  std::vector<std::pair<int, int>> v_pairs_;
  std::vector<std::array<int, 3>> w_triples_;
  std::vector<std::size_t> v_lookup_;  // (j-1)*n + (i-1)
  std::vector<std::size_t> w_lookup_;  // ((j-1)*n + (i-1))*n + (k-1)
};

/// U(n), V(n), W(n) over a fixed GF(p), with the maps psi_i : U -> V and
/// phi_k : V -> W built once.
class WedgeSpace {
 public:
  /// n >= 1; n = 1 gives zero-dimensional V and W, which the sub-problems of
  /// the direct-sum decomposition need.
  WedgeSpace(int n, PrimeModulus field);

  int n() const noexcept { return idx_.n(); }
  const PrimeModulus& field() const noexcept { return field_; }
  const WedgeIndexing& indexing() const noexcept { return idx_; }
  std::size_t dim_v() const noexcept { return idx_.dim_v(); }
  std::size_t dim_w() const noexcept { return idx_.dim_w(); }

  const Matrix& psi(int i) const;
  const Matrix& phi(int k) const;
  /// [phi_1 | ... | phi_n] : V^n -> W.
  const Matrix& phi_block() const noexcept { return phi_block_; }

  Vec zero_v() const { return Vec(dim_v(), 0); }
  Vec zero_w() const { return Vec(dim_w(), 0); }
  /// Basis vector v_{ab} read with the antisymmetric convention: v_{ab} = -v_{ba}, v_{aa} = 0.
  Vec v(int a, int b) const;
  Vec w(int j, int i, int k) const;
  /// Coefficient of v_{ab} in x under the same convention.
  Scalar v_coeff(std::span<const Scalar> x, int a, int b) const;
  /// x += c * v_{ab}.
  void add_v(std::span<Scalar> x, int a, int b, Scalar c) const;

  Subspace full_v() const { return Subspace::full(field_, dim_v()); }
  Subspace zero_subspace_v() const { return Subspace::zero(field_, dim_v()); }
  /// Span of the listed basis vectors v_{ji}.
  Subspace coordinate_subspace(const std::vector<std::pair<int, int>>& pairs) const;

 private:
  WedgeIndexing idx_;
  PrimeModulus field_;
  std::vector<Matrix> psi_;
  std::vector<Matrix> phi_;
  Matrix phi_block_;
};

Matrix psi_matrix(int i, int n, PrimeModulus field);
Matrix phi_matrix(int k, int n, PrimeModulus field);
Matrix phi_block_matrix(int n, PrimeModulus field);

/// An element (v_1, ..., v_n) of V^n.
struct KerPhiElement {
  std::vector<Vec> components;

  Vec flatten() const;
  bool is_zero() const;
  static KerPhiElement unflatten(std::span<const Scalar> flat, std::size_t n, std::size_t dim_v);
};

/// Phi(v_1, ..., v_n) = sum_k phi_k(v_k).
Vec apply_phi(const WedgeSpace& ws, const KerPhiElement& e);
/// Dimension of the span of the components.
std::size_t component_span_dim(const WedgeSpace& ws, const KerPhiElement& e);

/// The kernel element v_(abc): component a is v_{cb}, component b is -v_{ca},
/// component c is v_{ba}. Any pairwise distinct labels are accepted; swapping
/// two of them negates the element.
KerPhiElement v_abc(const WedgeSpace& ws, int a, int b, int c);
/// v_(abc) over all a < b < c, in lexicographic order of (a, b, c).
std::vector<KerPhiElement> ker_phi_basis(const WedgeSpace& ws);

/// Coordinate projections, returned in the ambient coordinates.
Vec proj_pi(const WedgeSpace& ws, std::span<const Scalar> x, int j, int i);
Vec proj_pi3(const WedgeSpace& ws, std::span<const Scalar> w, int j, int i, int k);
Vec proj_Pi(const WedgeSpace& ws, std::span<const Scalar> x, int i);
/// Diagonal 0/1 matrix of Pi_i on V.
Matrix Pi_matrix(const WedgeSpace& ws, int i);
/// Pi_i(X) = 0.
bool Pi_vanishes(const WedgeSpace& ws, const Subspace& x, int i);
/// pi_{ji}(X) = 0.
bool pi_vanishes(const WedgeSpace& ws, const Subspace& x, int j, int i);

/// The map V -> V induced by an invertible M on U: v_{ji} = u_j ^ u_i goes to
/// (M u_j) ^ (M u_i). Throws std::invalid_argument for singular M.
Matrix induced_wedge_map(const Matrix& m);

/// V(from) -> V(to) sending v_{ji} to v_{sigma(j) sigma(i)}; sigma is an
/// injective 1-based label map listed as sigma[0] = sigma(1), ...
Matrix relabel_v(const WedgeSpace& from, const WedgeSpace& to, std::span<const int> sigma);

}  // namespace capgrp
