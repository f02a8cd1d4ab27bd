#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "capgrp/subspace.hpp"
#include "capgrp/wedge.hpp"

namespace capgrp {

// Star operators for a family {phi_k : k in family}. The overloads without a
// family use every phi_1, ..., phi_n. Families hold 1-based labels and must be
// nonempty.

/// X* = <phi_k(X) : k in family>, a subspace of W.
Subspace star_up(const WedgeSpace& ws, const Subspace& x);
Subspace star_up(const WedgeSpace& ws, const Subspace& x, std::span<const int> family);

/// Y* = intersection over k in family of phi_k^{-1}(Y), a subspace of V.
Subspace star_down(const WedgeSpace& ws, const Subspace& y);
Subspace star_down(const WedgeSpace& ws, const Subspace& y, std::span<const int> family);

/// X** (increasing, isotone, idempotent).
Subspace closure(const WedgeSpace& ws, const Subspace& x);
Subspace closure(const WedgeSpace& ws, const Subspace& x, std::span<const int> family);
bool is_closed(const WedgeSpace& ws, const Subspace& x);
bool is_closed(const WedgeSpace& ws, const Subspace& x, std::span<const int> family);

/// Y** on W (decreasing, isotone, idempotent).
Subspace interior(const WedgeSpace& ws, const Subspace& y);
Subspace interior(const WedgeSpace& ws, const Subspace& y, std::span<const int> family);

struct KernelOverlap {
  std::size_t dim = 0;
  std::vector<KerPhiElement> basis;
};

/// X^n ∩ ker Phi, solved on the restricted block matrix [phi_1 B | ... | phi_n B]
/// where the columns of B are a basis of X.
KernelOverlap kernel_overlap(const WedgeSpace& ws, const Subspace& x);

struct PartialOverlap {
  Subspace z;     // Z_i = X ∩ phi_i^{-1}(<phi_{i+1}(X), ..., phi_n(X)>)
  std::size_t d;  // dim(X ∩ <v_{sr} : i <= r < s <= n>)
};

/// Z_1 .. Z_n with the matching d_1 .. d_n.
std::vector<PartialOverlap> partial_Z(const WedgeSpace& ws, const Subspace& x);

/// Everything one closure pass learns about X.
struct ClosureReport {
  Subspace input;
  Subspace star;
  Subspace closure;
  bool closed;
  std::size_t overlap_dim;
  std::vector<std::size_t> z_dims;
  std::vector<std::size_t> d_dims;
};

ClosureReport analyze(const WedgeSpace& ws, const Subspace& x);

}  // namespace capgrp
