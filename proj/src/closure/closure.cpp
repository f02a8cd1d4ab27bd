#include "capgrp/closure.hpp"

#include <cassert>
#include <numeric>
#include <stdexcept>
#include <string>

namespace capgrp {

namespace {

std::vector<int> all_maps(const WedgeSpace& ws) {
  std::vector<int> family(static_cast<std::size_t>(ws.n()));
  std::iota(family.begin(), family.end(), 1);
  return family;
}

void require_family(std::span<const int> family) {
  if (family.empty()) throw std::invalid_argument("star operators need a nonempty family of maps");
}

void require_in_v(const WedgeSpace& ws, const Subspace& x, const char* what) {
  if (x.ambient_dim() != ws.dim_v() || !(x.field() == ws.field())) {
    throw std::invalid_argument(std::string(what) + ": subspace is not in V(" + std::to_string(ws.n()) + ")");
  }
}

void require_in_w(const WedgeSpace& ws, const Subspace& y, const char* what) {
  if (y.ambient_dim() != ws.dim_w() || !(y.field() == ws.field())) {
    throw std::invalid_argument(std::string(what) + ": subspace is not in W(" + std::to_string(ws.n()) + ")");
  }
}

// Span of phi_k(X) for k in labels; labels may be empty.
Subspace span_of_images(const WedgeSpace& ws, const Subspace& x, std::span<const int> labels) {
  Matrix gens(ws.field(), 0, ws.dim_w());
  for (int k : labels) {
    const Matrix img = x.basis() * ws.phi(k).transpose();
    for (std::size_t r = 0; r < img.rows(); ++r) gens.append_row(img.row(r));
  }
  return Subspace::span(gens);
}

}  // namespace

Subspace star_up(const WedgeSpace& ws, const Subspace& x) { return star_up(ws, x, all_maps(ws)); }

Subspace star_up(const WedgeSpace& ws, const Subspace& x, std::span<const int> family) {
  require_in_v(ws, x, "star_up");
  require_family(family);
  return span_of_images(ws, x, family);
}

Subspace star_down(const WedgeSpace& ws, const Subspace& y) { return star_down(ws, y, all_maps(ws)); }

Subspace star_down(const WedgeSpace& ws, const Subspace& y, std::span<const int> family) {
  require_in_w(ws, y, "star_down");
  require_family(family);
  Subspace acc = preimage(ws.phi(family.front()), y);
  for (std::size_t t = 1; t < family.size() && acc.dim() > 0; ++t) {
    acc = subspace_intersect(acc, preimage(ws.phi(family[t]), y));
  }
  return acc;
}

Subspace closure(const WedgeSpace& ws, const Subspace& x) { return closure(ws, x, all_maps(ws)); }

Subspace closure(const WedgeSpace& ws, const Subspace& x, std::span<const int> family) {
  const auto star = star_up(ws, x, family);
  auto result = star_down(ws, star, family);
  // X* = X*** holds for any family; a mismatch means the linear algebra is broken.
  assert(star_up(ws, result, family) == star);
  return result;
}

bool is_closed(const WedgeSpace& ws, const Subspace& x) { return closure(ws, x) == x; }

bool is_closed(const WedgeSpace& ws, const Subspace& x, std::span<const int> family) {
  return closure(ws, x, family) == x;
}

Subspace interior(const WedgeSpace& ws, const Subspace& y) { return interior(ws, y, all_maps(ws)); }

Subspace interior(const WedgeSpace& ws, const Subspace& y, std::span<const int> family) {
  return star_up(ws, star_down(ws, y, family), family);
}

KernelOverlap kernel_overlap(const WedgeSpace& ws, const Subspace& x) {
  require_in_v(ws, x, "kernel_overlap");
  const auto n = static_cast<std::size_t>(ws.n());
  const auto m = x.dim();
  KernelOverlap out;
  if (m == 0) return out;

  const Matrix b = x.basis().transpose();  // dim_v x m
  std::vector<Matrix> blocks;
  blocks.reserve(n);
  for (int k = 1; k <= ws.n(); ++k) blocks.push_back(ws.phi(k) * b);
  std::vector<const Matrix*> ptrs;
  for (const auto& blk : blocks) ptrs.push_back(&blk);
  const auto coeffs = kernel_basis(Matrix::hstack(ptrs));

  out.dim = coeffs.dim();
  const auto& f = ws.field();
  for (std::size_t r = 0; r < coeffs.dim(); ++r) {
    const auto c = coeffs.basis().row(r);
    KerPhiElement e;
    e.components.assign(n, ws.zero_v());
    for (std::size_t k = 0; k < n; ++k) {
      auto& comp = e.components[k];
      for (std::size_t t = 0; t < m; ++t) {
        const Scalar coef = c[k * m + t];
        if (coef == 0) continue;
        const auto xrow = x.basis().row(t);
        for (std::size_t col = 0; col < comp.size(); ++col) comp[col] = f.fma(comp[col], coef, xrow[col]);
      }
    }
    out.basis.push_back(std::move(e));
  }
  return out;
}

std::vector<PartialOverlap> partial_Z(const WedgeSpace& ws, const Subspace& x) {
  require_in_v(ws, x, "partial_Z");
  const int n = ws.n();
  std::vector<PartialOverlap> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    std::vector<int> later;
    for (int k = i + 1; k <= n; ++k) later.push_back(k);
    const auto tail = span_of_images(ws, x, later);
    auto z = subspace_intersect(x, preimage(ws.phi(i), tail));

    std::vector<std::pair<int, int>> pairs;
    for (int r = i; r <= n; ++r)
      for (int s = r + 1; s <= n; ++s) pairs.emplace_back(s, r);
    const auto d = subspace_intersect(x, ws.coordinate_subspace(pairs)).dim();
    out.push_back({std::move(z), d});
  }
  return out;
}

ClosureReport analyze(const WedgeSpace& ws, const Subspace& x) {
  auto star = star_up(ws, x);
  auto clo = star_down(ws, star);
  const bool closed = clo == x;
  const auto overlap = kernel_overlap(ws, x).dim;
  std::vector<std::size_t> z_dims, d_dims;
  for (const auto& pz : partial_Z(ws, x)) {
    z_dims.push_back(pz.z.dim());
    d_dims.push_back(pz.d);
  }
  return {x, std::move(star), std::move(clo), closed, overlap, std::move(z_dims), std::move(d_dims)};
}

}  // namespace capgrp
