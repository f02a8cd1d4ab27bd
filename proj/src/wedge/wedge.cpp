#include "capgrp/wedge.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace capgrp {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

void add_signed_v(const WedgeIndexing& idx, const PrimeModulus& f, std::span<Scalar> x, int a, int b, Scalar c) {
  if (a == b || c == 0) return;
  if (a > b) {
    auto& slot = x[idx.v_index(a, b)];
    slot = f.add(slot, c);
  } else {
    auto& slot = x[idx.v_index(b, a)];
    slot = f.sub(slot, c);
  }
}

void require_label(const WedgeIndexing& idx, int i, const char* what) {
  if (i < 1 || i > idx.n()) {
    throw std::invalid_argument(std::string(what) + ": index " + std::to_string(i) + " outside 1.." +
                                std::to_string(idx.n()));
  }
}

Matrix build_psi(const WedgeIndexing& idx, const PrimeModulus& f, int i) {
  Matrix m(f, idx.dim_v(), idx.dim_u());
  Vec col(idx.dim_v());
  for (int j = 1; j <= idx.n(); ++j) {
    std::fill(col.begin(), col.end(), 0);
    add_signed_v(idx, f, col, j, i, 1);
    for (std::size_t r = 0; r < col.size(); ++r) m.at(r, static_cast<std::size_t>(j - 1)) = col[r];
  }
  return m;
}

Matrix build_phi(const WedgeIndexing& idx, const PrimeModulus& f, int k) {
  Matrix m(f, idx.dim_w(), idx.dim_v());
  for (std::size_t c = 0; c < idx.dim_v(); ++c) {
    const auto [j, i] = idx.v_pair(c);
    if (k >= i) {
      m.at(idx.w_index(j, i, k), c) = 1;
    } else {
      m.at(idx.w_index(j, k, i), c) = 1;
      m.at(idx.w_index(i, k, j), c) = f.neg(1);
    }
  }
  return m;
}

}  // namespace

WedgeIndexing::WedgeIndexing(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("generator count must be at least 1");
  const auto nn = static_cast<std::size_t>(n);
  v_lookup_.assign(nn * nn, kNone);
  w_lookup_.assign(nn * nn * nn, kNone);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      v_lookup_[static_cast<std::size_t>(j - 1) * nn + static_cast<std::size_t>(i - 1)] = v_pairs_.size();
      v_pairs_.emplace_back(j, i);
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (int k = i; k <= n; ++k) {
        const auto key = (static_cast<std::size_t>(j - 1) * nn + static_cast<std::size_t>(i - 1)) * nn +
                         static_cast<std::size_t>(k - 1);
        w_lookup_[key] = w_triples_.size();
        w_triples_.push_back({j, i, k});
      }
    }
  }
}

std::size_t WedgeIndexing::v_index(int j, int i) const {
  if (!valid_v(j, i)) {
    throw std::invalid_argument("v_{" + std::to_string(j) + "," + std::to_string(i) +
                                "} is not a basis vector of V(" + std::to_string(n_) + ")");
  }
  const auto nn = static_cast<std::size_t>(n_);
  return v_lookup_[static_cast<std::size_t>(j - 1) * nn + static_cast<std::size_t>(i - 1)];
}

std::size_t WedgeIndexing::w_index(int j, int i, int k) const {
  if (!valid_w(j, i, k)) {
    throw std::invalid_argument("w_{" + std::to_string(j) + "," + std::to_string(i) + "," + std::to_string(k) +
                                "} is not a basis vector of W(" + std::to_string(n_) + ")");
  }
  const auto nn = static_cast<std::size_t>(n_);
  return w_lookup_[(static_cast<std::size_t>(j - 1) * nn + static_cast<std::size_t>(i - 1)) * nn +
                   static_cast<std::size_t>(k - 1)];
}

WedgeSpace::WedgeSpace(int n, PrimeModulus field)
    : idx_(n), field_(field), phi_block_(field, 0, 0) {
  psi_.reserve(static_cast<std::size_t>(n));
  phi_.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    psi_.push_back(build_psi(idx_, field_, k));
    phi_.push_back(build_phi(idx_, field_, k));
  }
  std::vector<const Matrix*> blocks;
  for (const auto& m : phi_) blocks.push_back(&m);
  phi_block_ = Matrix::hstack(blocks);
}

const Matrix& WedgeSpace::psi(int i) const {
  require_label(idx_, i, "psi");
  return psi_[static_cast<std::size_t>(i - 1)];
}

const Matrix& WedgeSpace::phi(int k) const {
  require_label(idx_, k, "phi");
  return phi_[static_cast<std::size_t>(k - 1)];
}

Vec WedgeSpace::v(int a, int b) const {
  require_label(idx_, a, "v");
  require_label(idx_, b, "v");
  auto x = zero_v();
  add_signed_v(idx_, field_, x, a, b, 1);
  return x;
}

Vec WedgeSpace::w(int j, int i, int k) const {
  auto x = zero_w();
  x[idx_.w_index(j, i, k)] = 1;
  return x;
}

Scalar WedgeSpace::v_coeff(std::span<const Scalar> x, int a, int b) const {
  require_label(idx_, a, "v_coeff");
  require_label(idx_, b, "v_coeff");
  if (a == b) return 0;
  return a > b ? x[idx_.v_index(a, b)] : field_.neg(x[idx_.v_index(b, a)]);
}

void WedgeSpace::add_v(std::span<Scalar> x, int a, int b, Scalar c) const {
  require_label(idx_, a, "add_v");
  require_label(idx_, b, "add_v");
  add_signed_v(idx_, field_, x, a, b, c);
}

Subspace WedgeSpace::coordinate_subspace(const std::vector<std::pair<int, int>>& pairs) const {
  std::vector<Vec> gens;
  gens.reserve(pairs.size());
  for (const auto& [j, i] : pairs) {
    auto x = zero_v();
    x[idx_.v_index(j, i)] = 1;
    gens.push_back(std::move(x));
  }
  return Subspace::span(field_, dim_v(), gens);
}

Matrix psi_matrix(int i, int n, PrimeModulus field) {
  const WedgeIndexing idx(n);
  require_label(idx, i, "psi_matrix");
  return build_psi(idx, field, i);
}

Matrix phi_matrix(int k, int n, PrimeModulus field) {
  const WedgeIndexing idx(n);
  require_label(idx, k, "phi_matrix");
  return build_phi(idx, field, k);
}

Matrix phi_block_matrix(int n, PrimeModulus field) { return WedgeSpace(n, field).phi_block(); }

Vec KerPhiElement::flatten() const {
  Vec out;
  for (const auto& c : components) out.insert(out.end(), c.begin(), c.end());
  return out;
}

bool KerPhiElement::is_zero() const {
  return std::all_of(components.begin(), components.end(), [](const Vec& c) {
    return std::all_of(c.begin(), c.end(), [](Scalar s) { return s == 0; });
  });
}

KerPhiElement KerPhiElement::unflatten(std::span<const Scalar> flat, std::size_t n, std::size_t dim_v) {
  if (flat.size() != n * dim_v) throw std::invalid_argument("flattened V^n element has the wrong length");
  KerPhiElement e;
  e.components.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto first = flat.begin() + static_cast<std::ptrdiff_t>(k * dim_v);
    e.components.emplace_back(first, first + static_cast<std::ptrdiff_t>(dim_v));
  }
  return e;
}

Vec apply_phi(const WedgeSpace& ws, const KerPhiElement& e) {
  if (e.components.size() != static_cast<std::size_t>(ws.n())) {
    throw std::invalid_argument("V^n element has the wrong number of components");
  }
  return ws.phi_block().apply(e.flatten());
}

std::size_t component_span_dim(const WedgeSpace& ws, const KerPhiElement& e) {
  return rank(Matrix::from_vectors(ws.field(), ws.dim_v(), e.components));
}

KerPhiElement v_abc(const WedgeSpace& ws, int a, int b, int c) {
  const int n = ws.n();
  for (int x : {a, b, c}) {
    if (x < 1 || x > n) throw std::invalid_argument("v_(abc): label outside 1..n");
  }
  if (a == b || b == c || a == c) throw std::invalid_argument("v_(abc): labels must be pairwise distinct");
  KerPhiElement e;
  e.components.assign(static_cast<std::size_t>(n), ws.zero_v());
  const auto& f = ws.field();
  ws.add_v(e.components[static_cast<std::size_t>(a - 1)], c, b, 1);
  ws.add_v(e.components[static_cast<std::size_t>(b - 1)], c, a, f.neg(1));
  ws.add_v(e.components[static_cast<std::size_t>(c - 1)], b, a, 1);
  return e;
}

std::vector<KerPhiElement> ker_phi_basis(const WedgeSpace& ws) {
  std::vector<KerPhiElement> out;
  const int n = ws.n();
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c) out.push_back(v_abc(ws, a, b, c));
  return out;
}

Vec proj_pi(const WedgeSpace& ws, std::span<const Scalar> x, int j, int i) {
  if (x.size() != ws.dim_v()) throw std::invalid_argument("proj_pi: vector is not in V");
  const auto col = ws.indexing().v_index(j, i);
  auto out = ws.zero_v();
  out[col] = x[col];
  return out;
}

Vec proj_pi3(const WedgeSpace& ws, std::span<const Scalar> w, int j, int i, int k) {
  if (w.size() != ws.dim_w()) throw std::invalid_argument("proj_pi3: vector is not in W");
  const auto col = ws.indexing().w_index(j, i, k);
  auto out = ws.zero_w();
  out[col] = w[col];
  return out;
}

Matrix Pi_matrix(const WedgeSpace& ws, int i) {
  require_label(ws.indexing(), i, "Pi");
  Matrix m(ws.field(), ws.dim_v(), ws.dim_v());
  for (std::size_t c = 0; c < ws.dim_v(); ++c) {
    const auto [a, b] = ws.indexing().v_pair(c);
    if (a == i || b == i) m.at(c, c) = 1;
  }
  return m;
}

Vec proj_Pi(const WedgeSpace& ws, std::span<const Scalar> x, int i) {
  if (x.size() != ws.dim_v()) throw std::invalid_argument("proj_Pi: vector is not in V");
  return Pi_matrix(ws, i).apply(x);
}

bool Pi_vanishes(const WedgeSpace& ws, const Subspace& x, int i) {
  return image(Pi_matrix(ws, i), x).dim() == 0;
}

bool pi_vanishes(const WedgeSpace& ws, const Subspace& x, int j, int i) {
  const auto col = ws.indexing().v_index(j, i);
  for (std::size_t r = 0; r < x.dim(); ++r) {
    if (x.basis().at(r, col) != 0) return false;
  }
  return true;
}

Matrix induced_wedge_map(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) throw std::invalid_argument("induced_wedge_map: matrix must be square");
  if (rank(m) != m.rows()) throw std::invalid_argument("induced_wedge_map: matrix is singular");
  const int n = static_cast<int>(m.rows());
  const WedgeIndexing idx(n);
  const auto& f = m.field();
  Matrix out(f, idx.dim_v(), idx.dim_v());
  Vec col(idx.dim_v());
  for (std::size_t c = 0; c < idx.dim_v(); ++c) {
    const auto [j, i] = idx.v_pair(c);
    std::fill(col.begin(), col.end(), 0);
    for (int a = 1; a <= n; ++a) {
      const Scalar maj = m.at(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(j - 1));
      if (maj == 0) continue;
      for (int b = 1; b <= n; ++b) {
        const Scalar mbi = m.at(static_cast<std::size_t>(b - 1), static_cast<std::size_t>(i - 1));
        if (mbi != 0) add_signed_v(idx, f, col, a, b, f.mul(maj, mbi));
      }
    }
    for (std::size_t r = 0; r < col.size(); ++r) out.at(r, c) = col[r];
  }
  return out;
}

Matrix relabel_v(const WedgeSpace& from, const WedgeSpace& to, std::span<const int> sigma) {
  if (sigma.size() != static_cast<std::size_t>(from.n())) throw std::invalid_argument("relabel_v: sigma has wrong length");
  std::vector<bool> used(static_cast<std::size_t>(to.n()) + 1, false);
  for (int s : sigma) {
    if (s < 1 || s > to.n() || used[static_cast<std::size_t>(s)]) {
      throw std::invalid_argument("relabel_v: sigma must be an injective map into 1..n");
    }
    used[static_cast<std::size_t>(s)] = true;
  }
  Matrix out(from.field(), to.dim_v(), from.dim_v());
  Vec col(to.dim_v());
  for (std::size_t c = 0; c < from.dim_v(); ++c) {
    const auto [j, i] = from.indexing().v_pair(c);
    std::fill(col.begin(), col.end(), 0);
    to.add_v(col, sigma[static_cast<std::size_t>(j - 1)], sigma[static_cast<std::size_t>(i - 1)], 1);
    for (std::size_t r = 0; r < col.size(); ++r) out.at(r, c) = col[r];
  }
  return out;
}

}  // namespace capgrp
