#include "capgrp/capability.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "capgrp/parallel.hpp"

namespace capgrp {

namespace {

std::size_t lead_of(const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return i;
  return v.size();
}

Matrix inverse(const Matrix& a) {
  const auto n = a.rows();
  const auto& f = a.field();
  const auto id = Matrix::identity(f, n);
  const auto r = rref(Matrix::hstack({&a, &id}));
  if (r.rank < n || r.pivots[n - 1] >= n) throw std::invalid_argument("matrix is singular");
  Matrix inv(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = r.reduced.at(i, n + j);
  return inv;
}

void require_point_size(const WedgeSpace& ws, const ProjectivePoint& pt, const char* what) {
  if (pt.size() != static_cast<std::size_t>(ws.n())) {
    throw std::invalid_argument(std::string(what) + ": point has " + std::to_string(pt.size()) +
                                " coordinates, expected " + std::to_string(ws.n()));
  }
}

void require_n4(const WedgeSpace& ws, const char* what) {
  if (ws.n() != 4) throw std::invalid_argument(std::string(what) + " is only defined for n = 4");
}

// The generators v_i = sum_j alpha_j v_{ji} of Psi(pt), i = 1..n.
std::vector<Vec> psi_generators(const WedgeSpace& ws, const ProjectivePoint& pt) {
  const int n = ws.n();
  std::vector<Vec> gens;
  gens.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    auto v = ws.zero_v();
    for (int j = 1; j <= n; ++j) {
      const auto a = pt[static_cast<std::size_t>(j - 1)];
      if (a != 0 && j != i) ws.add_v(v, j, i, a);
    }
    gens.push_back(std::move(v));
  }
  return gens;
}

std::vector<Vec> upsilon_generators(const WedgeSpace& ws, const ProjectivePoint& q) {
  const auto& f = ws.field();
  const Scalar a = q[0], b = q[1], c = q[2], d = q[3];
  std::vector<Vec> g(4, ws.zero_v());
  ws.add_v(g[0], 3, 2, a);
  ws.add_v(g[0], 4, 2, b);
  ws.add_v(g[0], 4, 3, c);
  ws.add_v(g[1], 3, 1, f.neg(a));
  ws.add_v(g[1], 4, 1, f.neg(b));
  ws.add_v(g[1], 4, 3, d);
  ws.add_v(g[2], 2, 1, a);
  ws.add_v(g[2], 4, 1, f.neg(c));
  ws.add_v(g[2], 4, 2, f.neg(d));
  ws.add_v(g[3], 2, 1, b);
  ws.add_v(g[3], 3, 1, c);
  ws.add_v(g[3], 3, 2, d);
  return g;
}

}  // namespace

ProjectivePoint::ProjectivePoint(const PrimeModulus& field, Vec coords) : coords_(std::move(coords)) {
  for (auto& c : coords_) c = field.reduce(c);
  lead_ = lead_of(coords_);
  if (lead_ == coords_.size()) throw std::invalid_argument("projective point needs a nonzero coordinate");
  const Scalar s = field.inv(coords_[lead_]);
  for (auto& c : coords_) c = field.mul(c, s);
}

std::size_t projective_point_count(int n, const PrimeModulus& field) {
  std::size_t count = 0, pw = 1;
  for (int i = 0; i < n; ++i) {
    count += pw;
    pw *= field.value();
  }
  return count;
}

std::vector<ProjectivePoint> projective_points(int n, const PrimeModulus& field) {
  if (n < 1) throw std::invalid_argument("projective space needs at least one coordinate");
  std::vector<ProjectivePoint> out;
  out.reserve(projective_point_count(n, field));
  const auto len = static_cast<std::size_t>(n);
  for (std::size_t lead = 0; lead < len; ++lead) {
    Vec v(len, 0);
    v[lead] = 1;
    std::size_t total = 1;
    for (std::size_t k = lead + 1; k < len; ++k) total *= field.value();
    for (std::size_t t = 0; t < total; ++t) {
      out.emplace_back(field, v);
      // The tail counts in base p with the last coordinate least significant.
      for (std::size_t pos = len; pos-- > lead + 1;) {
        if (++v[pos] < field.value()) break;
        v[pos] = 0;
      }
    }
  }
  return out;
}

std::string_view to_string(VerdictReason r) {
  switch (r) {
    case VerdictReason::CyclicNontrivial: return "cyclic-nontrivial";
    case VerdictReason::Closed: return "closed";
    case VerdictReason::NotClosed: return "not-closed";
    case VerdictReason::TrivialGroup: return "trivial-group";
  }
  return "unknown";
}

Subspace presentation_to_subspace(const GroupPresentation& pres) {
  if (pres.n < 2) throw std::invalid_argument("a commutator subspace needs at least two generators");
  const WedgeIndexing idx(pres.n);
  const auto& f = pres.p;
  std::vector<Vec> gens;
  gens.reserve(pres.relators.size());
  for (std::size_t r = 0; r < pres.relators.size(); ++r) {
    Vec v(idx.dim_v(), 0);
    for (const auto& cp : pres.relators[r]) {
      if (!idx.valid_v(cp.j, cp.i)) {
        throw std::invalid_argument("relator " + std::to_string(r + 1) + ": commutator [x" + std::to_string(cp.j) +
                                    ", x" + std::to_string(cp.i) + "] needs 1 <= i < j <= " + std::to_string(pres.n));
      }
      auto& slot = v[idx.v_index(cp.j, cp.i)];
      slot = f.add(slot, f.reduce(cp.e));
    }
    gens.push_back(std::move(v));
  }
  return Subspace::span(f, idx.dim_v(), gens);
}

CapabilityVerdict verdict_for_subspace(const WedgeSpace& ws, const Subspace& x, unsigned threads) {
  if (ws.n() < 2) throw std::invalid_argument("verdict_for_subspace needs n >= 2");
  CapabilityVerdict v;
  v.report = analyze(ws, x);
  v.capable = v.report->closed;
  v.reason = v.capable ? VerdictReason::Closed : VerdictReason::NotClosed;
  v.central_points = central_points(ws, x, threads);

  if (ws.n() > 2 && !v.central_points.empty()) {
    auto step = reduce_central(ws, x, threads);
    while (step) {
      v.reduced_chain.push_back(*step);
      if (step->n <= 2) break;
      const WedgeSpace smaller(step->n, ws.field());
      step = reduce_central(smaller, step->x, threads);
    }
  }
  return v;
}

CapabilityVerdict is_capable(const GroupPresentation& pres) {
  if (pres.n < 0) throw std::invalid_argument("generator count must be nonnegative");
  if (pres.n == 0) return {true, VerdictReason::TrivialGroup, std::nullopt, {}, {}};
  if (pres.n == 1) {
    for (const auto& rel : pres.relators)
      if (!rel.empty()) throw std::invalid_argument("a one-generator presentation has no commutators");
    return {false, VerdictReason::CyclicNontrivial, std::nullopt, {}, {}};
  }
  const WedgeSpace ws(pres.n, pres.p);
  return verdict_for_subspace(ws, presentation_to_subspace(pres));
}

bool necessary_rank_condition(Count n, Count m) { return n <= 2 * m + binom(m, 2); }

bool sufficient_rank_condition(Count n, Count m) {
  const Count dim_v = binom(n, 2);
  if (m > dim_v) {
    throw std::invalid_argument("rank of [G,G] = " + std::to_string(m) + " exceeds C(" + std::to_string(n) + ",2)");
  }
  return f_of(dim_v - m + 1) < n;
}

Subspace psi_subspace(const WedgeSpace& ws, const ProjectivePoint& pt) {
  require_point_size(ws, pt, "psi_subspace");
  return Subspace::span(ws.field(), ws.dim_v(), psi_generators(ws, pt));
}

std::vector<ProjectivePoint> central_points(const WedgeSpace& ws, const Subspace& x, unsigned threads) {
  if (ws.n() < 2) throw std::invalid_argument("central_points needs n >= 2");
  if (x.ambient_dim() != ws.dim_v()) throw std::invalid_argument("central_points: subspace is not in V(n)");
  std::vector<ProjectivePoint> out;
  if (x.dim() + 1 < static_cast<std::size_t>(ws.n())) return out;
  const auto pts = projective_points(ws.n(), ws.field());
  const auto hits = parallel_ordered(pts.size(), threads, [&](std::size_t k) {
    for (const auto& g : psi_generators(ws, pts[k]))
      if (!x.contains(g)) return false;
    return true;
  });
  for (std::size_t k = 0; k < pts.size(); ++k)
    if (hits[k]) out.push_back(pts[k]);
  return out;
}

std::optional<CentralReduction> reduce_central(const WedgeSpace& ws, const Subspace& x, unsigned threads) {
  const int n = ws.n();
  if (n < 3) throw std::invalid_argument("reduce_central needs n > 2");
  const auto pts = central_points(ws, x, threads);
  if (pts.empty()) return std::nullopt;
  const auto& u = pts.front();
  const auto& f = ws.field();
  const auto len = static_cast<std::size_t>(n);

  // A has the coordinate vectors e_k (k != lead) as its first n-1 columns and u
  // last, so A^{-1} sends u to u_n.
  Matrix a(f, len, len);
  std::size_t col = 0;
  for (std::size_t k = 0; k < len; ++k) {
    if (k == u.lead()) continue;
    a.at(k, col++) = 1;
  }
  for (std::size_t k = 0; k < len; ++k) a.at(k, len - 1) = u[k];
  const auto moved = image(induced_wedge_map(inverse(a)), x);

  std::vector<std::pair<int, int>> last;
  for (int i = 1; i < n; ++i) last.emplace_back(n, i);
  if (!moved.contains(ws.coordinate_subspace(last))) {
    throw std::logic_error("reduce_central: transformed subspace lost the central directions");
  }
  const WedgeSpace smaller(n - 1, f);
  std::vector<int> keep(static_cast<std::size_t>(n - 1));
  std::iota(keep.begin(), keep.end(), 1);
  auto reduced = image(relabel_v(smaller, ws, keep).transpose(), moved);
  if (reduced.dim() + static_cast<std::size_t>(n - 1) != x.dim()) {
    throw std::logic_error("reduce_central: dimension did not drop by n - 1");
  }
  return CentralReduction{n - 1, std::move(reduced)};
}

Subspace upsilon_subspace(const WedgeSpace& ws, const ProjectivePoint& q) {
  require_n4(ws, "upsilon_subspace");
  if (q.size() != 4) throw std::invalid_argument("upsilon_subspace: q needs four coordinates");
  return Subspace::span(ws.field(), ws.dim_v(), upsilon_generators(ws, q));
}

N4Classification classify_n4(const WedgeSpace& ws, const Subspace& x) {
  require_n4(ws, "classify_n4");
  if (x.ambient_dim() != ws.dim_v() || x.dim() != 5) {
    throw std::invalid_argument("classify_n4 expects a 5-dimensional subspace of V(4), got dimension " +
                                std::to_string(x.dim()));
  }
  N4Classification out;
  for (const auto& pt : projective_points(4, ws.field())) {
    const auto gens = psi_generators(ws, pt);
    if (std::all_of(gens.begin(), gens.end(), [&](const Vec& g) { return x.contains(g); })) {
      out.psi_route = true;
      out.psi_witness = pt;
      break;
    }
  }
  for (const auto& q : projective_points(4, ws.field())) {
    const auto gens = upsilon_generators(ws, q);
    if (std::all_of(gens.begin(), gens.end(), [&](const Vec& g) { return x.contains(g); })) {
      out.upsilon_route = true;
      out.upsilon_witness = q;
      break;
    }
  }
  out.overlap_route = kernel_overlap(ws, x).dim > 0;
  out.closed = is_closed(ws, x);
  return out;
}

KerPhiElement overlap_witness(const WedgeSpace& ws, const ProjectivePoint& pt, std::span<const Scalar> v) {
  require_point_size(ws, pt, "overlap_witness");
  if (v.size() != ws.dim_v()) throw std::invalid_argument("overlap_witness: v is not in V(n)");
  const auto gens = psi_generators(ws, pt);
  if (Subspace::span(ws.field(), ws.dim_v(), gens).contains(v)) {
    throw std::invalid_argument("overlap_witness: v lies in Psi(pt), so the witness is zero");
  }
  const auto& f = ws.field();
  const int n = ws.n();
  KerPhiElement e;
  e.components.reserve(static_cast<std::size_t>(n));
  for (int u = 1; u <= n; ++u) {
    Vec comp(ws.dim_v(), 0);
    const auto au = pt[static_cast<std::size_t>(u - 1)];
    for (std::size_t c = 0; c < comp.size(); ++c) comp[c] = f.mul(au, v[c]);
    for (int j = 1; j <= n; ++j) {
      const auto aju = ws.v_coeff(v, j, u);
      if (aju == 0) continue;
      const auto& g = gens[static_cast<std::size_t>(j - 1)];
      for (std::size_t c = 0; c < comp.size(); ++c) comp[c] = f.fma(comp[c], aju, g[c]);
    }
    e.components.push_back(std::move(comp));
  }
  return e;
}

ProjectivePoint converse_n4_point(const WedgeSpace& ws, const ProjectivePoint& q, std::span<const Scalar> v) {
  require_n4(ws, "converse_n4_point");
  if (q.size() != 4) throw std::invalid_argument("converse_n4_point: q needs four coordinates");
  if (v.size() != ws.dim_v()) throw std::invalid_argument("converse_n4_point: v is not in V(4)");
  const auto& f = ws.field();
  const Scalar a = q[0], b = q[1], c = q[2], d = q[3];
  auto al = [&](int j, int i) { return ws.v_coeff(v, j, i); };
  auto comb = [&](Scalar x1, Scalar y1, Scalar x2, Scalar y2, Scalar x3, Scalar y3) {
    return f.add(f.sub(f.mul(x1, y1), f.mul(x2, y2)), f.mul(x3, y3));
  };
  Vec beta{comb(a, al(4, 1), b, al(3, 1), c, al(2, 1)), comb(a, al(4, 2), b, al(3, 2), d, al(2, 1)),
           comb(a, al(4, 3), c, al(3, 2), d, al(3, 1)), comb(b, al(4, 3), c, al(4, 2), d, al(4, 1))};
  if (std::all_of(beta.begin(), beta.end(), [](Scalar s) { return s == 0; })) {
    throw std::invalid_argument("converse_n4_point: v lies in Upsilon(q), every beta vanishes");
  }
  return ProjectivePoint(f, std::move(beta));
}

}  // namespace capgrp
