#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "capgrp/capability.hpp"
#include "support.hpp"

using namespace capgrp;
using capgrp::testing::Rng;

namespace {

Subspace extra_special(const WedgeSpace& ws) {
  auto last = ws.v(2, 1);
  ws.add_v(last, 4, 3, ws.field().neg(1));
  return Subspace::span(ws.field(), ws.dim_v(), {ws.v(3, 1), ws.v(4, 1), ws.v(3, 2), ws.v(4, 2), last});
}

ProjectivePoint pt(const PrimeModulus& f, Vec c) { return ProjectivePoint(f, std::move(c)); }

Subspace random_point_subspace(Rng& rng, const WedgeSpace& ws) {
  Vec a;
  do a = rng.vec(ws.field(), static_cast<std::size_t>(ws.n()));
  while (std::all_of(a.begin(), a.end(), [](Scalar s) { return s == 0; }));
  return psi_subspace(ws, ProjectivePoint(ws.field(), a));
}

// A model of the class-2 exponent-p group with commutator relations X:
// pairs (a, c) with a in GF(p)^n, c in V/X, and
// (a, c)(b, d) = (a + b, c + d + a^b / 2).
struct BaerGroup {
  const WedgeSpace& ws;
  const Subspace& x;

  Vec wedge(const Vec& a, const Vec& b) const {
    auto out = ws.zero_v();
    const auto& f = ws.field();
    for (int j = 1; j <= ws.n(); ++j)
      for (int i = 1; i < j; ++i) {
        const auto c = f.sub(f.mul(a[j - 1], b[i - 1]), f.mul(a[i - 1], b[j - 1]));
        out[ws.indexing().v_index(j, i)] = c;
      }
    return out;
  }

  std::pair<Vec, Vec> mul(const std::pair<Vec, Vec>& g, const std::pair<Vec, Vec>& h) const {
    const auto& f = ws.field();
    Vec a = g.first;
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = f.add(a[k], h.first[k]);
    const auto half = f.inv(2);
    const auto w = wedge(g.first, h.first);
    Vec c(ws.dim_v());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = f.add(f.add(g.second[k], h.second[k]), f.mul(half, w[k]));
    return {a, x.reduce(c)};
  }

  bool central(const Vec& a) const {
    const std::pair<Vec, Vec> g{a, ws.zero_v()};
    for (int k = 1; k <= ws.n(); ++k) {
      Vec e(static_cast<std::size_t>(ws.n()), 0);
      e[static_cast<std::size_t>(k - 1)] = 1;
      const std::pair<Vec, Vec> h{e, ws.zero_v()};
      if (mul(g, h) != mul(h, g)) return false;
    }
    return true;
  }
};

}  // namespace

TEST_CASE("presentation to subspace") {
  const PrimeModulus f(5);
  const WedgeSpace ws(4, f);
  CHECK(presentation_to_subspace({f, 4, {{{2, 1, 1}}}}) == Subspace::span(f, 6, {ws.v(2, 1)}));
  auto x = ws.v(2, 1);
  ws.add_v(x, 4, 3, f.neg(1));
  CHECK(presentation_to_subspace({f, 4, {{{2, 1, 1}, {4, 3, -1}}}}) == Subspace::span(f, 6, {x}));
  CHECK(presentation_to_subspace({f, 4, {}}).dim() == 0);
  CHECK_THROWS_AS(presentation_to_subspace({f, 4, {{{1, 2, 1}}}}), std::invalid_argument);
  CHECK_THROWS_AS(presentation_to_subspace({f, 4, {{{5, 1, 1}}}}), std::invalid_argument);
  CHECK_THROWS_AS(presentation_to_subspace({f, 1, {}}), std::invalid_argument);
}

TEST_CASE("capability verdict examples") {
  const PrimeModulus f3(3);
  auto v = is_capable({f3, 2, {}});
  CHECK(v.capable);
  CHECK(v.reason == VerdictReason::Closed);
  CHECK(v.report.has_value());

  for (int p : {3, 5, 7, 11}) {
    const PrimeModulus f(p);
    v = is_capable({f, 2, {{{2, 1, 1}}}});
    CHECK(v.capable);
    CHECK(v.reason == VerdictReason::Closed);

    v = is_capable({f, 4, {{{3, 1, 1}}, {{4, 1, 1}}, {{3, 2, 1}}, {{4, 2, 1}}, {{2, 1, 1}, {4, 3, -1}}}});
    CHECK_FALSE(v.capable);
    CHECK(v.reason == VerdictReason::NotClosed);
    CHECK(v.central_points.empty());
    CHECK(v.reduced_chain.empty());
    CHECK(v.report->closure.dim() == 6);
  }

  v = is_capable({f3, 1, {}});
  CHECK_FALSE(v.capable);
  CHECK(v.reason == VerdictReason::CyclicNontrivial);
  CHECK_FALSE(v.report.has_value());
  v = is_capable({f3, 0, {}});
  CHECK(v.capable);
  CHECK(v.reason == VerdictReason::TrivialGroup);
  CHECK(to_string(VerdictReason::NotClosed) == "not-closed");
}

TEST_CASE("rank conditions") {
  CHECK_FALSE(necessary_rank_condition(4, 1));
  CHECK(necessary_rank_condition(2, 1));
  CHECK_FALSE(necessary_rank_condition(25, 2));
  CHECK(sufficient_rank_condition(4, 3));
  CHECK_FALSE(sufficient_rank_condition(4, 1));
  CHECK(sufficient_rank_condition(3, 1));
  CHECK_THROWS_AS(sufficient_rank_condition(3, 4), std::invalid_argument);
}

TEST_CASE("projective points") {
  for (int p : {3, 5}) {
    const PrimeModulus f(p);
    for (int n = 1; n <= 4; ++n) {
      const auto pts = projective_points(n, f);
      CHECK(pts.size() == projective_point_count(n, f));
      std::set<Vec> seen;
      for (const auto& q : pts) {
        CHECK(q[q.lead()] == 1);
        seen.insert(q.coords());
      }
      CHECK(seen.size() == pts.size());
      for (std::size_t k = 1; k < pts.size(); ++k) {
        const auto& a = pts[k - 1];
        const auto& b = pts[k];
        CHECK((a.lead() < b.lead() || (a.lead() == b.lead() && a.coords() < b.coords())));
      }
    }
  }
  const PrimeModulus f(5);
  CHECK(pt(f, {0, 2, 4}).coords() == Vec{0, 1, 2});
  CHECK(pt(f, {3, 1}) == pt(f, {1, 2}));
  CHECK_THROWS_AS(pt(f, {0, 0}), std::invalid_argument);
  CHECK(projective_points(3, PrimeModulus(3)).front().coords() == Vec{1, 0, 0});
  CHECK(projective_points(3, PrimeModulus(3)).back().coords() == Vec{0, 0, 1});
}

TEST_CASE("psi subspaces") {
  const PrimeModulus f(3);
  const WedgeSpace w3(3, f);
  CHECK(psi_subspace(w3, pt(f, {1, 0, 0})) == Subspace::span(f, 3, {w3.v(2, 1), w3.v(3, 1)}));

  for (int p : {3, 5}) {
    const PrimeModulus fp(p);
    for (int n = 3; n <= 5; ++n) {
      const WedgeSpace ws(n, fp);
      const auto pts = projective_points(n, fp);
      std::set<Vec> keys;
      for (const auto& q : pts) {
        const auto s = psi_subspace(ws, q);
        CHECK(s.dim() == static_cast<std::size_t>(n - 1));
        Vec key;
        for (const auto& r : s.vectors()) key.insert(key.end(), r.begin(), r.end());
        keys.insert(key);
        CHECK(kernel_overlap(ws, s).dim == 0);
        for (int i = 1; i <= n; ++i) {
          if (q[static_cast<std::size_t>(i - 1)] == 0) continue;
          CHECK(subspace_intersect(s, kernel_basis(Pi_matrix(ws, i))).dim() == 0);
        }
      }
      CHECK(keys.size() == pts.size());
    }
  }
}

TEST_CASE("central points") {
  const PrimeModulus f(3);
  const WedgeSpace w3(3, f);
  auto c = central_points(w3, Subspace::span(f, 3, {w3.v(2, 1), w3.v(3, 1)}));
  REQUIRE(c.size() == 1);
  CHECK(c[0] == pt(f, {1, 0, 0}));
  CHECK(central_points(w3, Subspace::span(f, 3, {w3.v(2, 1)})).empty());
  CHECK(central_points(w3, w3.full_v()).size() == 13);
  CHECK(central_points(w3, w3.full_v(), 3).size() == 13);
}

TEST_CASE("central points match the group center") {
  Rng rng(41);
  for (int p : {3, 5}) {
    const PrimeModulus f(p);
    for (int n = 2; n <= 4; ++n) {
      const WedgeSpace ws(n, f);
      for (int trial = 0; trial < 15; ++trial) {
        auto X = rng.sparse_subspace(f, ws.dim_v(), rng.below(ws.dim_v() + 1));
        if (trial % 3 == 0) X = subspace_sum(X, random_point_subspace(rng, ws));
        const BaerGroup g{ws, X};
        std::vector<ProjectivePoint> from_group;
        for (const auto& q : projective_points(n, f))
          if (g.central(q.coords())) from_group.push_back(q);
        CHECK(from_group == central_points(ws, X));
      }
    }
  }
}

TEST_CASE("central reduction") {
  const PrimeModulus f(3);
  const WedgeSpace w3(3, f), w4(4, f);
  auto r = reduce_central(w3, Subspace::span(f, 3, {w3.v(3, 1), w3.v(3, 2)}));
  REQUIRE(r.has_value());
  CHECK(r->n == 2);
  CHECK(r->x.dim() == 0);
  CHECK_FALSE(reduce_central(w4, extra_special(w4)).has_value());
  r = reduce_central(w4, w4.full_v());
  REQUIRE(r.has_value());
  CHECK(r->n == 3);
  CHECK(r->x == WedgeSpace(3, f).full_v());
  CHECK_THROWS_AS(reduce_central(WedgeSpace(2, f), Subspace::zero(f, 1)), std::invalid_argument);

  Rng rng(42);
  for (int p : {3, 5}) {
    const PrimeModulus fp(p);
    for (int n = 3; n <= 5; ++n) {
      const WedgeSpace ws(n, fp);
      const WedgeSpace small(n - 1, fp);
      for (int trial = 0; trial < 12; ++trial) {
        const auto X =
            subspace_sum(random_point_subspace(rng, ws), rng.sparse_subspace(fp, ws.dim_v(), rng.below(ws.dim_v())));
        const auto red = reduce_central(ws, X);
        REQUIRE(red.has_value());
        CHECK(red->x.dim() + static_cast<std::size_t>(n - 1) == X.dim());
        CHECK(is_closed(ws, X) == is_closed(small, red->x));
      }
    }
  }
}

TEST_CASE("cancelling u_n both ways") {
  Rng rng(43);
  const PrimeModulus f(5);
  for (int n = 3; n <= 5; ++n) {
    const WedgeSpace ws(n, f), small(n - 1, f);
    std::vector<int> keep;
    for (int k = 1; k < n; ++k) keep.push_back(k);
    const auto R = relabel_v(small, ws, keep);
    std::vector<std::pair<int, int>> last;
    for (int i = 1; i < n; ++i) last.emplace_back(n, i);
    for (int trial = 0; trial < 20; ++trial) {
      const auto Xs = rng.sparse_subspace(f, small.dim_v(), rng.below(small.dim_v() + 1));
      const auto X = image(R, Xs);
      CHECK(Pi_vanishes(ws, X, n));
      const auto Xp = subspace_sum(X, ws.coordinate_subspace(last));
      CHECK(is_closed(ws, Xp) == is_closed(small, Xs));
      CHECK(is_closed(ws, Xp) == is_closed(ws, X, keep));
    }
  }
}

TEST_CASE("upsilon") {
  const PrimeModulus f(3);
  const WedgeSpace w4(4, f);
  CHECK(upsilon_subspace(w4, pt(f, {1, 0, 0, 0})) == Subspace::span(f, 6, {w4.v(3, 2), w4.v(3, 1), w4.v(2, 1)}));
  CHECK(upsilon_subspace(w4, pt(f, {0, 0, 0, 1})) == Subspace::span(f, 6, {w4.v(4, 3), w4.v(4, 2), w4.v(3, 2)}));
  CHECK_THROWS_AS(upsilon_subspace(WedgeSpace(3, f), pt(f, {1, 0, 0, 0})), std::invalid_argument);

  for (int p : {3, 5}) {
    const PrimeModulus fp(p);
    const WedgeSpace ws(4, fp);
    std::set<Vec> psis;
    for (const auto& q : projective_points(4, fp)) {
      const auto s = psi_subspace(ws, q);
      Vec key;
      for (const auto& r : s.vectors()) key.insert(key.end(), r.begin(), r.end());
      psis.insert(key);
    }
    for (const auto& q : projective_points(4, fp)) {
      const auto u = upsilon_subspace(ws, q);
      CHECK(u.dim() == 3);
      Vec key;
      for (const auto& r : u.vectors()) key.insert(key.end(), r.begin(), r.end());
      CHECK(psis.count(key) == 0);
      // The four defining vectors, read as (v_1, ..., v_4), lie in ker Phi.
      KerPhiElement e;
      const Scalar a = q[0], b = q[1], c = q[2], d = q[3];
      e.components.assign(4, ws.zero_v());
      ws.add_v(e.components[0], 3, 2, a);
      ws.add_v(e.components[0], 4, 2, b);
      ws.add_v(e.components[0], 4, 3, c);
      ws.add_v(e.components[1], 1, 3, a);
      ws.add_v(e.components[1], 1, 4, b);
      ws.add_v(e.components[1], 4, 3, d);
      ws.add_v(e.components[2], 2, 1, a);
      ws.add_v(e.components[2], 1, 4, c);
      ws.add_v(e.components[2], 2, 4, d);
      ws.add_v(e.components[3], 2, 1, b);
      ws.add_v(e.components[3], 3, 1, c);
      ws.add_v(e.components[3], 3, 2, d);
      CHECK(apply_phi(ws, e) == ws.zero_w());
      CHECK(component_span_dim(ws, e) == 3);
    }
  }
}

TEST_CASE("overlap witness") {
  const PrimeModulus f(3);
  const WedgeSpace w3(3, f), w4(4, f);
  const auto e = overlap_witness(w3, pt(f, {1, 0, 0}), w3.v(3, 2));
  const auto ref = v_abc(w3, 1, 2, 3);
  CHECK(e.components == ref.components);

  const auto p4 = pt(f, {1, 0, 0, 0});
  const auto e4 = overlap_witness(w4, p4, w4.v(4, 3));
  CHECK_FALSE(e4.is_zero());
  CHECK(apply_phi(w4, e4) == w4.zero_w());
  const auto span = subspace_sum(psi_subspace(w4, p4), Subspace::span(f, 6, {w4.v(4, 3)}));
  for (const auto& c : e4.components) CHECK(span.contains(c));
  CHECK_THROWS_AS(overlap_witness(w4, p4, w4.v(2, 1)), std::invalid_argument);

  Rng rng(44);
  for (int p : {3, 5, 7}) {
    const PrimeModulus fp(p);
    for (int n = 3; n <= 6; ++n) {
      const WedgeSpace ws(n, fp);
      const auto pts = projective_points(n, fp);
      for (int trial = 0; trial < 20; ++trial) {
        const auto& q = pts[rng.below(pts.size())];
        const auto v = rng.vec(fp, ws.dim_v());
        const auto psi = psi_subspace(ws, q);
        if (psi.contains(v)) {
          CHECK_THROWS_AS(overlap_witness(ws, q, v), std::invalid_argument);
          continue;
        }
        const auto w = overlap_witness(ws, q, v);
        CHECK_FALSE(w.is_zero());
        CHECK(apply_phi(ws, w) == ws.zero_w());
        const auto big = subspace_sum(psi, Subspace::span(fp, ws.dim_v(), {v}));
        for (const auto& c : w.components) CHECK(big.contains(c));
      }
    }
  }
}

TEST_CASE("converse point for n = 4") {
  const PrimeModulus f(3);
  const WedgeSpace w4(4, f);
  auto q = pt(f, {1, 0, 0, 0});
  auto p = converse_n4_point(w4, q, w4.v(4, 1));
  CHECK(p == pt(f, {1, 0, 0, 0}));
  CHECK(psi_subspace(w4, p) == Subspace::span(f, 6, {w4.v(2, 1), w4.v(3, 1), w4.v(4, 1)}));
  CHECK(subspace_sum(upsilon_subspace(w4, q), Subspace::span(f, 6, {w4.v(4, 1)})).contains(psi_subspace(w4, p)));
  q = pt(f, {0, 0, 0, 1});
  p = converse_n4_point(w4, q, w4.v(2, 1));
  CHECK(p == pt(f, {0, 1, 0, 0}));
  CHECK_THROWS_AS(converse_n4_point(w4, q, w4.v(4, 3)), std::invalid_argument);

  Rng rng(45);
  for (int pr : {3, 5, 7}) {
    const PrimeModulus fp(pr);
    const WedgeSpace ws(4, fp);
    const auto pts = projective_points(4, fp);
    for (int trial = 0; trial < 150; ++trial) {
      const auto& qq = pts[rng.below(pts.size())];
      const auto ups = upsilon_subspace(ws, qq);
      Vec v = trial % 5 == 0 ? ups.basis().row_vec(rng.below(3)) : rng.vec(fp, 6);
      if (ups.contains(v)) {
        CHECK_THROWS_AS(converse_n4_point(ws, qq, v), std::invalid_argument);
        continue;
      }
      const auto pp = converse_n4_point(ws, qq, v);
      CHECK(subspace_sum(ups, Subspace::span(fp, 6, {v})).contains(psi_subspace(ws, pp)));
    }
  }
}

TEST_CASE("n = 4 classifier") {
  const PrimeModulus f(3);
  const WedgeSpace w4(4, f);
  auto c = classify_n4(w4, extra_special(w4));
  CHECK_FALSE(c.closed);
  CHECK(c.consistent());
  c = classify_n4(w4, w4.coordinate_subspace({{2, 1}, {3, 1}, {4, 1}, {3, 2}, {4, 2}}));
  CHECK(c.closed);
  CHECK(c.consistent());
  CHECK(c.psi_witness.has_value());

  // <Upsilon(q), v> plus one more vector contains a Psi and so is closed.
  const auto q = pt(f, {1, 1, 0, 2});
  const auto v = w4.v(4, 1);
  const auto base = subspace_sum(upsilon_subspace(w4, q), Subspace::span(f, 6, {v}));
  const auto p = converse_n4_point(w4, q, v);
  CHECK(base.contains(psi_subspace(w4, p)));
  Vec extra = w4.v(4, 3);
  if (base.contains(extra)) extra = w4.v(4, 2);
  const auto X = subspace_sum(base, Subspace::span(f, 6, {extra}));
  REQUIRE(X.dim() == 5);
  c = classify_n4(w4, X);
  CHECK(c.closed);
  CHECK(c.consistent());

  CHECK_THROWS_AS(classify_n4(w4, w4.full_v()), std::invalid_argument);
  CHECK_THROWS_AS(classify_n4(WedgeSpace(5, f), WedgeSpace(5, f).full_v()), std::invalid_argument);

  Rng rng(46);
  for (int pr : {5, 7}) {
    const PrimeModulus fp(pr);
    const WedgeSpace ws(4, fp);
    for (int trial = 0; trial < 30; ++trial) {
      auto Y = trial % 2 ? rng.subspace(fp, 6, 5) : rng.sparse_subspace(fp, 6, 6);
      if (Y.dim() != 5) continue;
      CHECK(classify_n4(ws, Y).consistent());
    }
  }
}

TEST_CASE("verdict invariant under relabelling generators") {
  Rng rng(47);
  const PrimeModulus f(3);
  for (int n = 3; n <= 5; ++n) {
    const WedgeSpace ws(n, f);
    for (int trial = 0; trial < 15; ++trial) {
      const auto X = rng.sparse_subspace(f, ws.dim_v(), rng.below(ws.dim_v() + 1));
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 1);
      std::shuffle(perm.begin(), perm.end(), rng.engine());
      const auto Y = image(relabel_v(ws, ws, perm), X);
      CHECK(is_closed(ws, X) == is_closed(ws, Y));
      // A general change of basis as well.
      Matrix m(f, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
      do m = rng.matrix(f, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
      while (rank(m) < static_cast<std::size_t>(n));
      CHECK(is_closed(ws, X) == is_closed(ws, image(induced_wedge_map(m), X)));
    }
  }
}

TEST_CASE("direct sum decomposition") {
  Rng rng(48);
  const PrimeModulus f(3);
  for (int n = 3; n <= 5; ++n) {
    const WedgeSpace ws(n, f);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> I, J;
      for (int k = 1; k <= n; ++k) (rng.below(2) ? I : J).push_back(k);
      if (I.empty() || J.empty()) continue;
      const WedgeSpace wi(static_cast<int>(I.size()), f), wj(static_cast<int>(J.size()), f);
      const auto XIs = rng.sparse_subspace(f, wi.dim_v(), rng.below(wi.dim_v() + 1));
      const auto XJs = rng.sparse_subspace(f, wj.dim_v(), rng.below(wj.dim_v() + 1));
      const auto XI = image(relabel_v(wi, ws, I), XIs);
      const auto XJ = image(relabel_v(wj, ws, J), XJs);
      std::vector<std::pair<int, int>> cross;
      for (int a : I)
        for (int b : J) cross.emplace_back(std::max(a, b), std::min(a, b));
      const auto VIJ = ws.coordinate_subspace(cross);
      const auto X = subspace_sum(subspace_sum(XI, XJ), VIJ);
      CHECK(closure(ws, X) == subspace_sum(subspace_sum(closure(ws, XI, I), closure(ws, XJ, J)), VIJ));
      CHECK(is_closed(ws, X) == (is_closed(wi, XIs) && is_closed(wj, XJs)));
    }
  }
}

TEST_CASE("small plus big blocks are closed") {
  Rng rng(49);
  const PrimeModulus f(3);
  for (int n = 3; n <= 6; ++n) {
    const WedgeSpace ws(n, f);
    for (int m = 2; m < n; ++m) {
      std::vector<std::pair<int, int>> low, high;
      for (std::size_t c = 0; c < ws.dim_v(); ++c) {
        const auto [j, i] = ws.indexing().v_pair(c);
        if (j <= m) low.emplace_back(j, i);
        if (i > m) high.emplace_back(j, i);
      }
      const auto L = ws.coordinate_subspace(low), H = ws.coordinate_subspace(high);
      for (int trial = 0; trial < 5; ++trial) {
        const auto X1 = subspace_intersect(L, rng.subspace(f, ws.dim_v(), ws.dim_v() - rng.below(3)));
        const auto X2 = H.dim() ? subspace_intersect(H, rng.subspace(f, ws.dim_v(), ws.dim_v() - rng.below(3)))
                                : Subspace::zero(f, ws.dim_v());
        CHECK(is_closed(ws, subspace_sum(X1, X2)));
      }
    }
  }
}

TEST_CASE("rank conditions against the closure verdict") {
  Rng rng(50);
  for (int p : {3, 5}) {
    const PrimeModulus f(p);
    for (int n = 2; n <= 4; ++n) {
      const WedgeSpace ws(n, f);
      for (int trial = 0; trial < 60; ++trial) {
        const auto X = trial % 2 ? rng.sparse_subspace(f, ws.dim_v(), rng.below(ws.dim_v() + 1))
                                 : rng.subspace(f, ws.dim_v(), rng.below(ws.dim_v() + 1));
        const auto m = ws.dim_v() - X.dim();
        const bool closed = is_closed(ws, X);
        if (sufficient_rank_condition(static_cast<Count>(n), m)) CHECK(closed);
        // rank G/Z(G) = n - dim of the central subspace of U.
        const auto c = central_points(ws, X).size();
        const auto central_dim = testing::log_p(c * (static_cast<std::size_t>(p) - 1) + 1, static_cast<std::size_t>(p));
        if (closed) CHECK(necessary_rank_condition(static_cast<Count>(n) - central_dim, m));
      }
    }
  }
}
