#include "doctest.h"

#include <stdexcept>

#include "capgrp/arith.hpp"

using namespace capgrp;

namespace {

// r(d) straight from the maximality definition.
Count r_search(Count d) {
  Count best = 0;
  for (Count r = 0; r <= d; ++r)
    if (r <= binom(d - r, 2)) best = r;
  return best;
}

// Count of nontriangular numbers strictly below d.
Count nontriangular_below(Count d) {
  Count c = 0;
  for (Count x = 0; x < d; ++x) {
    bool tri = false;
    for (Count t = 0; binom(t, 2) <= x; ++t) tri = tri || binom(t, 2) == x;
    c += !tri;
  }
  return c;
}

// f(m) as C(T,3) + C(s,2) using the first T with m <= C(T+1,2), i.e. the
// boundary choice s = T when m is triangular.
Count f_upper(Count m) {
  const auto d = TriangularDecomposition::upper(m);
  return binom(d.T, 3) + binom(d.s, 2);
}

}  // namespace

TEST_CASE("binomials and integer square root") {
  CHECK(binom(5, 2) == 10);
  CHECK(binom(5, 3) == 10);
  CHECK(binom(2, 3) == 0);
  CHECK(binom(0, 0) == 1);
  for (Count x = 0; x < 20000; ++x) {
    const auto s = isqrt(x);
    CHECK(s * s <= x);
    CHECK((s + 1) * (s + 1) > x);
  }
  CHECK(isqrt(0xFFFFFFFFull * 0xFFFFFFFFull) == 0xFFFFFFFFull);
}

TEST_CASE("triangular decomposition") {
  CHECK(TriangularDecomposition::canonical(0).T == 1);
  CHECK(TriangularDecomposition::canonical(0).s == 0);
  for (Count m = 1; m < 2000; ++m) {
    const auto c = TriangularDecomposition::canonical(m);
    CHECK(binom(c.T, 2) + c.s == m);
    CHECK(c.s < c.T);
    const auto u = TriangularDecomposition::upper(m);
    CHECK(binom(u.T, 2) + u.s == m);
    CHECK(u.s > 0);
    CHECK(u.s <= u.T);
    CHECK(f_of(m) == f_upper(m));
    CHECK(is_triangular(m) == (c.s == 0));
  }
}

TEST_CASE("r examples") {
  CHECK(r_of(0) == 0);
  CHECK(r_of(1) == 0);
  CHECK(r_of(3) == 1);
  CHECK(r_of(10) == 6);
}

TEST_CASE("r characterizations agree") {
  for (Count d = 0; d <= 400; ++d) {
    CHECK(r_of(d) == r_search(d));
    CHECK(r_of(d) == nontriangular_below(d));
  }
  Count prev = 0;
  for (Count d = 0; d <= 1000000; ++d) {
    const auto r = r_of(d);
    if (d > 0) CHECK_MESSAGE(r == prev + (is_triangular(d - 1) ? 0 : 1), "d = " << d);
    // Maximality: r fits and r + 1 does not.
    if (r > binom(d - r, 2) || (r + 1 <= d && r + 1 <= binom(d - r - 1, 2))) FAIL("maximality fails at d = " << d);
    prev = r;
  }
  for (Count t = 1; t < 40; ++t)
    for (Count s = 1; s <= t; ++s) CHECK(r_of(binom(t, 2) + s) == binom(t - 1, 2) + (s - 1));
}

TEST_CASE("f values") {
  CHECK(f_of(0) == 0);
  CHECK(f_of(1) == 0);
  CHECK(f_of(2) == 0);
  CHECK(f_of(3) == 1);
  CHECK(f_of(7) == 4);
  CHECK(f_of(10) == 10);
  CHECK(f_of(50) == 130);
  for (Count m = 1; m < 500; ++m) CHECK(f_of(m + 1) >= f_of(m));
}

TEST_CASE("min_s") {
  CHECK(min_s(0) == 1);
  CHECK(min_s(1) == 2);
  CHECK(min_s(3) == 3);
  CHECK(min_s(4) == 4);
  for (Count r = 1; r < 300; ++r) {
    const auto s = min_s(r);
    CHECK(r <= binom(s, 2));
    CHECK(r > binom(s - 1, 2));
  }
}

TEST_CASE("dimension bounds") {
  auto b = bounds_dim_star(4, 5);
  CHECK(b.lower == 18);
  CHECK(b.upper == 20);
  b = bounds_dim_star(2, 1);
  CHECK(b.lower == 2);
  CHECK(b.upper == 2);
  b = bounds_dim_star(3, 0);
  CHECK(b.lower == 0);
  CHECK(b.upper == 0);
  CHECK_THROWS_AS(bounds_dim_star(3, 4), std::invalid_argument);
}
