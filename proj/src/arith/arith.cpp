#include "capgrp/arith.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace capgrp {

namespace {
__extension__ using Wide = unsigned __int128;
}  // namespace

Count binom(Count a, Count k) {
  if (k > a) return 0;
  if (k > a - k) k = a - k;
  Count r = 1;
  for (Count i = 1; i <= k; ++i) {
    // r * (a - k + i) is divisible by i; the product can need 128 bits.
    const auto wide = static_cast<Wide>(r) * (a - k + i) / i;
    if (wide > std::numeric_limits<Count>::max()) throw std::overflow_error("binomial coefficient exceeds 64 bits");
    r = static_cast<Count>(wide);
  }
  return r;
}

Count isqrt(Count x) {
  if (x < 2) return x;
  // Newton from above converges to floor(sqrt(x)) without overshooting.
  Count r = x;
  Count y = (r + 1) / 2;
  while (y < r) {
    r = y;
    y = (r + x / r) / 2;
  }
  return r;
}

bool is_triangular(Count x) {
  const Count d = 8 * x + 1;
  const Count s = isqrt(d);
  return s * s == d;
}

TriangularDecomposition TriangularDecomposition::canonical(Count m) {
  if (m == 0) return {0, 1, 0};
  // Largest T with C(T, 2) <= m.
  Count t = (1 + isqrt(8 * m + 1)) / 2;
  while (binom(t, 2) > m) --t;
  while (binom(t + 1, 2) <= m) ++t;
  return {m, t, m - binom(t, 2)};
}

TriangularDecomposition TriangularDecomposition::upper(Count m) {
  auto c = canonical(m);
  if (m > 0 && c.s == 0) return {m, c.T - 1, c.T - 1};
  return c;
}

Count r_of(Count d) {
  if (d > (std::numeric_limits<Count>::max() - 1) / 8) throw std::overflow_error("r_of: d too large");
  // t = ceil((sqrt(8d + 1) - 1) / 2), computed with integers.
  const Count q = 8 * d + 1;
  const Count s = isqrt(q);
  const Count t = (s * s == q) ? (s - 1) / 2 : (s + 1) / 2;
  return d - t;
}

Count f_of(Count m) {
  const auto dec = TriangularDecomposition::canonical(m);
  return binom(dec.T, 3) + binom(dec.s, 2);
}

Count min_s(Count r) {
  Count s = 1;
  while (binom(s, 2) < r) ++s;
  return s;
}

DimStarBounds bounds_dim_star(Count n, Count m) {
  const Count dim_v = binom(n, 2);
  if (m > dim_v) {
    throw std::invalid_argument("dim X = " + std::to_string(m) + " exceeds dim V(" + std::to_string(n) +
                                ") = " + std::to_string(dim_v));
  }
  const Count cap = 2 * binom(n + 1, 3);
  const Count nm = n * m;
  return {nm - f_of(m), nm < cap ? nm : cap};
}

}  // namespace capgrp
