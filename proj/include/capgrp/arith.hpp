#pragma once

#include <cstdint>
#include <utility>

namespace capgrp {

using Count = std::uint64_t;

/// C(a, k) for k in {2, 3}; general k is handled too but only small values are used.
Count binom(Count a, Count k);  // std::overflow_error past 64 bits

/// floor(sqrt(x)), exact.
Count isqrt(Count x);

/// x is a triangular number C(t, 2) for some t >= 1 (so 0 counts).
bool is_triangular(Count x);

/// m = C(T, 2) + s.
struct TriangularDecomposition {
  Count m = 0;
  Count T = 1;
  Count s = 0;

  /// Canonical form: 0 <= s < T. m = 0 gives (T, s) = (1, 0).
  static TriangularDecomposition canonical(Count m);
  /// Boundary form 0 < s <= T for m > 0, i.e. the smallest T with m <= C(T+1, 2).
  static TriangularDecomposition upper(Count m);
};

/// Largest r with r <= d and r <= C(d - r, 2).
Count r_of(Count d);  // std::overflow_error for d > (2^64 - 2) / 8

/// C(T, 3) + C(s, 2) for m = C(T, 2) + s.
Count f_of(Count m);

/// Smallest positive s with r <= C(s, 2).
Count min_s(Count r);

struct DimStarBounds {
  Count lower;
  Count upper;
};

/// Bounds on dim X* for dim X = m inside V(n). Throws std::invalid_argument
/// when m > C(n, 2).
DimStarBounds bounds_dim_star(Count n, Count m);

}  // namespace capgrp
