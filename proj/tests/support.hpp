#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "capgrp/subspace.hpp"
#include "capgrp/wedge.hpp"

namespace capgrp::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_); }
  Scalar scalar(const PrimeModulus& f) { return static_cast<Scalar>(below(f.value())); }
  Vec vec(const PrimeModulus& f, std::size_t d) {
    Vec v(d);
    for (auto& x : v) x = scalar(f);
    return v;
  }
  Matrix matrix(const PrimeModulus& f, std::size_t r, std::size_t c) {
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = scalar(f);
    return m;
  }
  /// Span of k random vectors; dimension at most k.
  Subspace subspace(const PrimeModulus& f, std::size_t d, std::size_t k) {
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(vec(f, d));
    return Subspace::span(f, d, gens);
  }
  /// Sparse generators: a few random coordinates per vector, which makes
  /// special (non-generic) subspaces much more likely.
  Subspace sparse_subspace(const PrimeModulus& f, std::size_t d, std::size_t k) {
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < k; ++i) {
      Vec v(d, 0);
      const auto hits = 1 + below(3);
      for (std::uint64_t h = 0; h < hits; ++h) v[below(d)] = scalar(f);
      gens.push_back(v);
    }
    return Subspace::span(f, d, gens);
  }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

/// Every vector in the span of `gens`, by enumerating all coefficient tuples.
inline std::set<Vec> enumerate_span(const PrimeModulus& f, std::size_t d, const std::vector<Vec>& gens) {
  std::set<Vec> out;
  std::vector<Scalar> coef(gens.size(), 0);
  while (true) {
    Vec v(d, 0);
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (std::size_t c = 0; c < d; ++c) v[c] = f.fma(v[c], coef[g], gens[g][c]);
    out.insert(v);
    std::size_t pos = 0;
    while (pos < coef.size() && ++coef[pos] == f.value()) coef[pos++] = 0;
    if (pos == coef.size()) break;
  }
  return out;
}

/// Every vector of GF(p)^d.
inline std::vector<Vec> all_vectors(const PrimeModulus& f, std::size_t d) {
  std::vector<Vec> out;
  Vec v(d, 0);
  while (true) {
    out.push_back(v);
    std::size_t pos = 0;
    while (pos < d && ++v[pos] == f.value()) v[pos++] = 0;
    if (pos == d) break;
  }
  return out;
}

inline std::size_t log_p(std::size_t count, std::size_t p) {
  std::size_t k = 0;
  while (count > 1) {
    count /= p;
    ++k;
  }
  return k;
}

inline Vec vsum(const PrimeModulus& f, const Vec& a, const Vec& b, Scalar cb = 1) {
  Vec out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.fma(out[i], cb, b[i]);
  return out;
}

}  // namespace capgrp::testing
