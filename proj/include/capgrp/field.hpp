#pragma once

#include <cstdint>
#include <vector>

namespace capgrp {

/// A residue modulo the working prime, always stored in [0, p).
using Scalar = std::uint32_t;

/// Dense vector over GF(p); the modulus lives with whoever owns the vector.
using Vec = std::vector<Scalar>;

bool is_prime(std::uint64_t n);

/// An odd prime p < 2^31 together with the field operations of GF(p).
///
/// Every operation returns a fully reduced residue. Products go through a
/// 64-bit intermediate, which is why the modulus is capped below 2^31.
class PrimeModulus {
 public:
  /// Throws std::invalid_argument unless p is an odd prime below 2^31.
  explicit PrimeModulus(std::int64_t p);

  Scalar value() const noexcept { return p_; }

  Scalar reduce(std::int64_t x) const noexcept {
    const auto p = static_cast<std::int64_t>(p_);
    auto r = x % p;
    return static_cast<Scalar>(r < 0 ? r + p : r);
  }

  Scalar add(Scalar a, Scalar b) const noexcept {
    const Scalar s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Scalar sub(Scalar a, Scalar b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Scalar neg(Scalar a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const noexcept {
    return static_cast<Scalar>(static_cast<std::uint64_t>(a) * b % p_);
  }
  /// a + b*c
  Scalar fma(Scalar a, Scalar b, Scalar c) const noexcept { return add(a, mul(b, c)); }

  Scalar pow(Scalar a, std::uint64_t e) const noexcept;

  /// Multiplicative inverse; throws std::domain_error on zero.
  Scalar inv(Scalar a) const;

  /// Representative in (-p/2, p/2], used for human-facing output.
  std::int64_t balanced(Scalar a) const noexcept {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  Scalar p_;
};

}  // namespace capgrp
