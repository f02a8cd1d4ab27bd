#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "capgrp/arith.hpp"
#include "capgrp/capability.hpp"
#include "capgrp/json_io.hpp"
#include "capgrp/parallel.hpp"
#include "capgrp/subspace.hpp"
#include "capgrp/wedge.hpp"

namespace capgrp {

/// Reproducible random stream. Seeded from (seed, stream) so that sample i of
/// a run depends only on the seed and i, whatever the thread count.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next();
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  Scalar scalar(const PrimeModulus& f) { return static_cast<Scalar>(below(f.value())); }
  Vec vec(const PrimeModulus& f, std::size_t d);
  Vec nonzero_vec(const PrimeModulus& f, std::size_t d);
  std::mt19937_64& engine() noexcept { return eng_; }

 private:
  std::mt19937_64 eng_;
};

/// Uniformly random k-dimensional subspace of GF(p)^d.
Subspace random_subspace(const PrimeModulus& f, std::size_t d, std::size_t k, SampleRng& rng);
/// Span of k vectors with one to three random nonzero coordinates each; biased
/// towards the special subspaces that uniform sampling almost never produces.
Subspace random_sparse_subspace(const PrimeModulus& f, std::size_t d, std::size_t k, SampleRng& rng);
ProjectivePoint random_point(int n, const PrimeModulus& f, SampleRng& rng);
/// Random invertible n x n matrix.
Matrix random_invertible(const PrimeModulus& f, std::size_t n, SampleRng& rng);

/// [d choose k]_p. Throws std::overflow_error if it does not fit in 64 bits.
Count gaussian_binomial(Count d, Count k, Count p);

/// k-subsets of {0, .., d-1} in colex order.
std::vector<std::vector<std::size_t>> pivot_patterns(std::size_t d, std::size_t k);

/// Walks the k-dimensional subspaces of GF(p)^d through their RREF bases:
/// pivot patterns in colex order, and within a pattern the free entries
/// counted in base p, least significant entry first.
class GrassmannianCursor {
 public:
  GrassmannianCursor(PrimeModulus f, std::size_t d, std::size_t k);
  /// Visits only the subspaces with the given pivot columns.
  static GrassmannianCursor single_pattern(PrimeModulus f, std::size_t d, std::vector<std::size_t> pattern);

  bool done() const noexcept { return done_; }
  const Matrix& basis() const noexcept { return basis_; }
  Subspace current() const { return Subspace::span(basis_); }
  const std::vector<std::size_t>& pattern() const noexcept { return pattern_; }
  /// Position of the current subspace within its pattern.
  Count offset() const noexcept { return offset_; }
  void next();

 private:
  GrassmannianCursor(PrimeModulus f, std::size_t d, std::vector<std::size_t> pattern, bool all_patterns);
  void load_pattern();
  bool advance_pattern();

  PrimeModulus field_;
  std::size_t d_;
  std::vector<std::size_t> pattern_;
  bool all_patterns_;
  bool done_ = false;
  Count offset_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> free_;  // (row, col) of free entries
  Matrix basis_;
};

/// Runs visit(subspace, acc) over every k-dimensional subspace, one
/// accumulator per pivot pattern, and returns the accumulators in pattern
/// order. Patterns are distributed across threads; the result is independent
/// of the thread count.
template <class Acc, class Visit>
std::vector<Acc> map_grassmannian(const PrimeModulus& f, std::size_t d, std::size_t k, unsigned threads,
                                  Visit&& visit) {
  const auto patterns = pivot_patterns(d, k);
  return parallel_ordered(patterns.size(), threads, [&](std::size_t i) {
    Acc acc{};
    for (auto c = GrassmannianCursor::single_pattern(f, d, patterns[i]); !c.done(); c.next()) visit(c.current(), acc);
    return acc;
  });
}

struct EmpiricalOptions {
  Count budget = 10'000'000;  // largest population enumerated exhaustively
  Count samples = 2000;       // used when the population exceeds the budget
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct EmpiricalF {
  Count value = 0;
  bool exhaustive = false;
  Count population = 0;  // number of m-dimensional subspaces of V(n)
  Count visited = 0;
  std::optional<Subspace> witness;  // first subspace attaining the maximum
};

/// max dim(X^n ∩ ker Phi) over m-dimensional X inside V(n). Exhaustive when
/// the Grassmannian fits in the budget, otherwise the maximum over seeded
/// samples (uniform, coordinate and transformed extremal subspaces), which is
/// only a lower bound. Throws std::invalid_argument for m > C(n,2).
EmpiricalF empirical_f(Count m, int n, const PrimeModulus& f, const EmpiricalOptions& opt = {});

struct FWitness {
  int n;
  Subspace x;
};

/// The coordinate subspace <v_{ji} : j <= T> + <v_{T+1,1}, .., v_{T+1,s}> in
/// V(T+1), with m = C(T,2) + s and 0 < s <= T. Its overlap is exactly f(m).
FWitness f_witness(Count m, const PrimeModulus& f);

struct SpanSearchResult {
  bool found = false;
  std::optional<KerPhiElement> witness;
  std::string method;       // "construction", "exhaustive" or "sampled"
  Count tried = 0;
  bool exhaustive = false;  // every projective class of ker Phi was examined
};

/// A kernel element whose components span exactly k dimensions. k = 3l and
/// k = 3l + 2 (l >= 1) and k = 3l + 1 (l >= 2) are built from sums of
/// v_(abc) blocks. Any other k is searched for, exhaustively over projective
/// classes when they fit in the budget and by sampling otherwise; "not
/// found" says nothing about other n or p. Requires 3 <= k <= n.
SpanSearchResult span_dim_search(const WedgeSpace& ws, std::size_t k, Count budget = 1'000'000,
                                 std::uint64_t seed = 1);

/// f(m) for m = 3..50 as published.
const std::array<Count, 48>& published_table1();

struct Table1Row {
  Count m;
  Count published;
  Count computed;
  bool match;
};
std::vector<Table1Row> table1_rows();

struct SuiteOptions {
  std::uint64_t seed = 1;
  Count budget = 10'000'000;
  unsigned threads = 0;
  std::optional<Count> samples;  // overrides the suite's main sample count
};

struct SuiteReport {
  std::string name;
  bool passed = true;
  Count checks = 0;
  Count violations = 0;
  std::vector<nlohmann::ordered_json> failures;  // first few counterexamples
  std::vector<std::string> notes;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
};

const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument for an unknown suite.
SuiteReport verify_suite(const std::string& name, const SuiteOptions& opt = {});

}  // namespace capgrp
