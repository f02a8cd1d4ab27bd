#include "capgrp/verify.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "capgrp/closure.hpp"

namespace capgrp {

// ---------------------------------------------------------------- sampling

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  eng_.seed(seq);
}

std::uint64_t SampleRng::next() { return eng_(); }

std::uint64_t SampleRng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("SampleRng::below: empty range");
  // Reject the short final block so every residue is equally likely.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const auto x = eng_();
    if (x >= threshold) return x % n;
  }
}

Vec SampleRng::vec(const PrimeModulus& f, std::size_t d) {
  Vec v(d);
  for (auto& x : v) x = scalar(f);
  return v;
}

Vec SampleRng::nonzero_vec(const PrimeModulus& f, std::size_t d) {
  if (d == 0) throw std::invalid_argument("nonzero_vec: zero-dimensional space");
  for (;;) {
    auto v = vec(f, d);
    if (std::any_of(v.begin(), v.end(), [](Scalar s) { return s != 0; })) return v;
  }
}

Subspace random_subspace(const PrimeModulus& f, std::size_t d, std::size_t k, SampleRng& rng) {
  if (k > d) throw std::invalid_argument("random_subspace: k exceeds the ambient dimension");
  for (;;) {
    Matrix m(f, k, d);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < d; ++c) m.at(r, c) = rng.scalar(f);
    auto s = Subspace::span(m);
    if (s.dim() == k) return s;
  }
}

Subspace random_sparse_subspace(const PrimeModulus& f, std::size_t d, std::size_t k, SampleRng& rng) {
  if (k > d) throw std::invalid_argument("random_sparse_subspace: k exceeds the ambient dimension");
  auto s = Subspace::zero(f, d);
  while (s.dim() < k) {
    Vec v(d, 0);
    const auto hits = 1 + rng.below(3);
    for (std::uint64_t h = 0; h < hits; ++h) v[rng.below(d)] = static_cast<Scalar>(1 + rng.below(f.value() - 1));
    if (!s.contains(v)) s = subspace_sum(s, Subspace::span(f, d, {v}));
  }
  return s;
}

ProjectivePoint random_point(int n, const PrimeModulus& f, SampleRng& rng) {
  return ProjectivePoint(f, rng.nonzero_vec(f, static_cast<std::size_t>(n)));
}

Matrix random_invertible(const PrimeModulus& f, std::size_t n, SampleRng& rng) {
  for (;;) {
    Matrix m(f, n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m.at(r, c) = rng.scalar(f);
    if (rank(m) == n) return m;
  }
}

namespace {

// Fisher-Yates with our own bounded draws; std::shuffle is not reproducible
// across standard libraries.
template <class T>
void shuffle(std::vector<T>& v, SampleRng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

Count checked_mul(Count a, Count b) {
  Count out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("count exceeds 64 bits");
  return out;
}

Count checked_add(Count a, Count b) {
  Count out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("count exceeds 64 bits");
  return out;
}

}  // namespace

// ------------------------------------------------------------ Grassmannian

Count gaussian_binomial(Count d, Count k, Count p) {
  if (k > d) return 0;
  // [d, j] = [d-1, j-1] + p^j [d-1, j], row by row.
  std::vector<Count> row(k + 1, 0);
  row[0] = 1;
  for (Count n = 1; n <= d; ++n) {
    for (Count j = std::min(n, k); j >= 1; --j) {
      Count pj = 1;
      for (Count t = 0; t < j; ++t) pj = checked_mul(pj, p);
      row[j] = checked_add(row[j - 1], checked_mul(pj, row[j]));
    }
  }
  return row[k];
}

namespace {

bool next_colex(std::vector<std::size_t>& c, std::size_t d) {
  const std::size_t k = c.size();
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t limit = j + 1 < k ? c[j + 1] : d;
    if (c[j] + 1 < limit) {
      ++c[j];
      for (std::size_t t = 0; t < j; ++t) c[t] = t;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<std::vector<std::size_t>> pivot_patterns(std::size_t d, std::size_t k) {
  if (k > d) throw std::invalid_argument("pivot_patterns: k exceeds d");
  std::vector<std::size_t> c(k);
  std::iota(c.begin(), c.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> out{c};
  while (next_colex(c, d)) out.push_back(c);
  return out;
}

GrassmannianCursor::GrassmannianCursor(PrimeModulus f, std::size_t d, std::size_t k)
    : GrassmannianCursor(f, d, [&] {
        if (k > d) throw std::invalid_argument("GrassmannianCursor: k exceeds d");
        std::vector<std::size_t> c(k);
        std::iota(c.begin(), c.end(), std::size_t{0});
        return c;
      }(), true) {}

GrassmannianCursor GrassmannianCursor::single_pattern(PrimeModulus f, std::size_t d, std::vector<std::size_t> pattern) {
  if (!std::is_sorted(pattern.begin(), pattern.end()) ||
      std::adjacent_find(pattern.begin(), pattern.end()) != pattern.end() || (!pattern.empty() && pattern.back() >= d)) {
    throw std::invalid_argument("GrassmannianCursor: pattern must be strictly increasing columns below d");
  }
  return GrassmannianCursor(f, d, std::move(pattern), false);
}

GrassmannianCursor::GrassmannianCursor(PrimeModulus f, std::size_t d, std::vector<std::size_t> pattern,
                                       bool all_patterns)
    : field_(f), d_(d), pattern_(std::move(pattern)), all_patterns_(all_patterns), basis_(f, 0, d) {
  load_pattern();
}

void GrassmannianCursor::load_pattern() {
  const std::size_t k = pattern_.size();
  basis_ = Matrix(field_, k, d_);
  free_.clear();
  offset_ = 0;
  std::vector<bool> is_pivot(d_, false);
  for (auto c : pattern_) is_pivot[c] = true;
  for (std::size_t r = 0; r < k; ++r) {
    basis_.at(r, pattern_[r]) = 1;
    for (std::size_t c = pattern_[r] + 1; c < d_; ++c)
      if (!is_pivot[c]) free_.emplace_back(r, c);
  }
}

bool GrassmannianCursor::advance_pattern() {
  if (!all_patterns_ || !next_colex(pattern_, d_)) return false;
  load_pattern();
  return true;
}

void GrassmannianCursor::next() {
  if (done_) return;
  const auto p = field_.value();
  for (const auto& [r, c] : free_) {
    auto& e = basis_.at(r, c);
    if (++e < p) {
      ++offset_;
      return;
    }
    e = 0;
  }
  if (!advance_pattern()) done_ = true;
}

// ------------------------------------------------------------- empirical f

FWitness f_witness(Count m, const PrimeModulus& f) {
  if (m == 0) throw std::invalid_argument("f_witness: m must be positive");
  const auto dec = TriangularDecomposition::upper(m);
  const int n = static_cast<int>(dec.T) + 1;
  const WedgeSpace ws(n, f);
  std::vector<std::pair<int, int>> pairs;
  for (int j = 2; j <= static_cast<int>(dec.T); ++j)
    for (int i = 1; i < j; ++i) pairs.emplace_back(j, i);
  for (int i = 1; i <= static_cast<int>(dec.s); ++i) pairs.emplace_back(n, i);
  return {n, ws.coordinate_subspace(pairs)};
}

namespace {

struct MaxAcc {
  Count best = 0;
  Count visited = 0;
  std::optional<Subspace> witness;
};

Subspace embed(const WedgeSpace& small, const WedgeSpace& big, const Subspace& x) {
  std::vector<int> labels(static_cast<std::size_t>(small.n()));
  std::iota(labels.begin(), labels.end(), 1);
  return image(relabel_v(small, big, labels), x);
}

}  // namespace

EmpiricalF empirical_f(Count m, int n, const PrimeModulus& f, const EmpiricalOptions& opt) {
  const WedgeSpace ws(n, f);
  const Count d = ws.dim_v();
  if (m > d) throw std::invalid_argument("empirical_f: m exceeds C(n,2)");
  EmpiricalF out;
  try {
    out.population = gaussian_binomial(d, m, f.value());
  } catch (const std::overflow_error&) {
    out.population = std::numeric_limits<Count>::max();
  }

  if (out.population <= opt.budget) {
    const auto accs = map_grassmannian<MaxAcc>(f, d, m, opt.threads, [&](const Subspace& x, MaxAcc& acc) {
      const Count ov = kernel_overlap(ws, x).dim;
      ++acc.visited;
      if (!acc.witness || ov > acc.best) {
        acc.best = ov;
        acc.witness = x;
      }
    });
    out.exhaustive = true;
    for (const auto& a : accs) {
      out.visited += a.visited;
      if (a.witness && (!out.witness || a.best > out.value)) {
        out.value = a.best;
        out.witness = a.witness;
      }
    }
    return out;
  }

  std::optional<Subspace> extremal;
  if (m > 0) {
    const auto w = f_witness(m, f);
    if (w.n <= n) extremal = embed(WedgeSpace(w.n, f), ws, w.x);
  }
  const auto results = parallel_ordered(opt.samples, opt.threads, [&](std::size_t i) {
    SampleRng rng(opt.seed, i);
    Subspace x = ws.zero_subspace_v();
    switch (i % 3) {
      case 0: x = random_subspace(f, d, m, rng); break;
      case 1: x = random_sparse_subspace(f, d, m, rng); break;
      default:
        x = extremal ? image(induced_wedge_map(random_invertible(f, static_cast<std::size_t>(n), rng)), *extremal)
                     : random_subspace(f, d, m, rng);
    }
    return std::make_pair(static_cast<Count>(kernel_overlap(ws, x).dim), std::optional<Subspace>(x));
  });
  for (const auto& [ov, x] : results) {
    ++out.visited;
    if (!out.witness || ov > out.value) {
      out.value = ov;
      out.witness = *x;
    }
  }
  return out;
}

// ------------------------------------------------------------- span search

namespace {

KerPhiElement add_elements(const WedgeSpace& ws, const KerPhiElement& a, const KerPhiElement& b, Scalar cb) {
  const auto& f = ws.field();
  KerPhiElement out = a;
  for (std::size_t u = 0; u < out.components.size(); ++u)
    for (std::size_t c = 0; c < out.components[u].size(); ++c)
      out.components[u][c] = f.fma(out.components[u][c], cb, b.components[u][c]);
  return out;
}

KerPhiElement zero_element(const WedgeSpace& ws) {
  return KerPhiElement{std::vector<Vec>(static_cast<std::size_t>(ws.n()), ws.zero_v())};
}

KerPhiElement combine(const WedgeSpace& ws, const std::vector<KerPhiElement>& basis, std::span<const Scalar> coeffs) {
  auto out = zero_element(ws);
  for (std::size_t t = 0; t < basis.size(); ++t)
    if (coeffs[t] != 0) out = add_elements(ws, out, basis[t], coeffs[t]);
  return out;
}

KerPhiElement block_sum(const WedgeSpace& ws, const std::vector<std::array<int, 3>>& blocks) {
  auto out = zero_element(ws);
  for (const auto& b : blocks) out = add_elements(ws, out, v_abc(ws, b[0], b[1], b[2]), 1);
  return out;
}

// Base-p counter over coeffs[from..], last entry least significant.
bool increment_tail(Vec& coeffs, std::size_t from, Scalar p) {
  for (std::size_t t = coeffs.size(); t > from; --t) {
    if (++coeffs[t - 1] < p) return true;
    coeffs[t - 1] = 0;
  }
  return false;
}

}  // namespace

SpanSearchResult span_dim_search(const WedgeSpace& ws, std::size_t k, Count budget, std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(ws.n());
  if (k < 3 || k > n) throw std::invalid_argument("span_dim_search: need 3 <= k <= n");
  SpanSearchResult out;

  std::vector<std::array<int, 3>> blocks;
  int next_label = 0;
  if (k % 3 == 0) {
    blocks = {{1, 2, 3}};
    next_label = 4;
  } else if (k % 3 == 2) {
    blocks = {{1, 2, 3}, {1, 4, 5}};
    next_label = 6;
  } else if (k >= 7) {
    blocks = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}};
    next_label = 8;
  }
  if (!blocks.empty()) {
    while (static_cast<std::size_t>(next_label + 2) <= k) {
      blocks.push_back({next_label, next_label + 1, next_label + 2});
      next_label += 3;
    }
    auto e = block_sum(ws, blocks);
    out.method = "construction";
    out.tried = 1;
    if (component_span_dim(ws, e) != k || apply_phi(ws, e) != ws.zero_w())
      throw std::logic_error("span_dim_search: block construction missed its target");
    out.found = true;
    out.witness = std::move(e);
    return out;
  }

  const auto basis = ker_phi_basis(ws);
  const auto& f = ws.field();
  const std::size_t K = basis.size();
  Count classes = std::numeric_limits<Count>::max();
  try {
    classes = gaussian_binomial(K, 1, f.value());
  } catch (const std::overflow_error&) {
  }

  if (classes <= budget) {
    out.method = "exhaustive";
    out.exhaustive = true;
    Vec coeffs(K, 0);
    for (std::size_t lead = 0; lead < K; ++lead) {
      std::fill(coeffs.begin(), coeffs.end(), 0);
      coeffs[lead] = 1;
      do {
        ++out.tried;
        auto e = combine(ws, basis, coeffs);
        if (component_span_dim(ws, e) == k) {
          out.found = true;
          out.witness = std::move(e);
          out.exhaustive = false;  // stopped early
          return out;
        }
      } while (increment_tail(coeffs, lead + 1, f.value()));
    }
    out.exhaustive = true;
    return out;
  }

  out.method = "sampled";
  SampleRng rng(seed, 0);
  for (Count s = 0; s < budget; ++s) {
    ++out.tried;
    const auto c = rng.nonzero_vec(f, K);
    auto e = combine(ws, basis, c);
    if (component_span_dim(ws, e) == k) {
      out.found = true;
      out.witness = std::move(e);
      return out;
    }
  }
  return out;
}

// ------------------------------------------------------------- f(m) table

const std::array<Count, 48>& published_table1() {
  static const std::array<Count, 48> values{1,  1,  2,  4,  4,  5,  7,  10,  10,  11,  13,  16,  20,  20,  21,  23,
                                            26, 30, 35, 35, 36, 38, 41, 45,  50,  56,  56,  57,  59,  62,  66,  71,
                                            77, 84, 84, 85, 87, 90, 94, 99,  105, 112, 120, 120, 121, 123, 126, 130};
  return values;
}

std::vector<Table1Row> table1_rows() {
  std::vector<Table1Row> rows;
  const auto& pub = published_table1();
  for (std::size_t t = 0; t < pub.size(); ++t) {
    const Count m = t + 3;
    const Count c = f_of(m);
    rows.push_back({m, pub[t], c, c == pub[t]});
  }
  return rows;
}

// ------------------------------------------------------------------- suites

nlohmann::ordered_json SuiteReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = name;
  j["passed"] = passed;
  j["checks"] = checks;
  j["violations"] = violations;
  j["summary"] = summary;
  j["notes"] = notes;
  j["failures"] = failures;
  return j;
}

namespace {

constexpr std::size_t kMaxFailures = 5;

// Per-task tally; tasks are merged in index order so reports are reproducible.
struct Tally {
  Count checks = 0;
  Count violations = 0;
  std::vector<Json> failures;

  template <class Payload>
  bool check(bool ok, Payload&& payload) {
    ++checks;
    if (!ok) {
      ++violations;
      if (failures.size() < kMaxFailures) failures.push_back(payload());
    }
    return ok;
  }

  void merge(Tally&& o) {
    checks += o.checks;
    violations += o.violations;
    for (auto& f : o.failures)
      if (failures.size() < kMaxFailures) failures.push_back(std::move(f));
  }
};

void absorb(SuiteReport& rep, Tally&& t) {
  rep.checks += t.checks;
  rep.violations += t.violations;
  for (auto& f : t.failures)
    if (rep.failures.size() < kMaxFailures) rep.failures.push_back(std::move(f));
}

template <class Fn>
Tally run_samples(std::size_t count, unsigned threads, Fn&& fn) {
  auto parts = parallel_ordered(count, threads, [&](std::size_t i) {
    Tally t;
    fn(i, t);
    return t;
  });
  Tally all;
  for (auto& p : parts) all.merge(std::move(p));
  return all;
}

SuiteReport named(const char* name) {
  SuiteReport r;
  r.name = name;
  return r;
}

Vec flatten_basis(const Subspace& s) {
  Vec out;
  for (std::size_t r = 0; r < s.dim(); ++r) out.insert(out.end(), s.basis().row(r).begin(), s.basis().row(r).end());
  return out;
}

Json instance(const WedgeSpace& ws, const Subspace& x) {
  return Json{{"p", ws.field().value()}, {"n", ws.n()}, {"generators", subspace_to_json(ws, x)}};
}

Count samples_or(const SuiteOptions& opt, Count fallback) { return opt.samples.value_or(fallback); }

std::vector<int> iota_labels(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return v;
}

Subspace extra_special(const WedgeSpace& ws) {
  auto last = ws.v(2, 1);
  ws.add_v(last, 4, 3, ws.field().neg(1));
  return Subspace::span(ws.field(), ws.dim_v(), {ws.v(3, 1), ws.v(4, 1), ws.v(3, 2), ws.v(4, 2), last});
}

Subspace random_mixed(const PrimeModulus& f, std::size_t d, SampleRng& rng) {
  const auto k = rng.below(d + 1);
  return rng.below(2) ? random_subspace(f, d, k, rng) : random_sparse_subspace(f, d, k, rng);
}

// ---- individual suites

SuiteReport suite_table1(const SuiteOptions&) {
  SuiteReport rep = named("table1");
  Tally t;
  Count matched = 0;
  for (const auto& row : table1_rows()) {
    if (t.check(row.match, [&] { return Json{{"m", row.m}, {"published", row.published}, {"computed", row.computed}}; }))
      ++matched;
  }
  for (Count m : {Count{1}, Count{2}}) t.check(f_of(m) == 0, [&] { return Json{{"m", m}, {"computed", f_of(m)}}; });
  absorb(rep, std::move(t));
  rep.summary["rows"] = published_table1().size();
  rep.summary["matched"] = matched;
  return rep;
}

SuiteReport suite_rval(const SuiteOptions&) {
  SuiteReport rep = named("rval");
  Tally t;
  constexpr Count kMax = 5000;
  for (Count d = 0; d <= kMax; ++d) {
    Count brute = 0;
    for (Count r = 0; r <= d; ++r)
      if (r <= binom(d - r, 2)) brute = r;
    t.check(r_of(d) == brute, [&] { return Json{{"d", d}, {"r", r_of(d)}, {"expected", brute}}; });
  }
  absorb(rep, std::move(t));
  rep.summary["range"] = Json::array({0, kMax});
  return rep;
}

SuiteReport suite_kerdim(const SuiteOptions&) {
  SuiteReport rep = named("kerdim");
  Tally t;
  Json dims = Json::object();
  for (int p : {3, 5}) {
    const PrimeModulus f(p);
    Json row = Json::array();
    for (int n = 2; n <= 8; ++n) {
      const WedgeSpace ws(n, f);
      const auto ker = kernel_basis(ws.phi_block());
      row.push_back(ker.dim());
      t.check(ker.dim() == binom(static_cast<Count>(n), 3),
              [&] { return Json{{"p", p}, {"n", n}, {"dim", ker.dim()}}; });
      std::vector<Vec> flat;
      for (const auto& e : ker_phi_basis(ws)) flat.push_back(e.flatten());
      const auto spanned = Subspace::span(f, ws.dim_v() * static_cast<std::size_t>(n), flat);
      t.check(spanned == ker && flat.size() == spanned.dim(),
              [&] { return Json{{"p", p}, {"n", n}, {"error", "v_(abc) basis does not span the kernel"}}; });
    }
    dims[std::to_string(p)] = row;
  }
  absorb(rep, std::move(t));
  rep.summary["dims_n2_to_n8"] = dims;
  return rep;
}

SuiteReport suite_empirical_f(const SuiteOptions& opt) {
  SuiteReport rep = named("empirical_f");
  Tally t;
  const PrimeModulus f3(3);
  EmpiricalOptions eo{.budget = opt.budget, .samples = samples_or(opt, 2000), .seed = opt.seed, .threads = opt.threads};
  Json rows = Json::array();
  auto run = [&](int n, Count m) {
    const auto r = empirical_f(m, n, f3, eo);
    rows.push_back({{"n", n}, {"m", m}, {"value", r.value}, {"f", f_of(m)}, {"exhaustive", r.exhaustive},
                    {"visited", r.visited}});
    if (r.exhaustive) {
      t.check(r.value == f_of(m), [&] { return Json{{"n", n}, {"m", m}, {"value", r.value}, {"f", f_of(m)}}; });
    } else {
      // A sample can only certify a lower bound; anything above f is a violation.
      t.check(r.value <= f_of(m), [&] { return Json{{"n", n}, {"m", m}, {"sampled", r.value}, {"f", f_of(m)}}; });
      rep.notes.push_back("n=" + std::to_string(n) + " m=" + std::to_string(m) + ": population " +
                          std::to_string(r.population) + " exceeds the budget; sampled " + std::to_string(r.visited) +
                          " subspaces, maximum " + std::to_string(r.value) + " vs f=" + std::to_string(f_of(m)));
    }
  };
  for (Count m = 1; m <= 3; ++m) run(3, m);
  for (Count m = 1; m <= 6; ++m) run(4, m);
  for (Count m = 1; m <= 5; ++m) run(5, m);
  // The witness construction attains f exactly.
  for (Count m = 1; m <= 50; ++m) {
    const auto w = f_witness(m, f3);
    const auto ov = kernel_overlap(WedgeSpace(w.n, f3), w.x).dim;
    t.check(ov == f_of(m) && w.x.dim() == m, [&] { return Json{{"m", m}, {"witness_overlap", ov}}; });
  }
  absorb(rep, std::move(t));
  rep.summary["runs"] = rows;
  return rep;
}

SuiteReport suite_n4census(const SuiteOptions& opt) {
  SuiteReport rep = named("n4census");
  Tally t;
  Json census = Json::object();
  struct CensusAcc {
    Count total = 0, closed = 0;
    Tally tally;
  };
  for (int p : {3, 5, 7}) {
    const PrimeModulus f(p);
    const WedgeSpace ws(4, f);
    const Count population = gaussian_binomial(6, 5, static_cast<Count>(p));
    if (population > opt.budget) {
      const auto count = samples_or(opt, 300);
      t.merge(run_samples(count, opt.threads, [&](std::size_t i, Tally& tt) {
        SampleRng rng(opt.seed, i);
        const auto x = rng.below(2) ? random_subspace(f, 6, 5, rng) : random_sparse_subspace(f, 6, 5, rng);
        tt.check(classify_n4(ws, x).consistent(), [&] { return instance(ws, x); });
      }));
      rep.notes.push_back("p=" + std::to_string(p) + ": " + std::to_string(population) +
                          " subspaces exceed the budget; checked " + std::to_string(count) + " samples");
      continue;
    }
    auto accs = map_grassmannian<CensusAcc>(f, 6, 5, opt.threads, [&](const Subspace& x, CensusAcc& acc) {
      const auto c = classify_n4(ws, x);
      ++acc.total;
      if (c.closed) ++acc.closed;
      acc.tally.check(c.consistent(), [&] {
        auto j = instance(ws, x);
        j["routes"] = {{"psi", c.psi_route}, {"upsilon", c.upsilon_route}, {"overlap", c.overlap_route},
                       {"closed", c.closed}};
        return j;
      });
    });
    Count total = 0, closed = 0;
    for (auto& a : accs) {
      total += a.total;
      closed += a.closed;
      t.merge(std::move(a.tally));
    }
    t.check(total == population,
            [&] { return Json{{"p", p}, {"enumerated", total}}; });
    census[std::to_string(p)] = {{"subspaces", total}, {"closed", closed}, {"not_closed", total - closed}};
    // Closed ones are the sums Psi(u) + Psi(u'), one per line of P^3.
    const Count pp = static_cast<Count>(p), lines = (pp * pp + 1) * (pp * pp + pp + 1);
    t.check(closed == lines, [&] { return Json{{"p", p}, {"closed", closed}, {"lines", lines}}; });

    const auto es = classify_n4(ws, extra_special(ws));
    t.check(!es.closed && es.consistent(), [&] { return Json{{"p", p}, {"error", "extra-special classified closed"}}; });
    Count coordinate = 0;
    for (std::size_t drop = 0; drop < ws.dim_v(); ++drop) {
      std::vector<std::pair<int, int>> pairs;
      for (std::size_t c = 0; c < ws.dim_v(); ++c)
        if (c != drop) pairs.push_back(ws.indexing().v_pair(c));
      const auto x = ws.coordinate_subspace(pairs);
      const auto c = classify_n4(ws, x);
      ++coordinate;
      t.check(c.closed && c.consistent(), [&] { return instance(ws, x); });
    }
    census[std::to_string(p)]["coordinate_closed"] = coordinate;
  }
  absorb(rep, std::move(t));
  rep.summary["census"] = census;
  return rep;
}

void closure_identities(const WedgeSpace& ws, const Subspace& x, Tally& t) {
  const auto rep = analyze(ws, x);
  const auto n = static_cast<Count>(ws.n());
  const Count m = x.dim();
  auto fail = [&](const char* what) {
    return [&ws, &x, what] {
      auto j = instance(ws, x);
      j["identity"] = what;
      return j;
    };
  };
  t.check(rep.star.dim() == n * m - rep.overlap_dim, fail("dim X* = n dim X - overlap"));
  Count zsum = 0;
  for (auto z : rep.z_dims) zsum += z;
  t.check(zsum == rep.overlap_dim, fail("sum of dim Z_i = overlap"));
  t.check(rep.d_dims.front() == m, fail("d_1 = dim X"));
  for (std::size_t i = 0; i < rep.z_dims.size(); ++i) {
    const auto r = rep.z_dims[i], d = rep.d_dims[i];
    t.check(r <= r_of(d) && r <= binom(d - r, 2), fail("dim Z_i <= r(d_i)"));
    if (r > 0 && i + 1 < rep.d_dims.size()) t.check(rep.d_dims[i + 1] + min_s(r) <= d, fail("d_{i+1} <= d_i - s"));
  }
  const auto b = bounds_dim_star(n, m);
  t.check(b.lower <= rep.star.dim() && rep.star.dim() <= b.upper, fail("bounds on dim X*"));
  t.check(rep.overlap_dim <= f_of(m), fail("overlap <= f(dim X)"));
}

SuiteReport suite_closure_laws(const SuiteOptions& opt) {
  SuiteReport rep = named("closure_laws");
  const std::array<std::pair<int, int>, 6> cells{{{3, 3}, {3, 5}, {4, 3}, {4, 5}, {5, 3}, {5, 5}}};
  const auto count = samples_or(opt, 10'000);
  auto t = run_samples(count, opt.threads, [&](std::size_t i, Tally& tt) {
    const auto [n, p] = cells[i % cells.size()];
    const PrimeModulus f(p);
    const WedgeSpace ws(n, f);
    SampleRng rng(opt.seed, i);
    const auto x = random_mixed(f, ws.dim_v(), rng);
    const auto extra = random_sparse_subspace(f, ws.dim_v(), rng.below(3), rng);
    const auto xbig = subspace_sum(x, extra);
    auto fail = [&](const char* what) {
      return [&, what] {
        auto j = instance(ws, x);
        j["law"] = what;
        return j;
      };
    };
    const auto star = star_up(ws, x);
    const auto c = star_down(ws, star);
    tt.check(c.contains(x), fail("X <= X**"));
    tt.check(closure(ws, xbig).contains(c), fail("closure isotone"));
    tt.check(closure(ws, c) == c, fail("closure idempotent"));
    tt.check(star_up(ws, c) == star, fail("X* = X***"));

    const auto y = random_mixed(f, ws.dim_w(), rng);
    const auto ybig = subspace_sum(y, random_sparse_subspace(f, ws.dim_w(), rng.below(4), rng));
    const auto in = interior(ws, y);
    auto wfail = [&](const char* what) {
      return [&, what] {
        return Json{{"p", p}, {"n", n}, {"w_generators", w_subspace_to_json(ws, y)}, {"law", what}};
      };
    };
    tt.check(y.contains(in), wfail("Y** <= Y"));
    tt.check(interior(ws, ybig).contains(in), wfail("interior isotone"));
    tt.check(interior(ws, in) == in, wfail("interior idempotent"));
    tt.check(star_down(ws, in) == star_down(ws, y), wfail("Y* = Y***"));

    closure_identities(ws, x, tt);
  });
  absorb(rep, std::move(t));

  // Exhaustive report identities for every subspace of V(n), n <= 4, p = 3.
  const PrimeModulus f3(3);
  Count exhaustive = 0;
  for (int n = 2; n <= 4; ++n) {
    const WedgeSpace ws(n, f3);
    for (std::size_t k = 0; k <= ws.dim_v(); ++k) {
      auto parts = map_grassmannian<Tally>(f3, ws.dim_v(), k, opt.threads,
                                           [&](const Subspace& x, Tally& tt) { closure_identities(ws, x, tt); });
      for (auto& p : parts) absorb(rep, std::move(p));
      exhaustive += gaussian_binomial(ws.dim_v(), k, 3);
    }
  }
  rep.summary["samples"] = count;
  rep.summary["cells"] = "n in {3,4,5}, p in {3,5}";
  rep.summary["exhaustive_subspaces"] = exhaustive;
  return rep;
}

SuiteReport suite_psi_upsilon(const SuiteOptions& opt) {
  SuiteReport rep = named("psi_upsilon");
  Tally t;
  Json points = Json::array();
  for (const auto& [n, p] : std::array<std::pair<int, int>, 3>{{{3, 3}, {4, 3}, {4, 5}}}) {
    const PrimeModulus f(p);
    const WedgeSpace ws(n, f);
    std::set<Vec> seen;
    const auto pts = projective_points(n, f);
    for (const auto& pt : pts) {
      const auto psi = psi_subspace(ws, pt);
      auto fail = [&](const char* what) {
        return [&, what] { return Json{{"p", p}, {"n", n}, {"point", point_to_json(pt, f)}, {"property", what}}; };
      };
      t.check(psi.dim() == static_cast<std::size_t>(n - 1), fail("dim Psi = n - 1"));
      t.check(seen.insert(flatten_basis(psi)).second, fail("Psi injective"));
      t.check(kernel_overlap(ws, psi).dim == 0, fail("Psi^n meets ker Phi trivially"));
    }
    points.push_back({{"n", n}, {"p", p}, {"points", pts.size()}});
  }

  const auto count = samples_or(opt, 1000);
  t.merge(run_samples(count, opt.threads, [&](std::size_t i, Tally& tt) {
    const int n = 3 + static_cast<int>(i % 3);
    const PrimeModulus f(std::array<int, 3>{3, 5, 7}[(i / 3) % 3]);
    const WedgeSpace ws(n, f);
    SampleRng rng(opt.seed, i);
    const auto pt = random_point(n, f, rng);
    const auto psi = psi_subspace(ws, pt);
    Vec v;
    do v = rng.vec(f, ws.dim_v());
    while (psi.contains(v));
    const auto w = overlap_witness(ws, pt, v);
    const auto span = subspace_sum(psi, Subspace::span(f, ws.dim_v(), {v}));
    bool inside = true;
    for (const auto& c : w.components) inside = inside && span.contains(c);
    tt.check(!w.is_zero() && apply_phi(ws, w) == ws.zero_w() && inside, [&] {
      return Json{{"p", f.value()}, {"n", n}, {"point", point_to_json(pt, f)}, {"v", vector_to_json(ws, v)}};
    });
  }));

  t.merge(run_samples(count, opt.threads, [&](std::size_t i, Tally& tt) {
    const PrimeModulus f(std::array<int, 3>{3, 5, 7}[i % 3]);
    const WedgeSpace ws(4, f);
    SampleRng rng(opt.seed ^ 0x5bd1e995u, i);
    const auto q = random_point(4, f, rng);
    const auto ups = upsilon_subspace(ws, q);
    Vec v;
    do v = rng.vec(f, ws.dim_v());
    while (ups.contains(v));
    const auto pt = converse_n4_point(ws, q, v);
    const auto span = subspace_sum(ups, Subspace::span(f, ws.dim_v(), {v}));
    tt.check(span.contains(psi_subspace(ws, pt)), [&] {
      return Json{{"p", f.value()}, {"q", point_to_json(q, f)}, {"v", vector_to_json(ws, v)},
                  {"point", point_to_json(pt, f)}};
    });
  }));
  absorb(rep, std::move(t));
  rep.summary["projective_points"] = points;
  rep.summary["witness_pairs"] = count;
  rep.summary["converse_pairs"] = count;
  return rep;
}

SuiteReport suite_span_dims(const SuiteOptions& opt) {
  SuiteReport rep = named("span_dims");
  Tally t;
  const PrimeModulus f3(3);
  const WedgeSpace ws(4, f3);
  const auto basis = ker_phi_basis(ws);  // v_(123), v_(124), v_(134), v_(234)
  Count classes = 0;
  for (const auto& pt : projective_points(4, f3)) {
    const auto& b = pt.coords();  // b = (beta123, beta124, beta134, beta234)
    const auto e = combine(ws, basis, b);
    ++classes;
    auto fail = [&](const char* what) {
      return [&, what] { return Json{{"beta", point_to_json(pt, f3)}, {"property", what}}; };
    };
    t.check(component_span_dim(ws, e) == 3, fail("component span is 3"));
    const auto& v = e.components;
    Vec lhs = ws.zero_v(), rhs = ws.zero_v();
    for (std::size_t c = 0; c < lhs.size(); ++c) {
      lhs[c] = f3.add(f3.mul(b[3], v[0][c]), f3.mul(b[1], v[2][c]));
      rhs[c] = f3.add(f3.mul(b[2], v[1][c]), f3.mul(b[0], v[3][c]));
    }
    t.check(lhs == rhs, fail("linear relation among the components"));
  }
  rep.summary["classes_n4"] = classes;

  Json witnesses = Json::array();
  for (int n = 3; n <= 9; ++n) {
    const WedgeSpace w(n, f3);
    for (std::size_t k = 3; k <= static_cast<std::size_t>(n); ++k) {
      if (k == 4) continue;
      const auto r = span_dim_search(w, k, opt.budget, opt.seed);
      t.check(r.found && r.witness && component_span_dim(w, *r.witness) == k,
              [&] { return Json{{"n", n}, {"k", k}}; });
      if (static_cast<std::size_t>(n) == k && k <= 7 && k % 2 == 1)
        witnesses.push_back({{"n", n}, {"k", k}, {"witness", ker_element_to_json(w, *r.witness)}});
    }
  }
  rep.summary["witnesses"] = witnesses;

  Json four = Json::array();
  for (int n = 4; n <= 6; ++n) {
    const WedgeSpace w(n, f3);
    const auto r = span_dim_search(w, 4, std::min<Count>(opt.budget, 200'000), opt.seed);
    four.push_back({{"n", n}, {"found", r.found}, {"method", r.method}, {"tried", r.tried},
                    {"exhaustive", r.exhaustive}});
    if (r.found) {
      t.check(component_span_dim(w, *r.witness) == 4 && apply_phi(w, *r.witness) == w.zero_w(),
              [&] { return Json{{"n", n}, {"error", "bad span-4 witness"}}; });
      rep.notes.push_back("span 4 found at n=" + std::to_string(n) + ", p=3 after " + std::to_string(r.tried) +
                          " candidates");
    } else if (r.exhaustive) {
      rep.notes.push_back("no span-4 kernel element at n=" + std::to_string(n) + ", p=3 (all " +
                          std::to_string(r.tried) + " projective classes examined)");
    } else {
      rep.notes.push_back("span 4 not found at n=" + std::to_string(n) + ", p=3 within " + std::to_string(r.tried) +
                          " samples; this is not a nonexistence claim");
    }
  }
  rep.summary["span4_search"] = four;
  absorb(rep, std::move(t));
  return rep;
}

SuiteReport suite_structural(const SuiteOptions& opt) {
  SuiteReport rep = named("structural");
  Tally t;
  const PrimeModulus f3(3);
  Count coordinate = 0;
  for (int n = 2; n <= 4; ++n) {
    const WedgeSpace ws(n, f3);
    const auto d = ws.dim_v();
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      std::vector<std::pair<int, int>> pairs;
      for (std::size_t c = 0; c < d; ++c)
        if (mask >> c & 1) pairs.push_back(ws.indexing().v_pair(c));
      const auto x = ws.coordinate_subspace(pairs);
      ++coordinate;
      t.check(is_closed(ws, x), [&] { return instance(ws, x); });
    }
  }
  rep.summary["coordinate_subspaces"] = coordinate;

  const auto cancel = samples_or(opt, 500);
  t.merge(run_samples(cancel, opt.threads, [&](std::size_t i, Tally& tt) {
    const int n = 3 + static_cast<int>(i % 2);
    const PrimeModulus f(i / 2 % 2 ? 5 : 3);
    const WedgeSpace ws(n, f), small(n - 1, f);
    SampleRng rng(opt.seed, i);
    const auto psi = psi_subspace(ws, random_point(n, f, rng));
    const auto x = subspace_sum(psi, random_sparse_subspace(f, ws.dim_v(), rng.below(ws.dim_v() - psi.dim() + 1), rng));
    const auto red = reduce_central(ws, x, 1);
    tt.check(red && red->x.dim() + static_cast<std::size_t>(n - 1) == x.dim() &&
                 is_closed(ws, x) == is_closed(small, red->x),
             [&] { return instance(ws, x); });
  }));

  const auto direct = samples_or(opt, 200);
  t.merge(run_samples(direct, opt.threads, [&](std::size_t i, Tally& tt) {
    const int n = 3 + static_cast<int>(i % 3);
    const PrimeModulus f(i / 3 % 2 ? 5 : 3);
    const WedgeSpace ws(n, f);
    SampleRng rng(opt.seed, i);
    std::vector<int> labels = iota_labels(n);
    shuffle(labels, rng);
    const auto cut = 1 + rng.below(static_cast<std::uint64_t>(n - 1));
    std::vector<int> I(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(cut));
    std::vector<int> J(labels.begin() + static_cast<std::ptrdiff_t>(cut), labels.end());
    std::sort(I.begin(), I.end());
    std::sort(J.begin(), J.end());
    const WedgeSpace wi(static_cast<int>(I.size()), f), wj(static_cast<int>(J.size()), f);
    const auto xi = random_mixed(f, wi.dim_v(), rng);
    const auto xj = random_mixed(f, wj.dim_v(), rng);
    std::vector<std::pair<int, int>> cross;
    for (int a : I)
      for (int b : J) cross.emplace_back(std::max(a, b), std::min(a, b));
    const auto XI = image(relabel_v(wi, ws, I), xi);
    const auto XJ = image(relabel_v(wj, ws, J), xj);
    const auto vij = ws.coordinate_subspace(cross);
    const auto x = subspace_sum(subspace_sum(XI, XJ), vij);
    const auto expect = subspace_sum(subspace_sum(closure(ws, XI, I), closure(ws, XJ, J)), vij);
    tt.check(closure(ws, x) == expect && is_closed(ws, x) == (is_closed(wi, xi) && is_closed(wj, xj)), [&] {
      auto j = instance(ws, x);
      j["I"] = I;
      j["J"] = J;
      return j;
    });
  }));

  const auto perm = samples_or(opt, 500);
  t.merge(run_samples(perm, opt.threads, [&](std::size_t i, Tally& tt) {
    const int n = 3 + static_cast<int>(i % 3);
    const PrimeModulus f(i / 3 % 2 ? 5 : 3);
    const WedgeSpace ws(n, f);
    SampleRng rng(opt.seed, i);
    const auto x = random_mixed(f, ws.dim_v(), rng);
    auto sigma = iota_labels(n);
    shuffle(sigma, rng);
    const auto y = image(relabel_v(ws, ws, sigma), x);
    const auto g = image(induced_wedge_map(random_invertible(f, static_cast<std::size_t>(n), rng)), x);
    const bool c = is_closed(ws, x);
    tt.check(c == is_closed(ws, y) && c == is_closed(ws, g), [&] {
      auto j = instance(ws, x);
      j["sigma"] = sigma;
      return j;
    });
  }));
  absorb(rep, std::move(t));
  rep.summary["cancel_central"] = cancel;
  rep.summary["direct_sum"] = direct;
  rep.summary["permutation"] = perm;
  return rep;
}

SuiteReport suite_grassmannian(const SuiteOptions&) {
  SuiteReport rep = named("grassmannian");
  Tally t;
  Json counts = Json::array();
  for (int p : {3, 5}) {
    const PrimeModulus f(p);
    for (std::size_t d = 0; d <= (p == 3 ? 6u : 4u); ++d)
      for (std::size_t k = 0; k <= d; ++k) {
        std::set<Vec> seen;
        Count visited = 0;
        bool canonical = true;
        for (GrassmannianCursor c(f, d, k); !c.done(); c.next()) {
          ++visited;
          const auto s = c.current();
          canonical = canonical && s.basis() == c.basis();
          seen.insert(flatten_basis(s));
        }
        const auto expect = gaussian_binomial(d, k, static_cast<Count>(p));
        t.check(visited == expect && seen.size() == visited && canonical, [&] {
          return Json{{"d", d}, {"k", k}, {"p", p}, {"visited", visited}, {"distinct", seen.size()}, {"expected", expect}};
        });
        counts.push_back({{"d", d}, {"k", k}, {"p", p}, {"count", visited}});
      }
  }
  absorb(rep, std::move(t));
  rep.summary["counts"] = counts;
  return rep;
}

using SuiteFn = SuiteReport (*)(const SuiteOptions&);

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> r{
      {"table1", suite_table1},         {"rval", suite_rval},
      {"kerdim", suite_kerdim},         {"empirical_f", suite_empirical_f},
      {"n4census", suite_n4census},     {"closure_laws", suite_closure_laws},
      {"psi_upsilon", suite_psi_upsilon}, {"span_dims", suite_span_dims},
      {"structural", suite_structural}, {"grassmannian", suite_grassmannian},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"table1",       "rval",        "kerdim",    "empirical_f", "n4census",
                                              "closure_laws", "psi_upsilon", "span_dims", "structural",  "grassmannian"};
  return names;
}

SuiteReport verify_suite(const std::string& name, const SuiteOptions& opt) {
  const auto& r = registry();
  const auto it = r.find(name);
  if (it == r.end()) throw std::invalid_argument("unknown suite: " + name);
  auto rep = it->second(opt);
  rep.passed = rep.violations == 0;
  return rep;
}

}  // namespace capgrp
