// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "capgrp/verify.hpp"

using namespace capgrp;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome from_suite(const SuiteReport& r) {
  Outcome o{r.passed, std::to_string(r.checks) + " checks, " + std::to_string(r.violations) + " violations"};
  if (!r.failures.empty()) o.detail += "; first counterexample " + r.failures.front().dump();
  return o;
}

SuiteOptions options() {
  SuiteOptions o;
  o.seed = 1;
  o.threads = 0;
  return o;
}

Outcome criterion1() {
  auto o = from_suite(verify_suite("table1", options()));
  o.ok = o.ok && table1_rows().size() == 48 && f_of(1) == 0 && f_of(2) == 0;
  return o;
}

Outcome criterion2() { return from_suite(verify_suite("kerdim", options())); }

Outcome criterion3() {
  const PrimeModulus f(3);
  EmpiricalOptions eo;
  const std::array<Count, 6> expect{0, 0, 1, 1, 2, 4};
  Outcome o;
  for (Count m = 1; m <= 6; ++m) {
    const auto e = empirical_f(m, 4, f, eo);
    o.ok = o.ok && e.exhaustive && e.value == expect[m - 1] && e.value == f_of(m);
    o.detail += (m > 1 ? " " : "") + std::to_string(e.value);
  }
  const auto three = empirical_f(3, 3, f, eo);
  o.ok = o.ok && three.exhaustive && three.value == 1;
  o.detail = "n=4: " + o.detail + "; n=3, m=3: " + std::to_string(three.value);
  return o;
}

Outcome criterion4() {
  const auto r = verify_suite("n4census", options());
  auto o = from_suite(r);
  const auto& c3 = r.summary["census"]["3"];
  o.ok = o.ok && c3["subspaces"] == 364 && c3["coordinate_closed"] == 6;
  o.detail += "; p=3: " + c3.dump();
  return o;
}

Outcome criterion5() {
  auto opt = options();
  opt.samples = 10'000;
  return from_suite(verify_suite("closure_laws", opt));
}

Outcome criterion6() {
  auto opt = options();
  opt.samples = 1000;
  return from_suite(verify_suite("psi_upsilon", opt));
}

Outcome criterion7() {
  const auto r = verify_suite("span_dims", options());
  auto o = from_suite(r);
  o.ok = o.ok && r.summary["classes_n4"] == 40 && r.summary["witnesses"].size() == 3;
  return o;
}

Outcome criterion8() {
  const auto r = verify_suite("structural", options());
  auto o = from_suite(r);
  o.ok = o.ok && r.summary["cancel_central"] == 500 && r.summary["direct_sum"] == 200 &&
         r.summary["permutation"] == 500;
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all{
      {1, "published f(m) values, m = 3..50", 1, criterion1},
      {2, "dim ker Phi = C(n,3), n = 2..8, p in {3,5}", 10, criterion2},
      {3, "exhaustive empirical f on V(4) and V(3) over GF(3)", 600, criterion3},
      {4, "n = 4 census, three routes agree", 300, criterion4},
      {5, "closure and interior laws, 10^4 samples", 300, criterion5},
      {6, "Psi and Upsilon properties", 120, criterion6},
      {7, "component span dimensions", 60, criterion7},
      {8, "coordinate, cancellation, direct-sum, permutation checks", 300, criterion8},
  };
  bool all_ok = true;
  for (const auto& c : all) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool ok = o.ok && in_time;
    all_ok = all_ok && ok;
    std::printf("criterion %d: %s  %s  [%.2fs, limit %.0fs%s]  %s\n", c.id, ok ? "PASS" : "FAIL", c.name, secs,
                c.limit_seconds, in_time ? "" : ", over time", o.detail.c_str());
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
