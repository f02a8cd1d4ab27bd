#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "capgrp/arith.hpp"
#include "capgrp/closure.hpp"
#include "capgrp/subspace.hpp"
#include "capgrp/wedge.hpp"

namespace capgrp {

/// [x_j, x_i]^e with 1 <= i < j <= n.
struct CommutatorPower {
  int j;
  int i;
  std::int64_t e;
};

/// A product of commutator powers set equal to 1.
using Relator = std::vector<CommutatorPower>;

/// A class-2 exponent-p group on n generators given by commutator relators.
/// Since every relator is a product of commutators, the generators project
/// onto a basis of the abelianization.
struct GroupPresentation {
  PrimeModulus p;
  int n;
  std::vector<Relator> relators;
};

/// A point of P^{n-1}: nonzero coordinates scaled so the first nonzero entry is 1.
class ProjectivePoint {
 public:
  /// Throws std::invalid_argument on an empty or all-zero tuple.
  ProjectivePoint(const PrimeModulus& field, Vec coords);

  const Vec& coords() const noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }
  Scalar operator[](std::size_t i) const { return coords_[i]; }
  /// 0-based position of the leading 1.
  std::size_t lead() const noexcept { return lead_; }

  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) { return a.coords_ == b.coords_; }

 private:
  Vec coords_;
  std::size_t lead_ = 0;
};

/// Canonical order: leading position ascending, then the tail after the
/// leading 1 lexicographically. There are (p^n - 1)/(p - 1) points.
std::vector<ProjectivePoint> projective_points(int n, const PrimeModulus& field);
std::size_t projective_point_count(int n, const PrimeModulus& field);

enum class VerdictReason { CyclicNontrivial, Closed, NotClosed, TrivialGroup };

std::string_view to_string(VerdictReason r);

/// One step of central cancellation: the smaller instance (n, X).
struct CentralReduction {
  int n;
  Subspace x;
};

struct CapabilityVerdict {
  bool capable = false;
  VerdictReason reason = VerdictReason::NotClosed;
  std::optional<ClosureReport> report;
  std::vector<ProjectivePoint> central_points;
  std::vector<CentralReduction> reduced_chain;
};

/// One vector sum e * v_{ji} per relator. Throws std::invalid_argument for
/// n < 2 or indices outside 1 <= i < j <= n.
Subspace presentation_to_subspace(const GroupPresentation& pres);

/// n = 0 is the trivial group (capable); n = 1 is cyclic of order p (not
/// capable); otherwise capable exactly when X is closed.
CapabilityVerdict is_capable(const GroupPresentation& pres);
/// The same decision for a subspace already in V(n), n >= 2.
CapabilityVerdict verdict_for_subspace(const WedgeSpace& ws, const Subspace& x, unsigned threads = 0);

/// n <= 2m + C(m, 2) where n = rank(G/Z(G)) and m = rank([G, G]).
bool necessary_rank_condition(Count n, Count m);
/// f(C(n,2) - m + 1) < n; true guarantees capability. Throws
/// std::invalid_argument when m > C(n,2).
bool sufficient_rank_condition(Count n, Count m);

/// Psi(pt) = (sum_j alpha_j u_j) ^ U, spanned by v_i = sum_j alpha_j v_{ji}.
Subspace psi_subspace(const WedgeSpace& ws, const ProjectivePoint& pt);

/// Every projective point u with Psi(u) inside X, in canonical order.
std::vector<ProjectivePoint> central_points(const WedgeSpace& ws, const Subspace& x, unsigned threads = 0);

/// Cancels the first central point: a change of basis sends it to u_n, the
/// v_{ni} are stripped and the rest is returned as a subspace of V(n-1).
/// Returns nullopt when no central point exists. Requires n > 2.
std::optional<CentralReduction> reduce_central(const WedgeSpace& ws, const Subspace& x, unsigned threads = 0);

/// Upsilon(q) in V(4) for q = [a123 : a124 : a134 : a234]. Requires n = 4.
Subspace upsilon_subspace(const WedgeSpace& ws, const ProjectivePoint& q);

/// The three n = 4 closedness tests for a 5-dimensional X.
struct N4Classification {
  bool psi_route = false;       // some Psi(pt) inside X
  bool upsilon_route = false;   // some Upsilon(q) inside X
  bool overlap_route = false;   // X^4 ∩ ker Phi nonzero
  bool closed = false;          // X == X**
  std::optional<ProjectivePoint> psi_witness;
  std::optional<ProjectivePoint> upsilon_witness;

  bool consistent() const noexcept {
    return psi_route == closed && upsilon_route == closed && overlap_route == closed;
  }
};

/// Throws std::invalid_argument unless n = 4 and dim X = 5.
N4Classification classify_n4(const WedgeSpace& ws, const Subspace& x);

/// Nonzero element of <Psi(pt), v>^n ∩ ker Phi. Component u is
/// alpha_u v + sum_j alpha_{ju} v_j, with alpha_{ji} the coefficients of v and
/// v_j the generators of Psi(pt). Throws std::invalid_argument if v lies in Psi(pt).
KerPhiElement overlap_witness(const WedgeSpace& ws, const ProjectivePoint& pt, std::span<const Scalar> v);

/// pt = [b1 : b2 : b3 : b4] with Psi(pt) inside <Upsilon(q), v>. Throws
/// std::invalid_argument if v lies in Upsilon(q) (every b vanishes).
ProjectivePoint converse_n4_point(const WedgeSpace& ws, const ProjectivePoint& q, std::span<const Scalar> v);

}  // namespace capgrp
