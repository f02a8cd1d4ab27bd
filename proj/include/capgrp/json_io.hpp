#pragma once

#include <span>
#include <vector>

#include "json.hpp"

#include "capgrp/capability.hpp"
#include "capgrp/closure.hpp"
#include "capgrp/subspace.hpp"
#include "capgrp/wedge.hpp"

namespace capgrp {

using Json = nlohmann::ordered_json;

// Vectors of V(n) are written as sparse lists of [j, i, c] triples with
// 1 <= i < j <= n and c the balanced residue in (-p/2, p/2]. Vectors of W(n)
// use [j, i, k, c]. Zero entries are omitted.

Json vector_to_json(const WedgeSpace& ws, std::span<const Scalar> v);
Json w_vector_to_json(const WedgeSpace& ws, std::span<const Scalar> w);
/// One sparse vector per canonical basis row.
Json subspace_to_json(const WedgeSpace& ws, const Subspace& x);
Json w_subspace_to_json(const WedgeSpace& ws, const Subspace& y);
/// List of n sparse vectors.
Json ker_element_to_json(const WedgeSpace& ws, const KerPhiElement& e);
Json point_to_json(const ProjectivePoint& pt, const PrimeModulus& f);
Json closure_report_to_json(const WedgeSpace& ws, const ClosureReport& r);
Json verdict_to_json(const PrimeModulus& f, int n, const CapabilityVerdict& v);

/// Parses one sparse [[j, i, c], ...] list; repeated pairs add up. Throws
/// std::invalid_argument with a description on malformed input.
Vec vector_from_json(const WedgeSpace& ws, const Json& j);
Subspace subspace_from_json(const WedgeSpace& ws, const Json& rows);

}  // namespace capgrp
