#include "capgrp/json_io.hpp"

#include <stdexcept>
#include <string>

namespace capgrp {

namespace {

std::int64_t as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw std::invalid_argument(where + ": expected an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

}  // namespace

Json vector_to_json(const WedgeSpace& ws, std::span<const Scalar> v) {
  Json out = Json::array();
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c] == 0) continue;
    const auto [j, i] = ws.indexing().v_pair(c);
    out.push_back({j, i, ws.field().balanced(v[c])});
  }
  return out;
}

Json w_vector_to_json(const WedgeSpace& ws, std::span<const Scalar> w) {
  Json out = Json::array();
  for (std::size_t c = 0; c < w.size(); ++c) {
    if (w[c] == 0) continue;
    const auto t = ws.indexing().w_triple(c);
    out.push_back({t[0], t[1], t[2], ws.field().balanced(w[c])});
  }
  return out;
}

Json subspace_to_json(const WedgeSpace& ws, const Subspace& x) {
  Json out = Json::array();
  for (std::size_t r = 0; r < x.dim(); ++r) out.push_back(vector_to_json(ws, x.basis().row(r)));
  return out;
}

Json w_subspace_to_json(const WedgeSpace& ws, const Subspace& y) {
  Json out = Json::array();
  for (std::size_t r = 0; r < y.dim(); ++r) out.push_back(w_vector_to_json(ws, y.basis().row(r)));
  return out;
}

Json ker_element_to_json(const WedgeSpace& ws, const KerPhiElement& e) {
  Json out = Json::array();
  for (const auto& c : e.components) out.push_back(vector_to_json(ws, c));
  return out;
}

Json point_to_json(const ProjectivePoint& pt, const PrimeModulus& f) {
  Json out = Json::array();
  for (auto c : pt.coords()) out.push_back(f.balanced(c));
  return out;
}

Json closure_report_to_json(const WedgeSpace& ws, const ClosureReport& r) {
  Json out;
  out["dim_x"] = r.input.dim();
  out["dim_star"] = r.star.dim();
  out["dim_closure"] = r.closure.dim();
  out["closed"] = r.closed;
  out["overlap_dim"] = r.overlap_dim;
  out["z_dims"] = r.z_dims;
  out["d_dims"] = r.d_dims;
  out["basis"] = subspace_to_json(ws, r.input);
  out["closure"] = subspace_to_json(ws, r.closure);
  return out;
}

Json verdict_to_json(const PrimeModulus& f, int n, const CapabilityVerdict& v) {
  Json out;
  out["p"] = f.value();
  out["n"] = n;
  out["capable"] = v.capable;
  out["reason"] = std::string(to_string(v.reason));
  if (v.report) {
    const WedgeSpace ws(n, f);
    const auto& r = *v.report;
    out["dim_x"] = r.input.dim();
    out["rank_commutator"] = ws.dim_v() - r.input.dim();
    out["dim_star"] = r.star.dim();
    out["overlap_dim"] = r.overlap_dim;
    out["z_dims"] = r.z_dims;
    out["d_dims"] = r.d_dims;
    out["dim_closure"] = r.closure.dim();
    out["basis"] = subspace_to_json(ws, r.input);
    out["closure"] = subspace_to_json(ws, r.closure);
  } else {
    out["dim_x"] = nullptr;
    out["dim_star"] = nullptr;
    out["overlap_dim"] = nullptr;
    out["z_dims"] = nullptr;
  }
  Json pts = Json::array();
  for (const auto& p : v.central_points) pts.push_back(point_to_json(p, f));
  out["central_points"] = pts;
  Json chain = Json::array();
  for (const auto& step : v.reduced_chain) {
    const WedgeSpace ws(step.n, f);
    chain.push_back({{"n", step.n}, {"dim_x", step.x.dim()}, {"generators", subspace_to_json(ws, step.x)}});
  }
  out["reduced_chain"] = chain;
  return out;
}

Vec vector_from_json(const WedgeSpace& ws, const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("a vector must be a list of [j, i, c] triples, got " + j.dump());
  auto v = ws.zero_v();
  const auto& f = ws.field();
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) throw std::invalid_argument("expected a [j, i, c] triple, got " + t.dump());
    const auto a = as_int(t[0], "j"), b = as_int(t[1], "i"), c = as_int(t[2], "coefficient");
    if (!ws.indexing().valid_v(static_cast<int>(a), static_cast<int>(b)) || a > ws.n()) {
      throw std::invalid_argument("entry " + t.dump() + " needs 1 <= i < j <= " + std::to_string(ws.n()));
    }
    auto& slot = v[ws.indexing().v_index(static_cast<int>(a), static_cast<int>(b))];
    slot = f.add(slot, f.reduce(c));
  }
  return v;
}

Subspace subspace_from_json(const WedgeSpace& ws, const Json& rows) {
  if (!rows.is_array()) throw std::invalid_argument("generators must be a list of vectors");
  std::vector<Vec> gens;
  for (const auto& r : rows) gens.push_back(vector_from_json(ws, r));
  return Subspace::span(ws.field(), ws.dim_v(), gens);
}

}  // namespace capgrp
