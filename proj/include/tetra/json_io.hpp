#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "tetra/contraction.hpp"
#include "tetra/counterexample.hpp"
#include "tetra/error.hpp"
#include "tetra/geometry.hpp"
#include "tetra/model.hpp"
#include "tetra/poly3.hpp"

namespace tetra::io {

using json = nlohmann::ordered_json;

/// Non-finite reals (an empty max, say) render as null.
inline json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw error(error_kind::parse_error, "expected a number or [re, im], got " + j.dump());
}

inline json to_json(const CMatrix& m) {
  json data = json::array();
  for (const cplx& z : m.data()) data.push_back(to_json(z));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

/// {"rows", "cols", "data"} with data row-major [re, im] pairs (or plain reals).
inline CMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw error(error_kind::parse_error, "matrix needs rows, cols and data");
  }
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const json& data = j.at("data");
  if (!data.is_array() || data.size() != rows * cols) {
    throw error(error_kind::parse_error, "matrix data has " + std::to_string(data.size()) + " entries, expected " +
                                             std::to_string(rows * cols));
  }
  std::vector<cplx> v;
  v.reserve(data.size());
  for (const json& z : data) v.push_back(complex_from_json(z));
  return CMatrix(rows, cols, std::move(v));
}

inline json to_json(const Point3& p) { return {{"x1", to_json(p.x1)}, {"x2", to_json(p.x2)}, {"x3", to_json(p.x3)}}; }

inline Point3 point_from_json(const json& j) {
  if (!j.is_object()) throw error(error_kind::parse_error, "point must be an object");
  Point3 p{complex_from_json(j.at("x1")), complex_from_json(j.at("x2")), complex_from_json(j.at("x3"))};
  if (!p.is_finite()) throw error(error_kind::parse_error, "point has non-finite coordinates");
  return p;
}

inline json to_json(const Poly3& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exp", {e[0], e[1], e[2]}}, {"coef", to_json(c)}});
  return terms;
}

/// A list of {"exp": [m1, m2, m3], "coef": [re, im]}.
inline Poly3 poly_from_json(const json& j) {
  if (!j.is_array()) throw error(error_kind::parse_error, "polynomial must be a list of terms");
  Poly3 p;
  for (const json& t : j) {
    const json& e = t.at("exp");
    if (!e.is_array() || e.size() != 3) throw error(error_kind::parse_error, "exponent must have three entries");
    p.add_term({e[0].get<unsigned>(), e[1].get<unsigned>(), e[2].get<unsigned>()}, complex_from_json(t.at("coef")));
  }
  return p;
}

inline json to_json(const OperatorTriple& t) {
  return {{"t1", to_json(t.t1)}, {"t2", to_json(t.t2)}, {"t3", to_json(t.t3)}, {"tol", t.tol}};
}

inline OperatorTriple triple_from_json(const json& j) {
  if (!j.is_object()) throw error(error_kind::parse_error, "triple must be an object");
  return {matrix_from_json(j.at("t1")), matrix_from_json(j.at("t2")), matrix_from_json(j.at("t3")),
          j.value("tol", 1e-9)};
}

/// Parse text, mapping nlohmann exceptions onto ParseError.
inline json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& ex) {
    throw error(error_kind::parse_error, ex.what());
  }
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json to_json(const Classification& c) {
  json j{{"membership", to_string(c.membership)},
         {"in_closure", c.in_closure()},
         {"interior", to_string(c.interior)},
         {"evidence", c.evidence}};
  if (c.betas) {
    j["beta1"] = to_json(c.betas->beta1);
    j["beta2"] = to_json(c.betas->beta2);
    j["beta_sum"] = c.beta_sum;
  } else {
    j["boundary_defect"] = c.boundary_defect;
  }
  return j;
}

inline json to_json(const FundamentalPair& fp) {
  return {{"rank", fp.rank()},
          {"a1", to_json(fp.a1)},
          {"a2", to_json(fp.a2)},
          {"residual1", fp.residual1},
          {"residual2", fp.residual2}};
}

inline json to_json(const UnitaryReport& r) {
  return {{"pass", r.pass()},
          {"commutation", r.commutation},
          {"n3_unitary_defect", r.n3_unitary_defect},
          {"n2_norm", r.n2_norm},
          {"n1_identity_defect", r.n1_identity_defect},
          {"n1_normality", r.n1_normality},
          {"n2_normality", r.n2_normality},
          {"tol", r.tol}};
}

inline json to_json(const IsometryReport& r) {
  return {{"pass", r.pass()},
          {"subspace", r.subspace},
          {"commutation", r.commutation},
          {"v3_isometry_defect", r.v3_isometry_defect},
          {"v2_norm", r.v2_norm},
          {"v1_identity_defect", r.v1_identity_defect},
          {"claim_identity_defect", r.claim_identity_defect},
          {"tol", r.tol}};
}

inline json to_json(const FalsifyVerdict& v) {
  json j{{"result", v.violated() ? "Violation" : "NoViolationFound"},
         {"trials_run", v.trials_run},
         {"rechecks", v.rechecks},
         {"max_gap", real(v.max_gap)}};
  if (v.violation) {
    j["violation"] = {{"trial", v.violation->trial},
                      {"poly", to_json(v.violation->poly)},
                      {"operator_norm", v.violation->operator_norm},
                      {"sup_estimate", v.violation->sup_estimate}};
  }
  return j;
}

inline json to_json(const SplitHypothesesReport& r) {
  return {{"pass", r.pass()},
          {"condition_i", r.condition_i()},
          {"condition_i_strict", r.condition_i_strict()},
          {"condition_ii", r.condition_ii()},
          {"half", r.half},
          {"horizon", r.horizon},
          {"kernel_distance", r.kernel_distance},
          {"range_distance", r.range_distance},
          {"kernel_distance_interior", r.kernel_distance_interior},
          {"range_distance_interior", r.range_distance_interior},
          {"annihilates_range", r.annihilates_range},
          {"kernel_into_range", r.kernel_into_range},
          {"tol", r.tol}};
}

inline json to_json(const ObstructionReport& r) {
  return {{"verdict", r.obstructed() ? "Obstructed" : "NotObstructed"},
          {"c1", r.c1},
          {"c2", r.c2},
          {"mode", r.mode},
          {"tol", r.tol}};
}

inline json to_json(const PipelineReport& r) {
  json j{{"verdict", r.verdict}, {"hypotheses", to_json(r.hypotheses)}};
  if (r.pair) j["fundamental"] = to_json(*r.pair);
  if (r.obstruction) j["obstruction"] = to_json(*r.obstruction);
  return j;
}

inline json to_json(const DilationReport& r) {
  json failing = json::array();
  for (const auto& e : r.failing) failing.push_back({e[0], e[1], e[2]});
  return {{"compression_holds", r.compression_holds()},
          {"extension_property", r.extension_property()},
          {"max_degree", r.max_degree},
          {"checked", r.checked},
          {"max_compression_defect", r.max_compression_defect},
          {"failing", std::move(failing)},
          {"coinvariance_defect", r.coinvariance_defect},
          {"tol", r.tol}};
}

inline json to_json(const SymbolPair& sp) {
  return {{"valid", sp.valid()},
          {"dim", sp.dim()},
          {"commutator_defect", sp.commutator_defect},
          {"self_commutator_defect", sp.self_commutator_defect},
          {"symbol_sup", sp.symbol_sup},
          {"z_samples", sp.z_samples},
          {"tol", sp.tol}};
}

inline json to_json(const PointwiseReport& r) {
  return {{"pass", r.pass()},
          {"n_roots", r.n_roots},
          {"max_n2_norm", r.max_n2_norm},
          {"max_n1_normality", r.max_n1_normality},
          {"max_identity_defect", r.max_identity_defect},
          {"worst_root", r.worst_root}};
}

inline json to_json(const RecoveredPair& r) {
  return {{"g1", to_json(r.g1)},
          {"g2", to_json(r.g2)},
          {"off_block_mass", r.off_block_mass},
          {"defect_rank", r.defect_rank}};
}

inline json to_json(const CaseReport& r) {
  return {{"pass", r.pass()},
          {"samples", r.samples},
          {"case1", r.case1},
          {"case2", r.case2},
          {"violations", r.violations},
          {"worst_margin", real(r.worst_margin)},
          {"tol", r.tol}};
}

inline json to_json(const CfStudy& s) {
  json entries = json::array();
  for (const CfEntry& e : s.entries) {
    entries.push_back({{"b0", to_json(e.b0)},
                       {"b1", to_json(e.b1)},
                       {"bound", e.bound},
                       {"values", e.values},
                       {"monotone", e.monotone},
                       {"within_band", e.within_band}});
  }
  return {{"pass", s.pass()}, {"degrees", s.degrees}, {"entries", std::move(entries)}};
}

inline json to_json(const CounterexampleVerdict& v) {
  json stages = json::array();
  for (const Stage& s : v.stages) stages.push_back({{"name", s.name}, {"passed", s.passed}, {"detail", s.detail}});
  json j{{"verdict", v.verdict},
         {"failing_stage", v.failing_stage ? json(*v.failing_stage) : json(nullptr)},
         {"message", v.message},
         {"config",
          {{"blocks", v.config.blocks},
           {"trials", v.config.trials},
           {"degree", v.config.degree},
           {"samples", v.config.samples},
           {"margin", v.config.margin},
           {"seed", v.config.seed},
           {"tolerances",
            {{"algebraic", v.config.tol.algebraic},
             {"optimization", v.config.tol.optimization},
             {"rank", v.config.tol.rank}}}}},
         {"dim", v.dim},
         {"stages", std::move(stages)},
         {"constants",
          {{"commutation_defect", v.commutation_defect},
           {"pairwise_product_max", v.pairwise_product_max},
           {"j_norm", v.j_norm},
           {"f1_square_max", v.f1_square_max},
           {"f1_numerical_radius", v.f1_numerical_radius}}},
         {"defect",
          {{"rank", v.defect_rank},
           {"idempotence", v.defect_idempotence},
           {"structure", v.defect_structure},
           {"kernel_map", v.kernel_map_defect}}}};
  if (v.hypotheses) j["hypotheses"] = to_json(*v.hypotheses);
  if (v.pair) {
    j["fundamental"] = {{"rank", v.pair->rank()},
                        {"a1_norm", v.a1_norm},
                        {"a2_norm", v.a2_norm},
                        {"a1_embedding_defect", v.a1_embedding_defect},
                        {"residual1", v.pair->residual1},
                        {"residual2", v.pair->residual2}};
  }
  if (v.obstruction) j["obstruction"] = to_json(*v.obstruction);
  if (v.falsify) j["falsify"] = to_json(*v.falsify);
  if (v.linear_collapse_defect) j["linear_collapse_defect"] = *v.linear_collapse_defect;
  if (v.cases) j["cases"] = to_json(*v.cases);
  if (v.cf) j["caratheodory_fejer"] = to_json(*v.cf);
  return j;
}

}  // namespace tetra::io
