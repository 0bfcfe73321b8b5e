#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tetra/contraction.hpp"
#include "tetra/error.hpp"
#include "tetra/linalg.hpp"
#include "tetra/poly3.hpp"
#include "tetra/random.hpp"
#include "tetra/triple.hpp"

namespace tetra {

struct CounterexampleConfig {
  std::size_t blocks = 4;  // truncation N of l^2(C^2)
  Tolerances tol{};
  std::size_t trials = 200;
  unsigned degree = 3;
  std::size_t samples = 2000;
  double margin = 1e-3;
  std::size_t case_samples = 10000;
  std::size_t cf_pairs = 3;
  std::vector<unsigned> cf_degrees{0, 2, 4, 8};
  int cf_iters = 400;
  std::uint64_t seed = 0;

  void validate() const {
    if (blocks < 3) throw error(error_kind::truncation_too_small, "counterexample needs at least 3 blocks");
    if (tol.algebraic <= 0.0 || tol.optimization <= 0.0 || tol.rank <= 0.0) {
      throw error(error_kind::invalid_argument, "tolerances must be positive");
    }
  }
};

/// The 2x2 nilpotent F1 = [[0, 1/4], [0, 0]].
inline CMatrix f1_matrix() { return CMatrix{{0.0, 0.25}, {0.0, 0.0}}; }

/// F on (C^2)^N: F1 on the first coefficient block, zero elsewhere.
inline CMatrix f_operator(std::size_t blocks) {
  CMatrix f(2 * blocks, 2 * blocks);
  f.set_block(0, 0, f1_matrix());
  return f;
}

/// Truncated unilateral shift on (C^2)^N.
inline CMatrix shift_operator(std::size_t blocks) {
  CMatrix v(2 * blocks, 2 * blocks);
  for (std::size_t j = 0; j + 1 < blocks; ++j) v.set_block(2 * (j + 1), 2 * j, CMatrix::identity(2));
  return v;
}

/**
 * @brief The counterexample triple on H1 + H1 with H1 = l^2(E) + l^2(E).
 *
 * Coordinates: copy c of l^2(E) occupies [2Nc, 2N(c+1)), coefficient j of
 * copy c sits at 2Nc + 2j. T1 = 0 + J, T2 = 0, T3 = [[0, 0], [Y, 0]] with
 * J = F + 0 and Y = [[0, V], [I, 0]].
 */
struct Counterexample {
  std::size_t blocks = 0;
  OperatorTriple triple;
  std::size_t half = 0;              // dim H1 = 4N
  std::vector<std::size_t> horizon;  // last coefficient block of every copy
  CMatrix j;
  CMatrix y;
  CMatrix f;
  CMatrix v;

  std::size_t copy_dim() const { return 2 * blocks; }
};

inline Counterexample build_counterexample(const CounterexampleConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.blocks;
  const std::size_t m = 2 * n;
  Counterexample ce;
  ce.blocks = n;
  ce.half = 2 * m;
  ce.f = f_operator(n);
  ce.v = shift_operator(n);
  ce.j = direct_sum(ce.f, CMatrix::zeros(m, m));
  ce.y = CMatrix(2 * m, 2 * m);
  ce.y.set_block(0, m, ce.v);
  ce.y.set_block(m, 0, CMatrix::identity(m));

  CMatrix t1(4 * m, 4 * m);
  t1.set_block(2 * m, 2 * m, ce.j);
  CMatrix t3(4 * m, 4 * m);
  t3.set_block(2 * m, 0, ce.y);
  ce.triple = OperatorTriple(std::move(t1), CMatrix(4 * m, 4 * m), std::move(t3), cfg.tol.algebraic);
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t e = 0; e < 2; ++e) ce.horizon.push_back(c * m + 2 * (n - 1) + e);
  return ce;
}

/// Largest ||T_i T_j|| over all ordered pairs, squares included.
inline double max_pairwise_product(const OperatorTriple& t) {
  double m = 0.0;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) m = std::max(m, (t[a] * t[b]).max_abs());
  return m;
}

struct CaseReport {
  std::size_t samples = 0;
  std::size_t case1 = 0;  // a0 <= a1
  std::size_t case2 = 0;
  std::size_t violations = 0;
  double worst_margin = -std::numeric_limits<double>::infinity();  // max of lhs - rhs
  double tol = 0.0;

  bool pass() const { return violations == 0; }
};

/// Left and right sides of the 2x2 norm comparison for nonnegative (a0, a1, a3).
inline std::pair<double, double> case_inequality_sides(double a0, double a1, double a3) {
  const double lhs = op_norm(CMatrix{{a0, 0.0}, {a3, a0 + a1 / 4.0}});
  const double rhs = a0 <= a1 ? op_norm(CMatrix{{a0, 0.0}, {a1 + a3, a0}}) : op_norm(CMatrix{{a0, 0.0}, {a0 + a3, a0}});
  return {lhs, rhs};
}

/**
 * @brief Sample (a0, a1, a3) in [0, 1]^3 and compare both sides.
 *
 * Every eighth sample pins a0 = 0 or a0 = a1 so the case boundary and the
 * degenerate edge are always covered.
 */
inline CaseReport case_inequality_check(std::size_t n_samples, std::uint64_t seed = 0, double tol = 1e-12) {
  rng_t rng(seed);
  CaseReport r;
  r.tol = tol;
  for (std::size_t i = 0; i < n_samples; ++i) {
    double a0 = uniform(rng);
    const double a1 = uniform(rng);
    const double a3 = uniform(rng);
    if (i % 8 == 3) a0 = 0.0;
    if (i % 8 == 7) a0 = a1;
    const auto [lhs, rhs] = case_inequality_sides(a0, a1, a3);
    ++r.samples;
    ++(a0 <= a1 ? r.case1 : r.case2);
    r.worst_margin = std::max(r.worst_margin, lhs - rhs);
    if (lhs > rhs + tol) ++r.violations;
  }
  return r;
}

struct CfEntry {
  cplx b0;
  cplx b1;
  double bound = 0.0;           // cf_matrix_norm
  std::vector<double> values;   // cf_empirical_inf at each study degree
  bool monotone = false;
  bool within_band = false;     // final value in [bound - 1e-6, 1.02 bound]
};

struct CfStudy {
  std::vector<unsigned> degrees;
  std::vector<CfEntry> entries;

  bool pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const CfEntry& e) { return e.monotone && e.within_band; });
  }
};

inline CfEntry cf_entry(cplx b0, cplx b1, const std::vector<unsigned>& degrees, int iters, std::uint64_t seed) {
  CfEntry e{b0, b1, cf_matrix_norm(b0, b1), {}, true, false};
  for (unsigned d : degrees) {
    const double v = cf_empirical_inf(b0, b1, d, iters, seed);
    if (!e.values.empty() && v > e.values.back()) e.monotone = false;
    e.values.push_back(v);
  }
  if (!e.values.empty()) e.within_band = e.values.back() >= e.bound - 1e-6 && e.values.back() <= 1.02 * e.bound;
  return e;
}

/// (3/5, 4/5) followed by seeded pairs with entries of modulus below 1.
inline CfStudy cf_study(std::size_t pairs, const std::vector<unsigned>& degrees, int iters, std::uint64_t seed) {
  CfStudy s;
  s.degrees = degrees;
  rng_t rng(seed);
  for (std::size_t i = 0; i < pairs; ++i) {
    cplx b0{0.6, 0.0};
    cplx b1{0.8, 0.0};
    if (i > 0) {
      b0 = std::polar(uniform(rng), uniform(rng, 0.0, 2.0 * std::numbers::pi));
      b1 = std::polar(uniform(rng), uniform(rng, 0.0, 2.0 * std::numbers::pi));
    }
    s.entries.push_back(cf_entry(b0, b1, degrees, iters, derive_seed(seed, i)));
  }
  return s;
}

struct Stage {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CounterexampleVerdict {
  std::string verdict = "Inconclusive";  // Obstructed | NotObstructed | Inconclusive
  std::optional<std::string> failing_stage;
  std::string message;
  CounterexampleConfig config;
  std::size_t dim = 0;
  std::vector<Stage> stages;

  double commutation_defect = 0.0;
  double pairwise_product_max = 0.0;
  double j_norm = 0.0;
  double f1_square_max = 0.0;
  double f1_numerical_radius = 0.0;
  double defect_idempotence = 0.0;   // ||D^2 - D||
  double defect_structure = 0.0;     // ||D - (0 + P_last + I + I)||
  double kernel_map_defect = 0.0;    // T3 (h0, h1, 0, 0) vs (0, 0, V h1, h0)
  std::size_t defect_rank = 0;
  std::optional<SplitHypothesesReport> hypotheses;
  std::optional<FundamentalPair> pair;
  double a1_norm = 0.0;
  double a2_norm = 0.0;
  double a1_embedding_defect = 0.0;  // ||embed(A1) - T1||
  std::optional<ObstructionReport> obstruction;
  std::optional<FalsifyVerdict> falsify;
  std::optional<double> linear_collapse_defect;
  std::optional<CaseReport> cases;
  std::optional<CfStudy> cf;

  bool obstructed() const { return verdict == "Obstructed"; }
};

namespace detail {

inline std::string num(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

/// max ||p(T) - (c000 I + c100 T1 + c010 T2 + c001 T3)|| over seeded polynomials.
inline double linear_collapse(const OperatorTriple& t, unsigned degree, std::size_t count, std::uint64_t seed) {
  double worst = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const Poly3 p = random_poly(degree, 1.0, derive_seed(seed, i));
    CMatrix lin = CMatrix::identity(t.dim()) * p.coefficient({0, 0, 0});
    lin += t.t1 * p.coefficient({1, 0, 0});
    lin += t.t2 * p.coefficient({0, 1, 0});
    lin += t.t3 * p.coefficient({0, 0, 1});
    worst = std::max(worst, (eval_operator(p, t) - lin).max_abs());
  }
  return worst;
}

}  // namespace detail

/**
 * @brief Build the counterexample and check every finitely checkable claim,
 * ending in the dilation-obstruction verdict.
 *
 * A stage whose expectation fails, or that throws, stops the pipeline and
 * the verdict becomes Inconclusive with that stage named.
 */
inline CounterexampleVerdict run_full_pipeline(const CounterexampleConfig& cfg) {
  CounterexampleVerdict out;
  out.config = cfg;
  const double tol = cfg.tol.algebraic;
  std::string current = "build";

  auto stage = [&](std::string name, bool passed, std::string detail) {
    out.stages.push_back({name, passed, detail});
    if (!passed) {
      out.failing_stage = name;
      out.message = detail;
    }
    return passed;
  };

  try {
    const Counterexample ce = build_counterexample(cfg);
    const OperatorTriple& t = ce.triple;
    out.dim = t.dim();
    stage("build", true, "dimension " + std::to_string(out.dim));

    current = "commutation";
    out.commutation_defect = commutation_defect(t);
    out.pairwise_product_max = max_pairwise_product(t);
    out.j_norm = op_norm(ce.j);
    const CMatrix f1 = f1_matrix();
    out.f1_square_max = (f1 * f1).max_abs();
    out.f1_numerical_radius = numerical_radius(f1).value;
    if (!stage(current, out.commutation_defect == 0.0 && out.pairwise_product_max == 0.0,
               "max ||T_i T_j|| = " + detail::num(out.pairwise_product_max)))
      return out;

    current = "defect_operator";
    const DefectData dd = defect_operator(t.t3, tol, cfg.tol.rank);
    const std::size_t m = ce.copy_dim();
    CMatrix expected(4 * m, 4 * m);
    for (std::size_t e = 0; e < 2; ++e) expected(m + 2 * (ce.blocks - 1) + e, m + 2 * (ce.blocks - 1) + e) = 1.0;
    for (std::size_t i = 2 * m; i < 4 * m; ++i) expected(i, i) = 1.0;
    out.defect_idempotence = op_norm(dd.d * dd.d - dd.d);
    out.defect_structure = op_norm(dd.d - expected);
    out.defect_rank = dd.rank;
    {
      CMatrix h(4 * m, 2 * m);
      for (std::size_t i = 0; i < 2 * m; ++i) h(i, i) = 1.0;
      CMatrix image(4 * m, 2 * m);
      image.set_block(2 * m, m, ce.v);
      image.set_block(3 * m, 0, CMatrix::identity(m));
      out.kernel_map_defect = (t.t3 * h - image).max_abs();
    }
    if (!stage(current, out.defect_idempotence <= 1e-12 && out.defect_structure <= tol && out.kernel_map_defect == 0.0,
               "||D^2 - D|| = " + detail::num(out.defect_idempotence) + ", rank " + std::to_string(dd.rank)))
      return out;

    current = "hypotheses";
    out.hypotheses = check_prop45_hypotheses(t, ce.half, tol, ce.horizon, cfg.tol.rank);
    if (!stage(current, out.hypotheses->pass(),
               "interior distances " + detail::num(out.hypotheses->kernel_distance_interior) + ", " +
                   detail::num(out.hypotheses->range_distance_interior)))
      return out;

    current = "fundamental_operators";
    out.pair = fundamental_operators(t, tol, cfg.tol.rank);
    out.a1_norm = op_norm(out.pair->a1);
    out.a2_norm = op_norm(out.pair->a2);
    out.a1_embedding_defect = op_norm(out.pair->embed(out.pair->a1) - t.t1);
    if (!stage(current, out.a2_norm <= 1e-12 && out.a1_embedding_defect <= tol,
               "||A1|| = " + detail::num(out.a1_norm) + ", ||A2|| = " + detail::num(out.a2_norm)))
      return out;

    current = "obstruction";
    out.obstruction = dilation_obstruction(*out.pair, tol);
    out.obstruction->mode = "gated by hypotheses (i)(ii) off the truncation horizon";
    stage(current, true,
          "c1 = " + detail::num(out.obstruction->c1) + ", c2 = " + detail::num(out.obstruction->c2));

    current = "falsify";
    FalsifyOptions fo;
    fo.trials = cfg.trials;
    fo.max_degree = cfg.degree;
    fo.samples = cfg.samples;
    fo.margin = cfg.margin;
    fo.seed = derive_seed(cfg.seed, 1);
    out.falsify = falsify_E_contraction(t, fo);
    if (!stage(current, !out.falsify->violated(),
               std::to_string(out.falsify->trials_run) + " trials, max gap " + detail::num(out.falsify->max_gap)))
      return out;

    current = "linear_collapse";
    out.linear_collapse_defect = detail::linear_collapse(t, cfg.degree, 20, derive_seed(cfg.seed, 2));
    if (!stage(current, *out.linear_collapse_defect <= tol,
               "max |p(T) - linear part| = " + detail::num(*out.linear_collapse_defect)))
      return out;

    current = "case_inequalities";
    out.cases = case_inequality_check(cfg.case_samples, derive_seed(cfg.seed, 3), 1e-12);
    if (!stage(current, out.cases->pass(), std::to_string(out.cases->violations) + " violations")) return out;

    current = "caratheodory_fejer";
    out.cf = cf_study(cfg.cf_pairs, cfg.cf_degrees, cfg.cf_iters, derive_seed(cfg.seed, 4));
    if (!stage(current, out.cf->pass(), std::to_string(out.cf->entries.size()) + " pairs")) return out;

    out.verdict = out.obstruction->obstructed() ? "Obstructed" : "NotObstructed";
    out.message = out.obstructed() ? "the adjoint triple admits no E-unitary dilation"
                                   : "necessary conditions for an E-isometric dilation hold";
  } catch (const std::exception& ex) {
    stage(current, false, ex.what());
  }
  return out;
}

}  // namespace tetra
