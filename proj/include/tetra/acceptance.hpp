#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "tetra/contraction.hpp"
#include "tetra/counterexample.hpp"
#include "tetra/geometry.hpp"
#include "tetra/json_io.hpp"
#include "tetra/linalg.hpp"
#include "tetra/model.hpp"
#include "tetra/poly3.hpp"
#include "tetra/random.hpp"

namespace tetra::acceptance {

struct Result {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

inline Result timed(int id, std::string name, const std::function<bool(std::string&)>& body, double budget = 0.0) {
  Result r{id, std::move(name), false, {}, 0.0};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.passed = body(r.detail);
  } catch (const std::exception& ex) {
    r.passed = false;
    r.detail = std::string("exception: ") + ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget > 0.0 && r.seconds >= budget) {
    r.passed = false;
    r.detail += "; runtime " + fmt(r.seconds) + " s exceeds " + fmt(budget) + " s";
  }
  return r;
}

/// The 20 symbol pairs used by the model criteria: ten diagonal, ten commuting normal, k = 1..4.
inline std::vector<SymbolPair> model_pairs(std::uint64_t seed) {
  std::vector<SymbolPair> out;
  for (std::size_t i = 0; i < 20; ++i) {
    const std::size_t k = 1 + i % 4;
    const std::uint64_t s = derive_seed(seed, i);
    out.push_back(i < 10 ? random_diagonal_symbol(k, s) : random_normal_symbol(k, s));
  }
  return out;
}

}  // namespace detail

/// Counterexample at N = 4 through the rendered JSON verdict.
inline Result counterexample_verdict() {
  return detail::timed(1, "counterexample verdict (N = 4)", [](std::string& d) {
    CounterexampleConfig cfg;
    cfg.blocks = 4;
    const io::json j = io::to_json(run_full_pipeline(cfg));
    const double a2 = j.at("fundamental").at("a2_norm").get<double>();
    const double c1 = j.at("obstruction").at("c1").get<double>();
    const double c2 = j.at("obstruction").at("c2").get<double>();
    const bool hyp = j.at("hypotheses").at("condition_i").get<bool>() && j.at("hypotheses").at("condition_ii").get<bool>();
    const std::string verdict = j.at("verdict").get<std::string>();
    d = "verdict " + verdict + ", ||A2|| = " + detail::fmt(a2) + ", c1 = " + detail::fmt(c1) + ", c2 = " +
        detail::fmt(c2) + ", hypotheses " + (hyp ? "pass" : "fail");
    return verdict == "Obstructed" && a2 <= 1e-12 && c1 <= 1e-12 && std::abs(c2 - 0.0625) <= 1e-10 && hyp;
  }, 5.0);
}

/// 200 random polynomials of degree <= 3 against the N = 8 counterexample.
inline Result contraction_evidence() {
  return detail::timed(2, "E-contraction evidence (N = 8, 200 polynomials)", [](std::string& d) {
    CounterexampleConfig cfg;
    cfg.blocks = 8;
    const Counterexample ce = build_counterexample(cfg);
    FalsifyOptions fo;
    fo.trials = 200;
    fo.max_degree = 3;
    fo.margin = 1e-3;
    fo.seed = 2024;
    const FalsifyVerdict v = falsify_E_contraction(ce.triple, fo);
    d = std::to_string(v.trials_run) + " trials, max ||p(T)|| - sup = " + detail::fmt(v.max_gap) +
        (v.violated() ? ", violation at trial " + std::to_string(v.violation->trial) : ", no violation");
    return !v.violated() && v.trials_run == 200;
  }, 60.0);
}

inline Result counterexample_constants() {
  return detail::timed(3, "counterexample constants", [](std::string& d) {
    CounterexampleConfig cfg;
    cfg.blocks = 4;
    const Counterexample ce = build_counterexample(cfg);
    const CMatrix f1 = f1_matrix();
    const double j_norm = op_norm(ce.j);
    const double f1_sq = (f1 * f1).max_abs();
    const double w = numerical_radius(f1).value;
    const double prod = max_pairwise_product(ce.triple);
    d = "||J|| = " + detail::fmt(j_norm) + ", max|F1^2| = " + detail::fmt(f1_sq) + ", w(F1) = " + detail::fmt(w) +
        ", max|T_i T_j| = " + detail::fmt(prod);
    return std::abs(j_norm - 0.25) <= 1e-12 && f1_sq == 0.0 && std::abs(w - 0.125) <= 1e-6 && prod == 0.0;
  });
}

inline Result case_inequalities() {
  return detail::timed(4, "case inequalities (10^4 samples)", [](std::string& d) {
    const CaseReport r = case_inequality_check(10000, 7, 1e-12);
    d = std::to_string(r.case1) + " case-1 and " + std::to_string(r.case2) + " case-2 samples, " +
        std::to_string(r.violations) + " violations, worst lhs - rhs = " + detail::fmt(r.worst_margin);
    return r.pass() && r.samples == 10000;
  });
}

/// 20 random (b0, b1): degree-8 value in [bound - 1e-6, 1.02 bound], nonincreasing over {0, 2, 4, 8}.
inline Result caratheodory_fejer() {
  return detail::timed(5, "Caratheodory-Fejer band and monotonicity", [](std::string& d) {
    rng_t rng(11);
    std::size_t bad = 0;
    double worst_ratio = 0.0;
    for (std::size_t i = 0; i < 20; ++i) {
      const cplx b0 = std::polar(uniform(rng), uniform(rng, 0.0, 2.0 * std::numbers::pi));
      const cplx b1 = std::polar(uniform(rng), uniform(rng, 0.0, 2.0 * std::numbers::pi));
      const CfEntry e = cf_entry(b0, b1, {0, 2, 4, 8}, 400, derive_seed(11, i));
      worst_ratio = std::max(worst_ratio, e.values.back() / e.bound);
      if (!e.monotone || !e.within_band) ++bad;
    }
    d = std::to_string(bad) + " of 20 pairs out of band or non-monotone, worst inf/bound = " + detail::fmt(worst_ratio);
    return bad == 0;
  });
}

inline Result model_round_trip() {
  return detail::timed(6, "functional-model round trip (20 pairs, N = 8)", [](std::string& d) {
    double unitary = 0.0;
    double isometry = 0.0;
    double recovery = 0.0;
    bool ok = true;
    for (const SymbolPair& sp : detail::model_pairs(6)) {
      TruncationSpec spec{8, sp.dim(), ModelFlavor::l2_circulant};
      const UnitaryReport u = is_E_unitary(build_l2_model(sp, spec), 1e-9);
      spec.flavor = ModelFlavor::hardy_toeplitz;
      const OperatorTriple h = build_hardy_model(sp, spec);
      const IsometryReport iso = hardy_interior_isometry(h, spec, 1e-9);
      const RecoveredPair rp = recover_fundamental(h, spec);
      const double rec = std::max(op_norm(rp.g1 - sp.a1), op_norm(rp.g2 - sp.a2));
      unitary = std::max(unitary, u.max_defect());
      isometry = std::max(isometry, iso.max_defect());
      recovery = std::max(recovery, rec);
      ok = ok && sp.valid() && u.pass() && iso.pass() && rec <= 1e-10;
    }
    d = "max unitary defect " + detail::fmt(unitary) + ", max interior isometry defect " + detail::fmt(isometry) +
        ", max recovery error " + detail::fmt(recovery);
    return ok;
  });
}

/// w(A1 + z A2) at z = 0 and 35 points of the circle for the fundamental pairs of every generated model.
inline Result pencil_numerical_radius() {
  return detail::timed(7, "numerical radius of the fundamental pencil", [](std::string& d) {
    double worst = 0.0;
    std::size_t pairs = 0;
    for (const SymbolPair& sp : detail::model_pairs(7)) {
      for (ModelFlavor f : {ModelFlavor::hardy_toeplitz, ModelFlavor::l2_circulant}) {
        const OperatorTriple m = build_model(sp, {8, sp.dim(), f});
        for (const OperatorTriple& t : {m, m.adjoint()}) {
          const FundamentalPair fp = fundamental_operators(t);
          worst = std::max(worst, max_pencil_numerical_radius(fp.a1, fp.a2, 36));
          ++pairs;
        }
      }
    }
    d = std::to_string(pairs) + " pairs, max w(A1 + z A2) = " + detail::fmt(worst);
    return worst <= 1.0 + 1e-6;
  });
}

inline Result geometry_cross_oracle() {
  return detail::timed(8, "geometry cross-oracle", [](std::string& d) {
    constexpr double tol = 1e-9;
    rng_t rng(8);
    std::size_t strict = 0;
    std::size_t disagree = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
      const Point3 p{std::polar(1.2 * std::sqrt(uniform(rng)), uniform(rng, 0.0, 2.0 * std::numbers::pi)),
                     std::polar(1.2 * std::sqrt(uniform(rng)), uniform(rng, 0.0, 2.0 * std::numbers::pi)),
                     std::polar(0.9 * std::sqrt(uniform(rng)), uniform(rng, 0.0, 2.0 * std::numbers::pi))};
      const Classification c = classify_point(p, tol);
      const double dm = defining_min(p);
      if (c.beta_sum < 1.0 - 10 * tol) {
        ++strict;
        if (!(dm > 10 * tol)) ++disagree;
      } else if (c.beta_sum > 1.0 + 10 * tol) {
        ++strict;
        if (!(dm <= 10 * tol)) ++disagree;
      }
    }
    double boundary = 0.0;
    for (const Point3& q : sample_distinguished_boundary(1000, 8)) {
      boundary = std::max(boundary, std::abs(q.x1 - std::conj(q.x2) * q.x3));
    }
    std::size_t slice_in = 0;
    for (std::size_t i = 0; i < 100; ++i) {
      const cplx x = std::polar(std::sqrt(uniform(rng)), uniform(rng, 0.0, 2.0 * std::numbers::pi));
      if (classify_point({x, 1.0, x}, tol).in_closure()) ++slice_in;
    }
    d = std::to_string(disagree) + " disagreements in " + std::to_string(strict) + " strict calls, boundary defect " +
        detail::fmt(boundary) + ", " + std::to_string(slice_in) + "/100 slice points in closure";
    return disagree == 0 && strict > 0 && boundary <= 1e-12 && slice_in == 100;
  });
}

inline Result kernel_quality() {
  return detail::timed(9, "linear-algebra kernels", [](std::string& d) {
    rng_t rng(9);
    double recon = 0.0;
    for (std::size_t n : {1, 2, 3, 5, 8, 16, 32, 64}) {
      const CMatrix h = random_hermitian(n, rng);
      const HermEig e = herm_eig(h);
      const CMatrix back = e.basis * CMatrix::diagonal(std::vector<cplx>(e.eigenvalues.begin(), e.eigenvalues.end())) *
                           e.basis.adjoint();
      recon = std::max(recon, op_norm(back - h) / std::max(1.0, op_norm(h)));
    }
    std::size_t sandwich_fail = 0;
    for (std::size_t i = 0; i < 100; ++i) {
      const CMatrix t = random_gaussian(2 + i % 7, 2 + i % 7, rng);
      const double r = spectral_radius_estimate(t);
      const double w = numerical_radius(t).value;
      const double nrm = op_norm(t);
      if (r > w + 1e-8 || w > nrm + 1e-8 || nrm > 2.0 * w + 1e-8) ++sandwich_fail;
    }
    std::size_t halfplane_fail = 0;
    for (std::size_t i = 0; i < 100; ++i) {
      CMatrix t = random_gaussian(2 + i % 5, 2 + i % 5, rng);
      const double delta = uniform(rng, 5e-3, 5e-2) * (i % 2 == 0 ? 1.0 : -1.0);
      t *= (1.0 + delta) / numerical_radius(t).value;
      const bool by_radius = numerical_radius(t).value <= 1.0 + 1e-6;
      double support = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < 360; ++k) {
        support = std::max(support, rotated_real_part_max(t, 2.0 * std::numbers::pi * static_cast<double>(k) / 360.0));
      }
      const bool by_halfplanes = support <= 1.0 + 1e-6;
      if (by_radius != by_halfplanes) ++halfplane_fail;
    }
    d = "reconstruction " + detail::fmt(recon) + " up to n = 64, " + std::to_string(sandwich_fail) +
        " sandwich failures, " + std::to_string(halfplane_fail) + " half-plane mismatches";
    return recon <= 1e-10 && sandwich_fail == 0 && halfplane_fail == 0;
  });
}

inline std::vector<Result> run_all() {
  return {counterexample_verdict(), contraction_evidence(), counterexample_constants(),
          case_inequalities(),      caratheodory_fejer(),   model_round_trip(),
          pencil_numerical_radius(), geometry_cross_oracle(), kernel_quality()};
}

/// One PASS/FAIL line per criterion.
inline std::string render(const Result& r) {
  std::ostringstream ss;
  ss << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << " (" << detail::fmt(r.seconds)
     << " s)";
  return ss.str();
}

}  // namespace tetra::acceptance
