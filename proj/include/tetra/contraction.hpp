#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "tetra/error.hpp"
#include "tetra/geometry.hpp"
#include "tetra/linalg.hpp"
#include "tetra/poly3.hpp"
#include "tetra/random.hpp"
#include "tetra/triple.hpp"

namespace tetra {

struct Tolerances {
  double algebraic = 1e-9;
  double optimization = 1e-6;
  double rank = 1e-8;  // eigenvalues of I - T3^*T3 above this span the defect space
};

// ---------------------------------------------------------------------------
// Defect operator and fundamental operators
// ---------------------------------------------------------------------------

/// D = (I - T^*T)^{1/2} with orthonormal bases of its closed range and kernel.
struct DefectData {
  CMatrix d;
  CMatrix range_basis;   // n x rank
  CMatrix kernel_basis;  // n x (n - rank)
  std::vector<double> sigma;  // eigenvalues of D on range_basis, in column order
  std::size_t rank = 0;

  CMatrix range_projection() const { return range_basis * range_basis.adjoint(); }
  CMatrix kernel_projection() const { return kernel_basis * kernel_basis.adjoint(); }
};

inline DefectData defect_operator(const CMatrix& t3, double tol = 1e-9, double rank_tol = 1e-8) {
  if (!t3.is_square()) throw error(error_kind::non_square, "defect_operator on " + t3.shape());
  const std::size_t n = t3.rows();
  const double nrm = op_norm(t3);
  if (nrm > 1.0 + tol) throw error(error_kind::not_a_contraction, "||T3|| = " + std::to_string(nrm));

  const CMatrix h = CMatrix::identity(n) - t3.adjoint() * t3;
  const HermEig e = herm_eig(h, tol);
  if (!e.eigenvalues.empty() && e.eigenvalues.front() < -tol) {
    throw error(error_kind::not_a_contraction, "I - T3*T3 has eigenvalue " + std::to_string(e.eigenvalues.front()));
  }
  DefectData out;
  out.d = spectral_apply(e, [](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; });
  std::vector<std::size_t> range_idx;
  std::vector<std::size_t> kernel_idx;
  for (std::size_t k = 0; k < n; ++k) (e.eigenvalues[k] > rank_tol ? range_idx : kernel_idx).push_back(k);
  out.rank = range_idx.size();
  out.range_basis = CMatrix(n, range_idx.size());
  out.kernel_basis = CMatrix(n, kernel_idx.size());
  for (std::size_t c = 0; c < range_idx.size(); ++c) {
    out.sigma.push_back(std::sqrt(e.eigenvalues[range_idx[c]]));
    for (std::size_t i = 0; i < n; ++i) out.range_basis(i, c) = e.basis(i, range_idx[c]);
  }
  for (std::size_t c = 0; c < kernel_idx.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) out.kernel_basis(i, c) = e.basis(i, kernel_idx[c]);
  return out;
}

/**
 * @brief Fundamental operators (A1, A2) on the defect space of T3, written in
 * the coordinates of `range_basis`.
 */
struct FundamentalPair {
  CMatrix a1;
  CMatrix a2;
  double residual1 = 0.0;  // ||D A1 D - (T1 - T2^* T3)||
  double residual2 = 0.0;  // ||D A2 D - (T2 - T1^* T3)||
  CMatrix range_basis;     // n x rank; empty when supplied directly

  std::size_t rank() const { return a1.rows(); }

  /// range_basis * A * range_basis^*, the operator on the ambient space.
  CMatrix embed(const CMatrix& a) const { return range_basis * a * range_basis.adjoint(); }
};

/**
 * @brief Solve T1 - T2^*T3 = D A1 D and T2 - T1^*T3 = D A2 D on the defect space.
 *
 * With D = U diag(sigma) U^* restricted to its rank-r support,
 * A = diag(sigma)^{-1} U_r^* RHS U_r diag(sigma)^{-1}. The equation is
 * consistent only when RHS vanishes off the defect space; the residuals
 * measure that and anything above tol_solve is InconsistentEquation.
 */
inline FundamentalPair fundamental_operators(const OperatorTriple& t, double tol_solve = 1e-9,
                                             double rank_tol = 1e-8) {
  t.validate();
  const DefectData dd = defect_operator(t.t3, t.tol, rank_tol);
  const CMatrix rhs1 = t.t1 - t.t2.adjoint() * t.t3;
  const CMatrix rhs2 = t.t2 - t.t1.adjoint() * t.t3;

  auto solve = [&](const CMatrix& rhs) {
    CMatrix a = dd.range_basis.adjoint() * rhs * dd.range_basis;
    for (std::size_t i = 0; i < dd.rank; ++i)
      for (std::size_t j = 0; j < dd.rank; ++j) a(i, j) /= dd.sigma[i] * dd.sigma[j];
    return a;
  };

  FundamentalPair fp;
  fp.a1 = solve(rhs1);
  fp.a2 = solve(rhs2);
  fp.range_basis = dd.range_basis;
  fp.residual1 = op_norm(dd.d * fp.embed(fp.a1) * dd.d - rhs1);
  fp.residual2 = op_norm(dd.d * fp.embed(fp.a2) * dd.d - rhs2);
  if (fp.residual1 > tol_solve || fp.residual2 > tol_solve) {
    throw error(error_kind::inconsistent_equation, "fundamental equation residuals " + std::to_string(fp.residual1) +
                                                       ", " + std::to_string(fp.residual2));
  }
  return fp;
}

/// max over z in {0} and n_z - 1 points of the unit circle of w(A1 + z A2).
inline double max_pencil_numerical_radius(const CMatrix& a1, const CMatrix& a2, std::size_t n_z = 36) {
  if (a1.rows() == 0) return 0.0;
  double m = numerical_radius(a1).value;
  for (std::size_t k = 0; k + 1 < n_z; ++k) {
    const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_z - 1));
    m = std::max(m, numerical_radius(a1 + a2 * z).value);
  }
  return m;
}

// ---------------------------------------------------------------------------
// E-unitary / E-isometry characterizations
// ---------------------------------------------------------------------------

struct UnitaryReport {
  double commutation = 0.0;
  double n3_unitary_defect = 0.0;  // max(||N3^*N3 - I||, ||N3 N3^* - I||)
  double n2_norm = 0.0;
  double n1_identity_defect = 0.0;  // ||N1 - N2^* N3||
  double n1_normality = 0.0;
  double n2_normality = 0.0;
  double tol = 0.0;

  bool n3_unitary() const { return n3_unitary_defect <= tol; }
  bool n2_contraction() const { return n2_norm <= 1.0 + tol; }
  bool identity_holds() const { return n1_identity_defect <= tol; }
  bool normal() const { return n1_normality <= tol && n2_normality <= tol; }
  bool commuting() const { return commutation <= tol; }
  bool pass() const { return commuting() && n3_unitary() && n2_contraction() && identity_holds() && normal(); }
  double max_defect() const {
    return std::max({commutation, n3_unitary_defect, std::max(0.0, n2_norm - 1.0), n1_identity_defect, n1_normality,
                     n2_normality});
  }
};

/// N3 unitary, N2 a contraction, N1 = N2^* N3, plus normality of N1, N2.
inline UnitaryReport is_E_unitary(const OperatorTriple& t, double tol = 1e-9) {
  t.validate();
  const std::size_t n = t.dim();
  const CMatrix id = CMatrix::identity(n);
  UnitaryReport r;
  r.tol = tol;
  r.commutation = commutation_defect(t);
  r.n3_unitary_defect = std::max(op_norm(t.t3.adjoint() * t.t3 - id), op_norm(t.t3 * t.t3.adjoint() - id));
  r.n2_norm = op_norm(t.t2);
  r.n1_identity_defect = op_norm(t.t1 - t.t2.adjoint() * t.t3);
  r.n1_normality = op_norm(self_commutator(t.t1));
  r.n2_normality = op_norm(self_commutator(t.t2));
  return r;
}

struct IsometryReport {
  double commutation = 0.0;
  double v3_isometry_defect = 0.0;  // ||(V3^*V3 - I) P||
  double v2_norm = 0.0;
  double v1_identity_defect = 0.0;  // ||(V1 - V2^* V3) P||
  double claim_identity_defect = 0.0;  // ||(V2 - V1^* V3) P||
  std::string subspace = "full space";
  double tol = 0.0;

  bool v3_isometry() const { return v3_isometry_defect <= tol; }
  bool v2_contraction() const { return v2_norm <= 1.0 + tol; }
  bool identity_holds() const { return v1_identity_defect <= tol; }
  bool claim_holds() const { return claim_identity_defect <= tol; }
  bool commuting() const { return commutation <= tol; }
  bool pass() const { return commuting() && v3_isometry() && v2_contraction() && identity_holds() && claim_holds(); }
  double max_defect() const {
    return std::max({commutation, v3_isometry_defect, std::max(0.0, v2_norm - 1.0), v1_identity_defect,
                     claim_identity_defect});
  }
};

/**
 * @brief V3 isometry, V2 contraction, V1 = V2^*V3 and V2 = V1^*V3.
 *
 * `subspace`, when given, is an isometric embedding P (columns orthonormal)
 * and the three identities are tested on its range only; truncated models
 * use it to exclude the last block.
 */
inline IsometryReport is_E_isometry(const OperatorTriple& t, double tol = 1e-9,
                                    const std::optional<CMatrix>& subspace = std::nullopt,
                                    std::string subspace_name = "full space") {
  t.validate();
  const std::size_t n = t.dim();
  const CMatrix p = subspace ? *subspace : CMatrix::identity(n);
  if (p.rows() != n) throw error(error_kind::dimension_mismatch, "subspace embedding " + p.shape());
  IsometryReport r;
  r.tol = tol;
  r.subspace = subspace ? std::move(subspace_name) : "full space";
  r.commutation = commutation_defect(t);
  r.v3_isometry_defect = op_norm((t.t3.adjoint() * t.t3 - CMatrix::identity(n)) * p);
  r.v2_norm = op_norm(t.t2);
  r.v1_identity_defect = op_norm((t.t1 - t.t2.adjoint() * t.t3) * p);
  r.claim_identity_defect = op_norm((t.t2 - t.t1.adjoint() * t.t3) * p);
  return r;
}

/// Embedding of the first `count` coordinates of C^n.
inline CMatrix coordinate_embedding(std::size_t n, std::size_t count) {
  CMatrix e(n, count);
  for (std::size_t i = 0; i < count; ++i) e(i, i) = 1.0;
  return e;
}

// ---------------------------------------------------------------------------
// Polynomial falsifier
// ---------------------------------------------------------------------------

struct FalsifyOptions {
  std::size_t trials = 200;
  unsigned max_degree = 3;
  std::size_t samples = 2000;
  double margin = 1e-3;
  std::uint64_t seed = 0;
  std::size_t recheck_factor = 10;
};

struct Violation {
  std::size_t trial = 0;
  Poly3 poly;
  double operator_norm = 0.0;  // ||p(T)||
  double sup_estimate = 0.0;   // rechecked sup over the closure
};

struct FalsifyVerdict {
  std::size_t trials_run = 0;
  double max_gap = -std::numeric_limits<double>::infinity();  // max of ||p(T)|| - sup estimate
  std::size_t rechecks = 0;
  std::optional<Violation> violation;

  bool violated() const { return violation.has_value(); }
};

/**
 * @brief Search for a polynomial with ||p(T)|| > sup |p| + margin.
 *
 * A hit is rechecked with recheck_factor times more boundary samples before
 * it is reported. A Violation disproves E-contraction; its absence is
 * evidence only. Trial i uses seed derive_seed(seed, i).
 */
inline FalsifyVerdict falsify_E_contraction(const OperatorTriple& t, const FalsifyOptions& o = {}) {
  t.validate();
  FalsifyVerdict v;
  for (std::size_t i = 0; i < o.trials; ++i) {
    const std::uint64_t s = derive_seed(o.seed, i);
    const Poly3 p = random_poly(o.max_degree, 1.0, s);
    const double lhs = op_norm(eval_operator(p, t));
    const double sup = sup_on_closure(p, o.samples, 60, derive_seed(s, 1));
    ++v.trials_run;
    v.max_gap = std::max(v.max_gap, lhs - sup);
    if (lhs > sup + o.margin) {
      ++v.rechecks;
      const double sup2 = std::max(sup, sup_on_closure(p, o.samples * o.recheck_factor, 60, derive_seed(s, 2)));
      if (lhs > sup2 + o.margin) {
        v.violation = Violation{i, p, lhs, sup2};
        return v;
      }
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Hypotheses (i)(ii) on H1 + H1 and the dilation obstruction
// ---------------------------------------------------------------------------

struct SplitHypothesesReport {
  std::size_t half = 0;
  std::vector<std::size_t> horizon;  // coordinates excluded from the subspace comparison
  double kernel_distance = 0.0;      // ||P_ker - P_top|| on the whole space
  double range_distance = 0.0;       // ||P_ran - P_bottom||
  double kernel_distance_interior = 0.0;  // same, compressed to coordinates off the horizon
  double range_distance_interior = 0.0;
  double annihilates_range = 0.0;  // ||T3 P_ran||
  double kernel_into_range = 0.0;  // ||(I - P_ran) T3 P_ker||
  double tol = 0.0;

  bool condition_i() const { return kernel_distance_interior <= tol && range_distance_interior <= tol; }
  bool condition_i_strict() const { return kernel_distance <= tol && range_distance <= tol; }
  bool condition_ii() const { return annihilates_range <= tol && kernel_into_range <= tol; }
  bool pass() const { return condition_i() && condition_ii(); }
};

/**
 * @brief Check Ker D_{T3} = H1 + {0}, ran D_{T3} = {0} + H1 (i) and
 * T3(ran D) = 0, T3 Ker D in ran D (ii) for the coordinate split C^n = C^k + C^k.
 *
 * Finite truncations of a shift lose isometry on their last block, which
 * moves those coordinates between kernel and range. `horizon` names such
 * coordinates; (i) is decided on the compression to the rest, and the
 * uncompressed distances are reported alongside. (ii) always uses the
 * exact subspaces.
 */
inline SplitHypothesesReport check_prop45_hypotheses(const OperatorTriple& t, std::size_t half, double tol = 1e-9,
                                            const std::vector<std::size_t>& horizon = {}, double rank_tol = 1e-8) {
  t.validate();
  const std::size_t n = t.dim();
  if (half == 0 || 2 * half != n) {
    throw error(error_kind::bad_split, "split " + std::to_string(half) + " + " + std::to_string(half) +
                                           " does not match dimension " + std::to_string(n));
  }
  for (std::size_t h : horizon)
    if (h >= n) throw error(error_kind::bad_split, "horizon coordinate " + std::to_string(h) + " out of range");

  const DefectData dd = defect_operator(t.t3, t.tol, rank_tol);
  const CMatrix pk = dd.kernel_projection();
  const CMatrix pr = dd.range_projection();
  CMatrix top(n, n);
  CMatrix bottom(n, n);
  for (std::size_t i = 0; i < half; ++i) {
    top(i, i) = 1.0;
    bottom(half + i, half + i) = 1.0;
  }
  CMatrix mask = CMatrix::identity(n);
  for (std::size_t h : horizon) mask(h, h) = 0.0;

  SplitHypothesesReport r;
  r.half = half;
  r.horizon = horizon;
  r.tol = tol;
  r.kernel_distance = op_norm(pk - top);
  r.range_distance = op_norm(pr - bottom);
  r.kernel_distance_interior = op_norm(mask * (pk - top) * mask);
  r.range_distance_interior = op_norm(mask * (pr - bottom) * mask);
  r.annihilates_range = op_norm(t.t3 * pr);
  r.kernel_into_range = op_norm((CMatrix::identity(n) - pr) * t.t3 * pk);
  return r;
}

struct ObstructionReport {
  double c1 = 0.0;  // ||A1 A2 - A2 A1||
  double c2 = 0.0;  // ||[A1^*, A1] - [A2^*, A2]||
  double tol = 0.0;
  std::string mode = "standalone";

  bool obstructed() const { return std::max(c1, c2) > tol; }
};

/**
 * @brief Necessary conditions for an E-isometric dilation of the adjoint
 * triple: [A1, A2] = 0 and A1^*A1 - A1A1^* = A2^*A2 - A2A2^*.
 *
 * Obstructed means one of them fails. The implication only holds under
 * hypotheses (i)(ii); `obstruction_pipeline` gates on them.
 */
inline ObstructionReport dilation_obstruction(const FundamentalPair& fp, double tol = 1e-9) {
  if (fp.a1.rows() != fp.a2.rows() || !fp.a1.is_square() || !fp.a2.is_square()) {
    throw error(error_kind::dimension_mismatch, "fundamental pair " + fp.a1.shape() + ", " + fp.a2.shape());
  }
  ObstructionReport r;
  r.tol = tol;
  r.c1 = op_norm(commutator(fp.a1, fp.a2));
  r.c2 = op_norm(self_commutator(fp.a1) - self_commutator(fp.a2));
  return r;
}

struct PipelineReport {
  SplitHypothesesReport hypotheses;
  std::optional<FundamentalPair> pair;
  std::optional<ObstructionReport> obstruction;
  std::string verdict;  // Obstructed | NotObstructed | HypothesesFailed
};

/// Hypotheses, then fundamental operators, then the obstruction predicate.
inline PipelineReport obstruction_pipeline(const OperatorTriple& t, std::size_t half, const Tolerances& tol = {},
                                           const std::vector<std::size_t>& horizon = {}) {
  PipelineReport r;
  r.hypotheses = check_prop45_hypotheses(t, half, tol.algebraic, horizon, tol.rank);
  r.pair = fundamental_operators(t, tol.algebraic, tol.rank);
  ObstructionReport ob = dilation_obstruction(*r.pair, tol.algebraic);
  if (r.hypotheses.pass()) {
    ob.mode = horizon.empty() ? "gated by hypotheses (i)(ii)" : "gated by hypotheses (i)(ii) off the truncation horizon";
    r.verdict = ob.obstructed() ? "Obstructed" : "NotObstructed";
  } else {
    ob.mode = "standalone (hypotheses failed)";
    r.verdict = "HypothesesFailed";
  }
  r.obstruction = ob;
  return r;
}

// ---------------------------------------------------------------------------
// Dilation verification
// ---------------------------------------------------------------------------

struct DilationReport {
  unsigned max_degree = 0;
  std::size_t checked = 0;
  double max_compression_defect = 0.0;
  std::vector<Exponent3> failing;  // exponent triples (m1, m2, n) with defect > tol
  std::array<double, 3> coinvariance_defect{};  // ||(I - EE^*) Q_i^* E||
  double tol = 0.0;

  bool compression_holds() const { return failing.empty(); }
  /// H is invariant under every Q_i^*, i.e. the adjoint is an extension.
  bool extension_property() const {
    return std::all_of(coinvariance_defect.begin(), coinvariance_defect.end(), [&](double d) { return d <= tol; });
  }
};

/**
 * @brief Check E^* Q1^m1 Q2^m2 V^n E = T1^m1 T2^m2 T3^n for m1 + m2 + n <= max_degree,
 * where E : H -> K is the isometric inclusion.
 */
inline DilationReport verify_dilation(const OperatorTriple& t, const OperatorTriple& big, const CMatrix& embed,
                                      unsigned max_degree, double tol = 1e-9) {
  t.validate();
  big.validate();
  if (embed.rows() != big.dim() || embed.cols() != t.dim()) {
    throw error(error_kind::dimension_mismatch, "embedding " + embed.shape());
  }
  const double iso = op_norm(embed.adjoint() * embed - CMatrix::identity(t.dim()));
  if (iso > tol) throw error(error_kind::not_isometric_embedding, "||E*E - I|| = " + std::to_string(iso));

  DilationReport r;
  r.max_degree = max_degree;
  r.tol = tol;
  const CMatrix ea = embed.adjoint();
  for (unsigned d = 0; d <= max_degree; ++d) {
    for (unsigned a = 0; a <= d; ++a) {
      for (unsigned b = 0; a + b <= d; ++b) {
        const Exponent3 e{a, b, d - a - b};
        const Poly3 mono = Poly3::monomial(e);
        const double defect = op_norm(ea * eval_operator(mono, big) * embed - eval_operator(mono, t));
        ++r.checked;
        r.max_compression_defect = std::max(r.max_compression_defect, defect);
        if (defect > tol) r.failing.push_back(e);
      }
    }
  }
  const CMatrix outside = CMatrix::identity(big.dim()) - embed * ea;
  for (std::size_t i = 0; i < 3; ++i) r.coinvariance_defect[i] = op_norm(outside * big[i].adjoint() * embed);
  return r;
}

}  // namespace tetra
