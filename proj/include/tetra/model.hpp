#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "tetra/contraction.hpp"
#include "tetra/error.hpp"
#include "tetra/linalg.hpp"
#include "tetra/random.hpp"
#include "tetra/triple.hpp"

namespace tetra {

/// A candidate symbol pair (A1, A2) on E = C^k with its validation data.
struct SymbolPair {
  CMatrix a1;
  CMatrix a2;
  double commutator_defect = 0.0;       // ||[A1, A2]||
  double self_commutator_defect = 0.0;  // ||[A1^*, A1] - [A2^*, A2]||
  double symbol_sup = 0.0;              // max over sampled |z| = 1 of ||A1^* + A2 z||
  std::size_t z_samples = 0;
  double tol = 0.0;

  std::size_t dim() const { return a1.rows(); }
  bool condition1() const { return commutator_defect <= tol; }
  bool condition2() const { return self_commutator_defect <= tol; }
  bool condition3() const { return symbol_sup <= 1.0 + tol; }
  bool valid() const { return condition1() && condition2() && condition3(); }
};

inline cplx root_of_unity(std::size_t k, std::size_t n) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
}

/// Both commutator conditions and the symbol bound, sampled at z_samples roots of unity.
inline SymbolPair validate_symbol_pair(const CMatrix& a1, const CMatrix& a2, std::size_t z_samples = 64,
                                       double tol = 1e-9) {
  if (!a1.is_square() || !a2.is_square()) throw error(error_kind::non_square, "symbol pair " + a1.shape());
  if (a1.rows() != a2.rows()) throw error(error_kind::dimension_mismatch, a1.shape() + " vs " + a2.shape());
  if (z_samples == 0) throw error(error_kind::invalid_argument, "z_samples must be positive");
  SymbolPair sp{a1, a2};
  sp.tol = tol;
  sp.z_samples = z_samples;
  sp.commutator_defect = op_norm(commutator(a1, a2));
  sp.self_commutator_defect = op_norm(self_commutator(a1) - self_commutator(a2));
  const CMatrix a1s = a1.adjoint();
  for (std::size_t k = 0; k < z_samples; ++k) {
    sp.symbol_sup = std::max(sp.symbol_sup, op_norm(a1s + a2 * root_of_unity(k, z_samples)));
  }
  return sp;
}

enum class ModelFlavor { hardy_toeplitz, l2_circulant };

constexpr const char* to_string(ModelFlavor f) {
  return f == ModelFlavor::hardy_toeplitz ? "hardy" : "l2";
}

struct TruncationSpec {
  std::size_t blocks = 8;
  std::size_t coeff_dim = 1;
  ModelFlavor flavor = ModelFlavor::hardy_toeplitz;

  std::size_t dim() const { return blocks * coeff_dim; }
  void validate() const {
    if (blocks < 2) throw error(error_kind::truncation_too_small, "need at least 2 blocks");
    if (coeff_dim == 0) throw error(error_kind::invalid_argument, "coefficient dimension must be positive");
  }
};

namespace detail {

inline void require_valid(const SymbolPair& sp, const TruncationSpec& spec) {
  if (!sp.valid()) throw error(error_kind::validation_required, "symbol pair failed validation");
  spec.validate();
  if (sp.dim() != spec.coeff_dim) {
    throw error(error_kind::dimension_mismatch,
                "symbol dimension " + std::to_string(sp.dim()) + " vs coeff_dim " + std::to_string(spec.coeff_dim));
  }
}

/// Block bidiagonal matrix with `diag` on the diagonal and `sub` below it; cyclic wraps the corner.
inline CMatrix block_bidiagonal(const CMatrix& diag, const CMatrix& sub, std::size_t blocks, bool cyclic) {
  const std::size_t k = diag.rows();
  CMatrix m(blocks * k, blocks * k);
  for (std::size_t j = 0; j < blocks; ++j) {
    m.set_block(j * k, j * k, diag);
    if (j + 1 < blocks) {
      m.set_block((j + 1) * k, j * k, sub);
    } else if (cyclic) {
      m.set_block(0, j * k, sub);
    }
  }
  return m;
}

}  // namespace detail

/**
 * @brief Truncated Toeplitz triple (T_{A1^*+A2 z}, T_{A2^*+A1 z}, T_z) on (C^k)^N.
 *
 * T3 is the truncated shift, so it is an isometry off the last block only.
 */
inline OperatorTriple build_hardy_model(const SymbolPair& sp, const TruncationSpec& spec) {
  detail::require_valid(sp, spec);
  const std::size_t k = spec.coeff_dim;
  const CMatrix zero = CMatrix::zeros(k, k);
  const CMatrix id = CMatrix::identity(k);
  return {detail::block_bidiagonal(sp.a1.adjoint(), sp.a2, spec.blocks, false),
          detail::block_bidiagonal(sp.a2.adjoint(), sp.a1, spec.blocks, false),
          detail::block_bidiagonal(zero, id, spec.blocks, false), sp.tol};
}

/// Block-circulant triple; the block DFT diagonalizes it into (A1^*+A2 w, A2^*+A1 w, w) over N-th roots w.
inline OperatorTriple build_l2_model(const SymbolPair& sp, const TruncationSpec& spec) {
  detail::require_valid(sp, spec);
  const std::size_t k = spec.coeff_dim;
  const CMatrix zero = CMatrix::zeros(k, k);
  const CMatrix id = CMatrix::identity(k);
  return {detail::block_bidiagonal(sp.a1.adjoint(), sp.a2, spec.blocks, true),
          detail::block_bidiagonal(sp.a2.adjoint(), sp.a1, spec.blocks, true),
          detail::block_bidiagonal(zero, id, spec.blocks, true), sp.tol};
}

inline OperatorTriple build_model(const SymbolPair& sp, const TruncationSpec& spec) {
  return spec.flavor == ModelFlavor::hardy_toeplitz ? build_hardy_model(sp, spec) : build_l2_model(sp, spec);
}

/// Embedding of blocks 0..N-2, where the truncated shift is still isometric.
inline CMatrix hardy_interior(const TruncationSpec& spec) {
  spec.validate();
  return coordinate_embedding(spec.dim(), (spec.blocks - 1) * spec.coeff_dim);
}

inline IsometryReport hardy_interior_isometry(const OperatorTriple& model, const TruncationSpec& spec,
                                              double tol = 1e-9) {
  return is_E_isometry(model, tol, hardy_interior(spec), "blocks 0.." + std::to_string(spec.blocks - 2));
}

struct PointwiseReport {
  std::size_t n_roots = 0;
  double max_n2_norm = 0.0;          // max ||A2^* + A1 w||
  double max_n1_normality = 0.0;     // max ||[(A1^* + A2 w)^*, A1^* + A2 w]||
  double max_identity_defect = 0.0;  // max ||(A1^* + A2 w) - (A2^* + A1 w)^* w||
  std::size_t worst_root = 0;        // index of the root with the largest normality defect
  double tol = 0.0;

  bool pass() const {
    return max_n2_norm <= 1.0 + tol && max_n1_normality <= tol && max_identity_defect <= tol;
  }
};

inline PointwiseReport pointwise_unitary_check(const SymbolPair& sp, std::size_t n_roots = 64, double tol = 1e-9) {
  PointwiseReport r;
  r.n_roots = n_roots;
  r.tol = tol;
  const CMatrix a1s = sp.a1.adjoint();
  const CMatrix a2s = sp.a2.adjoint();
  for (std::size_t k = 0; k < n_roots; ++k) {
    const cplx w = root_of_unity(k, n_roots);
    const CMatrix n1 = a1s + sp.a2 * w;
    const CMatrix n2 = a2s + sp.a1 * w;
    r.max_n2_norm = std::max(r.max_n2_norm, op_norm(n2));
    const double normality = op_norm(self_commutator(n1));
    if (normality > r.max_n1_normality) {
      r.max_n1_normality = normality;
      r.worst_root = k;
    }
    r.max_identity_defect = std::max(r.max_identity_defect, op_norm(n1 - n2.adjoint() * w));
  }
  return r;
}

struct RecoveredPair {
  CMatrix g1;
  CMatrix g2;
  double off_block_mass = 0.0;  // part of the embedded operators outside the (0,0) block
  std::size_t defect_rank = 0;
};

/**
 * @brief Fundamental operators of the adjoint of a Hardy model, read off the
 * first coefficient block.
 *
 * D_{T3^*} is the projection onto block 0, so both operators live there and
 * equal (A1, A2) with U the identity.
 */
inline RecoveredPair recover_fundamental(const OperatorTriple& model, const TruncationSpec& spec, double tol = 1e-9) {
  spec.validate();
  if (spec.flavor != ModelFlavor::hardy_toeplitz) {
    throw error(error_kind::invalid_argument, "recover_fundamental needs a Hardy model");
  }
  if (spec.blocks < 3) throw error(error_kind::truncation_too_small, "recover_fundamental needs at least 3 blocks");
  if (model.dim() != spec.dim()) throw error(error_kind::dimension_mismatch, "model " + model.t1.shape());

  const FundamentalPair fp = fundamental_operators(model.adjoint(), tol);
  const std::size_t k = spec.coeff_dim;
  const CMatrix e0 = coordinate_embedding(spec.dim(), k);
  const CMatrix full1 = fp.embed(fp.a1);
  const CMatrix full2 = fp.embed(fp.a2);
  RecoveredPair r;
  r.g1 = e0.adjoint() * full1 * e0;
  r.g2 = e0.adjoint() * full2 * e0;
  r.defect_rank = fp.rank();
  r.off_block_mass =
      std::max(op_norm(full1 - e0 * r.g1 * e0.adjoint()), op_norm(full2 - e0 * r.g2 * e0.adjoint()));
  return r;
}

// ---------------------------------------------------------------------------
// Generators of valid symbol pairs
// ---------------------------------------------------------------------------

namespace detail {

/// Pairs (alpha_i, beta_i) with |alpha_i| + |beta_i| <= 1.
inline std::pair<std::vector<cplx>, std::vector<cplx>> scalar_symbol_values(std::size_t k, rng_t& rng) {
  std::vector<cplx> alpha(k);
  std::vector<cplx> beta(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double total = uniform(rng);
    const double split = uniform(rng);
    alpha[i] = std::polar(total * split, uniform(rng, 0.0, 2.0 * std::numbers::pi));
    beta[i] = std::polar(total * (1.0 - split), uniform(rng, 0.0, 2.0 * std::numbers::pi));
  }
  return {alpha, beta};
}

}  // namespace detail

inline SymbolPair random_diagonal_symbol(std::size_t k, std::uint64_t seed, double tol = 1e-9) {
  rng_t rng(seed);
  auto [alpha, beta] = detail::scalar_symbol_values(k, rng);
  return validate_symbol_pair(CMatrix::diagonal(alpha), CMatrix::diagonal(beta), 64, tol);
}

/// U diag(alpha) U^*, U diag(beta) U^* for a random unitary U.
inline SymbolPair random_normal_symbol(std::size_t k, std::uint64_t seed, double tol = 1e-9) {
  rng_t rng(seed);
  auto [alpha, beta] = detail::scalar_symbol_values(k, rng);
  const CMatrix u = random_unitary(k, rng);
  return validate_symbol_pair(u * CMatrix::diagonal(alpha) * u.adjoint(), u * CMatrix::diagonal(beta) * u.adjoint(),
                              64, tol);
}

}  // namespace tetra
