#include <gtest/gtest.h>

#include <cmath>

#include "tetra/counterexample.hpp"
#include "tetra/model.hpp"

using namespace tetra;

namespace {

template <class F>
void expect_kind(error_kind k, F&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(k);
  } catch (const error& e) {
    EXPECT_EQ(e.kind(), k) << e.what();
  }
}

/// Unitary block DFT with block (k, j) = w_k^j / sqrt(N) I_k.
CMatrix block_dft(std::size_t blocks, std::size_t k) {
  CMatrix f(blocks * k, blocks * k);
  const double s = 1.0 / std::sqrt(static_cast<double>(blocks));
  for (std::size_t r = 0; r < blocks; ++r)
    for (std::size_t c = 0; c < blocks; ++c) {
      const cplx w = std::pow(root_of_unity(r, blocks), static_cast<double>(c)) * s;
      for (std::size_t i = 0; i < k; ++i) f(r * k + i, c * k + i) = w;
    }
  return f;
}

SymbolPair sample_pair() {
  return validate_symbol_pair(CMatrix::diagonal({0.5, cplx(0, 0.3)}), CMatrix::diagonal({0.25, -0.6}));
}

}  // namespace

TEST(SymbolPair, ValidationConditions) {
  const SymbolPair ok = sample_pair();
  EXPECT_TRUE(ok.valid());
  EXPECT_NEAR(ok.symbol_sup, 0.9, 1e-9);

  const SymbolPair f = validate_symbol_pair(f1_matrix(), CMatrix::zeros(2, 2));
  EXPECT_TRUE(f.condition1());
  EXPECT_FALSE(f.condition2());
  EXPECT_TRUE(f.condition3());
  EXPECT_NEAR(f.self_commutator_defect, 1.0 / 16.0, 1e-12);
  EXPECT_EQ(self_commutator(f1_matrix()), CMatrix::diagonal({-1.0 / 16.0, 1.0 / 16.0}));

  const SymbolPair big = validate_symbol_pair(CMatrix{{0.7}}, CMatrix{{0.7}});
  EXPECT_FALSE(big.condition3());
  const SymbolPair noncomm = validate_symbol_pair(f1_matrix(), f1_matrix().adjoint());
  EXPECT_FALSE(noncomm.condition1());
  expect_kind(error_kind::dimension_mismatch, [] { validate_symbol_pair(CMatrix(2, 2), CMatrix(3, 3)); });
  expect_kind(error_kind::non_square, [] { validate_symbol_pair(CMatrix(2, 3), CMatrix(2, 3)); });
}

TEST(SymbolPair, GeneratorsAreValidAndSeeded) {
  for (std::uint64_t s = 0; s < 8; ++s) {
    EXPECT_TRUE(random_diagonal_symbol(3, s).valid());
    EXPECT_TRUE(random_normal_symbol(3, s).valid()) << random_normal_symbol(3, s).self_commutator_defect;
  }
  EXPECT_EQ(random_normal_symbol(2, 5).a1, random_normal_symbol(2, 5).a1);
}

TEST(HardyModel, StructureAndInteriorIdentities) {
  const SymbolPair sp = sample_pair();
  const TruncationSpec spec{6, 2, ModelFlavor::hardy_toeplitz};
  const OperatorTriple t = build_model(sp, spec);
  ASSERT_EQ(t.dim(), 12u);
  EXPECT_EQ(t.t1.block(0, 0, 2, 2), sp.a1.adjoint());
  EXPECT_EQ(t.t1.block(2, 0, 2, 2), sp.a2);
  EXPECT_EQ(t.t2.block(4, 2, 2, 2), sp.a1);
  EXPECT_EQ(t.t1.block(0, 10, 2, 2), CMatrix::zeros(2, 2));
  EXPECT_LE(commutation_defect(t), 1e-12);

  CMatrix p = CMatrix::identity(12);
  for (std::size_t k = 0; k < 6; ++k) p = p * t.t3.adjoint();
  EXPECT_EQ(p, CMatrix::zeros(12, 12));

  const IsometryReport r = hardy_interior_isometry(t, spec);
  EXPECT_TRUE(r.pass()) << r.max_defect();
  EXPECT_FALSE(is_E_isometry(t).pass());
}

TEST(HardyModel, RejectsInvalidInput) {
  const SymbolPair bad = validate_symbol_pair(f1_matrix(), CMatrix::zeros(2, 2));
  expect_kind(error_kind::validation_required, [&] { build_model(bad, {4, 2}); });
  expect_kind(error_kind::truncation_too_small, [] { build_model(sample_pair(), {1, 2}); });
  expect_kind(error_kind::dimension_mismatch, [] { build_model(sample_pair(), {4, 3}); });
}

TEST(L2Model, BlockDftDiagonalizes) {
  const SymbolPair sp = random_normal_symbol(2, 3);
  const TruncationSpec spec{5, 2, ModelFlavor::l2_circulant};
  const OperatorTriple t = build_model(sp, spec);
  const CMatrix f = block_dft(5, 2);
  ASSERT_LE((f * f.adjoint() - CMatrix::identity(10)).max_abs(), 1e-12);
  for (std::size_t k = 0; k < 5; ++k) {
    const cplx w = root_of_unity(k, 5);
    const CMatrix d1 = (f * t.t1 * f.adjoint()).block(2 * k, 2 * k, 2, 2);
    const CMatrix d2 = (f * t.t2 * f.adjoint()).block(2 * k, 2 * k, 2, 2);
    const CMatrix d3 = (f * t.t3 * f.adjoint()).block(2 * k, 2 * k, 2, 2);
    EXPECT_LE((d1 - (sp.a1.adjoint() + sp.a2 * w)).max_abs(), 1e-12);
    EXPECT_LE((d2 - (sp.a2.adjoint() + sp.a1 * w)).max_abs(), 1e-12);
    EXPECT_LE((d3 - CMatrix::identity(2) * w).max_abs(), 1e-12);
  }
  // Block diagonal: the full conjugate equals the sum of its diagonal blocks.
  CMatrix g = f * t.t1 * f.adjoint();
  for (std::size_t k = 0; k < 5; ++k) g.set_block(2 * k, 2 * k, CMatrix::zeros(2, 2));
  EXPECT_LE(g.max_abs(), 1e-12);
}

TEST(L2Model, NormalSymbolIsEUnitary) {
  const SymbolPair sp = random_normal_symbol(3, 9);
  const OperatorTriple t = build_model(sp, {6, 3, ModelFlavor::l2_circulant});
  const UnitaryReport r = is_E_unitary(t);
  EXPECT_TRUE(r.pass()) << r.max_defect();
}

TEST(Pointwise, NormalPassesNilpotentFails) {
  EXPECT_TRUE(pointwise_unitary_check(random_normal_symbol(2, 4)).pass());
  const SymbolPair f = validate_symbol_pair(f1_matrix(), CMatrix::zeros(2, 2));
  const PointwiseReport r = pointwise_unitary_check(f);
  EXPECT_FALSE(r.pass());
  EXPECT_NEAR(r.max_n1_normality, 1.0 / 16.0, 1e-12);
  EXPECT_LE(r.max_identity_defect, 1e-12);
}

TEST(Recover, ReturnsTheSymbolPair) {
  const SymbolPair sp = sample_pair();
  const TruncationSpec spec{8, 2};
  const RecoveredPair r = recover_fundamental(build_model(sp, spec), spec);
  EXPECT_LE((r.g1 - sp.a1).max_abs(), 1e-12);
  EXPECT_LE((r.g2 - sp.a2).max_abs(), 1e-12);
  EXPECT_EQ(r.defect_rank, 2u);
  EXPECT_LE(r.off_block_mass, 1e-12);

  const SymbolPair zero = validate_symbol_pair(CMatrix::zeros(2, 2), CMatrix::zeros(2, 2));
  const RecoveredPair z = recover_fundamental(build_model(zero, spec), spec);
  EXPECT_EQ(z.g1.max_abs(), 0.0);
  EXPECT_EQ(z.g2.max_abs(), 0.0);

  const SymbolPair nrm = random_normal_symbol(3, 12);
  const TruncationSpec s3{5, 3};
  const RecoveredPair n = recover_fundamental(build_model(nrm, s3), s3);
  EXPECT_LE((n.g1 - nrm.a1).max_abs(), 1e-10);
  EXPECT_LE((n.g2 - nrm.a2).max_abs(), 1e-10);
  EXPECT_LE(max_pencil_numerical_radius(n.g1, n.g2), 1.0 + 1e-9);
}

TEST(Recover, RejectsShortOrCirculantModels) {
  const SymbolPair sp = sample_pair();
  const TruncationSpec two{2, 2};
  expect_kind(error_kind::truncation_too_small, [&] { recover_fundamental(build_model(sp, two), two); });
  const TruncationSpec circ{4, 2, ModelFlavor::l2_circulant};
  expect_kind(error_kind::invalid_argument, [&] { recover_fundamental(build_model(sp, circ), circ); });
}
