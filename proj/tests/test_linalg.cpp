#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tetra/linalg.hpp"
#include "tetra/random.hpp"

#ifdef TETRA_HAVE_EIGEN
#include <Eigen/Dense>
#endif

using namespace tetra;

namespace {

CMatrix reconstruct(const HermEig& e) {
  return spectral_apply(e, [](double l) { return l; });
}

/// sigma_max of [[a, b], [c, d]] from the 2x2 closed form.
double norm2x2(cplx a, cplx b, cplx c, cplx d) {
  const double s = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
  const double det = std::abs(a * d - b * c);
  return std::sqrt(0.5 * (s + std::sqrt(std::max(0.0, s * s - 4.0 * det * det))));
}

}  // namespace

TEST(HermEig, DiagonalAndTwoByTwo) {
  const HermEig d = herm_eig(CMatrix::diagonal({3.0, -1.0, 2.0}));
  EXPECT_EQ(d.eigenvalues, (std::vector<double>{-1.0, 2.0, 3.0}));
  const HermEig e = herm_eig(CMatrix{{2.0, 1.0}, {1.0, 2.0}});
  EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues[1], 3.0, 1e-14);
  const HermEig z = herm_eig(CMatrix{{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}});
  EXPECT_NEAR(z.eigenvalues[0], -1.0, 1e-14);
  EXPECT_NEAR(z.eigenvalues[1], 1.0, 1e-14);
}

TEST(HermEig, RejectsBadInput) {
  EXPECT_THROW(herm_eig(CMatrix(2, 3)), error);
  try {
    herm_eig(CMatrix{{0.0, 1.0}, {0.0, 0.0}});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.kind(), error_kind::not_hermitian);
  }
  try {
    herm_eig(CMatrix{{1.0, 1.0}, {1.0, 2.0}}, 1e-9, JacobiOptions{0, 1e-13});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.kind(), error_kind::no_convergence);
  }
}

TEST(HermEig, ReconstructionAndOrthonormality) {
  rng_t rng(42);
  for (std::size_t n : {1, 2, 6, 17, 40, 64}) {
    const CMatrix h = random_hermitian(n, rng);
    const HermEig e = herm_eig(h);
    EXPECT_LE((reconstruct(e) - h).frobenius_norm(), 1e-10 * std::max(1.0, h.frobenius_norm())) << "n = " << n;
    EXPECT_LE((e.basis.adjoint() * e.basis - CMatrix::identity(n)).max_abs(), 1e-12);
    EXPECT_TRUE(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
  }
}

#ifdef TETRA_HAVE_EIGEN
TEST(HermEig, AgreesWithEigenSelfAdjointSolver) {
  rng_t rng(7);
  for (std::size_t n : {3, 9, 24}) {
    const CMatrix h = random_hermitian(n, rng);
    Eigen::MatrixXcd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = h(i, j);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(m);
    const HermEig e = herm_eig(h);
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(e.eigenvalues[k], oracle.eigenvalues()(k), 1e-11);
  }
}

TEST(OpNorm, AgreesWithEigenSvd) {
  rng_t rng(8);
  for (auto [r, c] : {std::pair{3, 3}, std::pair{2, 5}, std::pair{7, 4}}) {
    const CMatrix a = random_gaussian(r, c, rng);
    Eigen::MatrixXcd m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = a(i, j);
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    EXPECT_NEAR(op_norm(a), svd.singularValues()(0), 1e-11);
  }
}
#endif

TEST(OpNorm, ClosedFormCases) {
  EXPECT_DOUBLE_EQ(op_norm(CMatrix{{0.0, 1.0}, {0.0, 0.0}}), 1.0);
  EXPECT_DOUBLE_EQ(op_norm(CMatrix(0, 0)), 0.0);
  EXPECT_NEAR(op_norm(CMatrix::diagonal({cplx(0, -3), 2.0})), 3.0, 1e-14);
  rng_t rng(3);
  for (int k = 0; k < 50; ++k) {
    const CMatrix a = random_gaussian(2, 2, rng);
    EXPECT_NEAR(op_norm(a), norm2x2(a(0, 0), a(0, 1), a(1, 0), a(1, 1)), 1e-12);
  }
}

TEST(SqrtPsd, SquaresBackAndRejectsNegative) {
  rng_t rng(5);
  const CMatrix g = random_gaussian(5, 5, rng);
  const CMatrix p = g.adjoint() * g;
  const CMatrix r = sqrt_psd(p);
  EXPECT_LE((r * r - p).max_abs(), 1e-10);
  EXPECT_LE((r - r.adjoint()).max_abs(), 1e-12);
  EXPECT_EQ(sqrt_psd(CMatrix::diagonal({4.0, 0.0})), CMatrix::diagonal({2.0, 0.0}));
  try {
    sqrt_psd(CMatrix::diagonal({1.0, -0.5}));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.kind(), error_kind::not_psd);
  }
}

TEST(NumericalRadius, KnownValues) {
  // w([[0, a], [0, 0]]) = |a| / 2
  EXPECT_NEAR(numerical_radius(CMatrix{{0.0, 0.25}, {0.0, 0.0}}).value, 0.125, 1e-10);
  EXPECT_NEAR(numerical_radius(CMatrix{{0.0, cplx(0, 2)}, {0.0, 0.0}}).value, 1.0, 1e-10);
  // Normal: w = spectral radius.
  EXPECT_NEAR(numerical_radius(CMatrix::diagonal({cplx(0, 0.7), -0.2})).value, 0.7, 1e-10);
  // Jordan block: w([[l, 1], [0, l]]) = |l| + 1/2
  EXPECT_NEAR(numerical_radius(CMatrix{{0.3, 1.0}, {0.0, 0.3}}).value, 0.8, 1e-10);
  EXPECT_EQ(numerical_radius(CMatrix(0, 0)).value, 0.0);
  EXPECT_THROW(numerical_radius(CMatrix(2, 2), 4), error);
}

TEST(NumericalRadius, SandwichOnRandomMatrices) {
  rng_t rng(31);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + k % 6;
    const CMatrix t = random_gaussian(n, n, rng);
    const double w = numerical_radius(t).value;
    const double nrm = op_norm(t);
    EXPECT_LE(spectral_radius_estimate(t), w + 1e-8);
    EXPECT_LE(w, nrm + 1e-8);
    EXPECT_LE(nrm, 2.0 * w + 1e-8);
  }
}

TEST(NumericalRadius, FinerNestedGridNeverLower) {
  rng_t rng(13);
  for (int k = 0; k < 20; ++k) {
    const CMatrix t = random_gaussian(4, 4, rng);
    EXPECT_GE(numerical_radius(t, 720).value, numerical_radius(t, 90).value - 1e-12);
  }
}

TEST(NumericalRadius, HalfPlaneCharacterization) {
  rng_t rng(17);
  for (int k = 0; k < 40; ++k) {
    CMatrix t = random_gaussian(3, 3, rng);
    const double delta = (k % 2 == 0 ? 1.0 : -1.0) * uniform(rng, 5e-3, 5e-2);
    t *= (1.0 + delta) / numerical_radius(t).value;
    double support = 0.0;
    for (int j = 0; j < 360; ++j) support = std::max(support, rotated_real_part_max(t, 2.0 * std::numbers::pi * j / 360.0));
    EXPECT_EQ(numerical_radius(t).value <= 1.0 + 1e-6, support <= 1.0 + 1e-6) << "delta = " << delta;
  }
}

TEST(SpectralRadius, DominantEigenvalue) {
  EXPECT_NEAR(spectral_radius_estimate(CMatrix::diagonal({0.5, -2.0, 1.0})), 2.0, 1e-9);
  EXPECT_NEAR(spectral_radius_estimate(CMatrix{{0.0, 1.0}, {0.0, 0.0}}), 0.0, 1e-9);
}

TEST(SolveHermitianPsd, MinimumNormSolution) {
  const CMatrix g = CMatrix::diagonal({2.0, 0.0});
  const CMatrix b{{4.0}, {0.0}};
  const CMatrix x = solve_hermitian_psd(g, b);
  EXPECT_NEAR(std::abs(x(0, 0) - 2.0), 0.0, 1e-14);
  EXPECT_EQ(x(1, 0), cplx(0.0));
}

TEST(Random, DeriveSeedIsDeterministicAndSpreads) {
  EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 2), derive_seed(1, 3));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 2));
  rng_t rng(1);
  const CMatrix u = random_unitary(6, rng);
  EXPECT_LE((u.adjoint() * u - CMatrix::identity(6)).max_abs(), 1e-12);
}
