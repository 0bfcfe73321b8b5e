#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tetra/poly3.hpp"

using namespace tetra;

namespace {

/// sigma_max of the real lower-triangular [[a, 0], [c, d]].
double lower_norm(double a, double c, double d) {
  const double s = a * a + c * c + d * d;
  return std::sqrt(0.5 * (s + std::sqrt(s * s - 4.0 * a * a * d * d)));
}

}  // namespace

TEST(Poly3, TermsMergeAndCancel) {
  Poly3 p;
  p.add_term({1, 0, 0}, 2.0).add_term({1, 0, 0}, -2.0);
  EXPECT_TRUE(p.empty());
  p.add_term({0, 2, 1}, cplx(0, 1));
  EXPECT_EQ(p.total_degree(), 3u);
  EXPECT_EQ(p.max_exponent(1), 2u);
  EXPECT_EQ(p.coefficient({0, 2, 1}), cplx(0, 1));
  EXPECT_EQ(p.coefficient({1, 1, 1}), cplx(0.0));
}

TEST(Poly3, ProductExpands) {
  const Poly3 a = Poly3(1.0) + Poly3::monomial({1, 0, 0});
  const Poly3 b = Poly3(1.0) + Poly3::monomial({1, 0, 0}, -1.0);
  // (1 + x1)(1 - x1) = 1 - x1^2
  const Poly3 expected = Poly3(1.0) + Poly3::monomial({2, 0, 0}, -1.0);
  EXPECT_EQ(a * b, expected);
  EXPECT_EQ((cplx(2.0) * a).coefficient({1, 0, 0}), cplx(2.0));
}

TEST(Poly3, ScalarEvaluation) {
  const Poly3 p = Poly3::monomial({1, 0, 0}, 3.0) + Poly3::monomial({0, 1, 2}, cplx(0, 1)) + Poly3(-1.0);
  const Point3 x{2.0, cplx(0, 1), 3.0};
  // 3*2 + i * i * 9 - 1 = 6 - 9 - 1
  EXPECT_EQ(eval_scalar(p, x), cplx(-4.0));
}

TEST(Poly3, OperatorEvaluationOnDiagonalTripleIsPointwise) {
  rng_t rng(4);
  const Poly3 p = random_poly(3, 1.0, 12);
  std::vector<cplx> d1;
  std::vector<cplx> d2;
  std::vector<cplx> d3;
  for (int k = 0; k < 4; ++k) {
    d1.push_back(complex_gaussian(rng));
    d2.push_back(complex_gaussian(rng));
    d3.push_back(complex_gaussian(rng));
  }
  const OperatorTriple t(CMatrix::diagonal(d1), CMatrix::diagonal(d2), CMatrix::diagonal(d3));
  const CMatrix v = eval_operator(p, t);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_LE(std::abs(v(k, k) - eval_scalar(p, {d1[k], d2[k], d3[k]})), 1e-12 * std::max(1.0, std::abs(v(k, k))));
  }
}

TEST(Poly3, OperatorEvaluationOrder) {
  const CMatrix a{{0.0, 1.0}, {0.0, 0.0}};
  const CMatrix b{{0.0, 0.0}, {1.0, 0.0}};
  const OperatorTriple t(a, b, CMatrix::identity(2));
  // x1 x2 evaluates to T1 T2 = e11.
  EXPECT_EQ(eval_operator(Poly3::monomial({1, 1, 0}), t), CMatrix::diagonal({1.0, 0.0}));
  EXPECT_EQ(eval_operator(Poly3(2.0), t), CMatrix::diagonal({2.0, 2.0}));
  EXPECT_EQ(eval_operator(Poly3::monomial({0, 0, 5}), t), CMatrix::identity(2));
}

TEST(Poly3, RandomPolyHasAllMonomialsAndIsSeeded) {
  for (unsigned d : {0u, 1u, 3u, 4u}) {
    const Poly3 p = random_poly(d, 1.0, 5);
    EXPECT_EQ(p.term_count(), (d + 1) * (d + 2) * (d + 3) / 6);
    EXPECT_EQ(p.total_degree(), d);
  }
  EXPECT_EQ(random_poly(3, 1.0, 9), random_poly(3, 1.0, 9));
  EXPECT_NE(random_poly(3, 1.0, 9), random_poly(3, 1.0, 10));
}

TEST(Caratheodory, MatrixNormClosedForm) {
  EXPECT_NEAR(cf_matrix_norm(0.6, 0.8), lower_norm(0.6, 0.8, 0.6), 1e-14);
  EXPECT_NEAR(cf_matrix_norm(0.6, 0.8), 1.1211102550927978, 1e-12);
  EXPECT_DOUBLE_EQ(cf_matrix_norm(0.0, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(cf_matrix_norm(0.7, 0.0), 0.7);
  // Phases do not matter: diag unitaries conjugate [[b0, 0], [b1, b0]] to real entries.
  EXPECT_NEAR(cf_matrix_norm(std::polar(0.5, 1.0), std::polar(0.4, -2.0)), lower_norm(0.5, 0.4, 0.5), 1e-14);
}

TEST(Caratheodory, CircleSupOfLinearPolynomial) {
  EXPECT_NEAR(circle_sup({0.6, 0.8}), 1.4, 1e-12);
  EXPECT_NEAR(circle_sup({std::polar(0.3, 0.7), std::polar(0.5, 2.9)}), 0.8, 1e-12);
  EXPECT_LE(std::abs(eval_unipoly({1.0, 2.0, 3.0}, cplx(0, 1)) - cplx(-2.0, 2.0)), 1e-15);
}

TEST(Caratheodory, EmpiricalInfBracketsTheBound) {
  const double bound = cf_matrix_norm(0.6, 0.8);
  EXPECT_NEAR(cf_empirical_inf(0.6, 0.8, 0), 1.4, 1e-12);
  double prev = 1e300;
  for (unsigned d : {0u, 2u, 4u, 8u}) {
    const double v = cf_empirical_inf(0.6, 0.8, d, 400, 3);
    EXPECT_LE(v, prev);
    EXPECT_GE(v, bound - 1e-6);
    prev = v;
  }
  EXPECT_LE(prev, 1.02 * bound);
  EXPECT_EQ(cf_empirical_inf(0.2, cplx(0, 0.9), 4, 200, 1), cf_empirical_inf(0.2, cplx(0, 0.9), 4, 200, 1));
}
