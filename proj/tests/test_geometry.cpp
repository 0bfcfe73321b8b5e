#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tetra/geometry.hpp"

using namespace tetra;

namespace {

cplx random_disc(rng_t& rng, double radius) {
  return std::polar(radius * std::sqrt(uniform(rng)), uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

/// Brute-force min over a dense (z, w) grid of |1 - z x1 - w x2 + z w x3|.
double brute_defining_min(const Point3& p, int n) {
  double best = 1e300;
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b < 4 * n; ++b) {
      const cplx w = std::polar(static_cast<double>(a) / n, 2.0 * std::numbers::pi * b / (4 * n));
      for (int c = 0; c <= n; ++c) {
        for (int d = 0; d < 4 * n; ++d) {
          const cplx z = std::polar(static_cast<double>(c) / n, 2.0 * std::numbers::pi * d / (4 * n));
          best = std::min(best, std::abs(1.0 - z * p.x1 - w * p.x2 + z * w * p.x3));
        }
      }
    }
  }
  return best;
}

}  // namespace

TEST(SolveBetas, RecoversConstructedWitness) {
  rng_t rng(1);
  for (int k = 0; k < 200; ++k) {
    const cplx b1 = random_disc(rng, 1.0);
    const cplx b2 = random_disc(rng, 1.0);
    const cplx x3 = random_disc(rng, 0.95);
    const Point3 p{b1 + std::conj(b2) * x3, b2 + std::conj(b1) * x3, x3};
    const auto sol = solve_betas(p);
    ASSERT_TRUE(std::holds_alternative<BetaPair>(sol));
    const auto& bp = std::get<BetaPair>(sol);
    EXPECT_LE(std::abs(bp.beta1 - b1), 1e-10);
    EXPECT_LE(std::abs(bp.beta2 - b2), 1e-10);
  }
}

TEST(SolveBetas, OriginAndDegenerateAndOutside) {
  const auto origin = std::get<BetaPair>(solve_betas({0.0, 0.0, 0.0}));
  EXPECT_EQ(origin.beta1, cplx(0.0));
  EXPECT_EQ(origin.beta2, cplx(0.0));
  const auto deg = std::get<Degenerate>(solve_betas({cplx(0, 1), cplx(0, 1), -1.0}));
  EXPECT_TRUE(deg.consistent);
  const auto bad = std::get<Degenerate>(solve_betas({1.0, 0.0, 1.0}));
  EXPECT_FALSE(bad.consistent);
  EXPECT_DOUBLE_EQ(bad.consistency_defect, 1.0);
  try {
    solve_betas({0.0, 0.0, 1.5});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.kind(), error_kind::outside_disk);
  }
}

TEST(ClassifyPoint, NamedPoints) {
  const Classification origin = classify_point({0.0, 0.0, 0.0});
  EXPECT_EQ(origin.membership, Membership::in_closure);
  EXPECT_EQ(origin.interior, InteriorStatus::interior);

  // (1, 1, 1) satisfies x1 = conj(x2) x3 with |x2| = 1 and |x3| = 1.
  EXPECT_EQ(classify_point({1.0, 1.0, 1.0}).membership, Membership::on_distinguished_boundary);
  EXPECT_EQ(classify_point({cplx(0, 1), cplx(0, 1), -1.0}).membership, Membership::on_distinguished_boundary);

  EXPECT_EQ(classify_point({2.0, 0.0, 0.0}).membership, Membership::outside);
  EXPECT_EQ(classify_point({0.0, 0.0, 1.2}).membership, Membership::outside);
  EXPECT_EQ(classify_point({1.0, 0.0, 1.0}).membership, Membership::outside);
  EXPECT_EQ(classify_point({0.0, 2.0, 1.0}).membership, Membership::outside);
  // (1, 1, 0): betas (1, 1).
  const Classification c = classify_point({1.0, 1.0, 0.0});
  EXPECT_EQ(c.membership, Membership::outside);
  EXPECT_DOUBLE_EQ(c.beta_sum, 2.0);
}

TEST(ClassifyPoint, SliceOfClosure) {
  rng_t rng(2);
  for (int k = 0; k < 100; ++k) {
    const cplx x = random_disc(rng, 1.0);
    const Classification c = classify_point({x, 1.0, x});
    EXPECT_TRUE(c.in_closure()) << c.evidence;
    EXPECT_NE(c.interior, InteriorStatus::interior);
  }
}

TEST(DefiningMin, ClosedFormOnAxis) {
  // (x1, 0, 0): min over z of |1 - z x1| = max(0, 1 - |x1|).
  for (double r : {0.0, 0.3, 0.99, 1.0, 1.7}) {
    EXPECT_NEAR(defining_min({r, 0.0, 0.0}), std::max(0.0, 1.0 - r), 1e-12) << r;
  }
  EXPECT_DOUBLE_EQ(defining_min({0.0, 0.0, 0.0}), 1.0);
  EXPECT_THROW(defining_min({0.0, 0.0, 0.0}, 4), error);
}

TEST(DefiningMin, MatchesBruteForceGrid) {
  rng_t rng(3);
  for (int k = 0; k < 6; ++k) {
    const Point3 p{random_disc(rng, 1.0), random_disc(rng, 1.0), random_disc(rng, 0.8)};
    const double brute = brute_defining_min(p, 24);
    const double dm = defining_min(p);
    EXPECT_LE(dm, brute + 1e-3);
    EXPECT_GE(dm, brute - 0.05);
  }
}

TEST(DefiningMin, AgreesWithClassifierOnStrictCalls) {
  constexpr double tol = 1e-9;
  rng_t rng(4);
  int strict = 0;
  for (int k = 0; k < 400; ++k) {
    const Point3 p{random_disc(rng, 1.2), random_disc(rng, 1.2), random_disc(rng, 0.9)};
    const Classification c = classify_point(p, tol);
    const double dm = defining_min(p);
    if (c.beta_sum < 1.0 - 10 * tol) {
      ++strict;
      EXPECT_GT(dm, 10 * tol);
    } else if (c.beta_sum > 1.0 + 10 * tol) {
      ++strict;
      EXPECT_LE(dm, 10 * tol);
    }
  }
  EXPECT_GT(strict, 300);
}

TEST(DistinguishedBoundary, SamplesSatisfyDefiningRelation) {
  const auto pts = sample_distinguished_boundary(500, 9);
  ASSERT_EQ(pts.size(), 500u);
  for (const Point3& p : pts) {
    EXPECT_LE(std::abs(p.x1 - std::conj(p.x2) * p.x3), 1e-12);
    EXPECT_NEAR(std::abs(p.x3), 1.0, 1e-12);
    EXPECT_LE(std::abs(p.x2), 1.0 + 1e-12);
    EXPECT_EQ(classify_point(p).membership, Membership::on_distinguished_boundary);
  }
  EXPECT_EQ(sample_distinguished_boundary(10, 9), sample_distinguished_boundary(10, 9));
}

TEST(SupOnClosure, KnownSuprema) {
  EXPECT_NEAR(sup_on_closure(Poly3::monomial({0, 0, 1})), 1.0, 1e-12);
  EXPECT_NEAR(sup_on_closure(Poly3::monomial({1, 0, 0})), 1.0, 1e-6);
  // |conj(x2) x3 + x2| reaches 2 at |x2| = 1, x3 = x2 / conj(x2).
  EXPECT_NEAR(sup_on_closure(Poly3::monomial({1, 0, 0}) + Poly3::monomial({0, 1, 0})), 2.0, 1e-6);
  EXPECT_NEAR(sup_on_closure(Poly3(3.0)), 3.0, 1e-15);
  EXPECT_EQ(sup_on_closure(Poly3{}), 0.0);
}

TEST(SupOnClosure, DominatesPointValuesAndIsSeeded) {
  rng_t rng(5);
  const Poly3 p = random_poly(3, 1.0, 77);
  const double s = sup_on_closure(p, 2000, 60, 1);
  EXPECT_EQ(s, sup_on_closure(p, 2000, 60, 1));
  for (int k = 0; k < 200; ++k) {
    const cplx x3 = random_disc(rng, 1.0);
    const cplx x2 = random_disc(rng, 1.0);
    // Points (conj(x2) x3, x2, x3) with |x3| <= 1 lie in the closure.
    EXPECT_LE(std::abs(eval_scalar(p, {std::conj(x2) * x3, x2, x3})), s + 1e-9);
  }
}
