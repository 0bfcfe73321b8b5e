#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tetra/error.hpp"
#include "tetra/point.hpp"
#include "tetra/poly3.hpp"
#include "tetra/random.hpp"

namespace tetra {

/// Witness (beta1, beta2) with x1 = beta1 + conj(beta2) x3 and x2 = beta2 + conj(beta1) x3.
struct BetaPair {
  cplx beta1{};
  cplx beta2{};

  double sum() const { return std::abs(beta1) + std::abs(beta2); }
};

/// |x3| = 1 within tol: the beta system is singular there.
struct Degenerate {
  bool consistent = false;  // x1 == conj(x2) x3 within tol
  double consistency_defect = 0.0;
};

using BetaSolution = std::variant<BetaPair, Degenerate>;

/**
 * @brief Solve beta1 + x3 conj(beta2) = x1, conj(x3) beta1 + conj(beta2) = conj(x2).
 *
 * The determinant is 1 - |x3|^2, so the solution is unique for |x3| < 1 - tol.
 */
inline BetaSolution solve_betas(const Point3& p, double tol = 1e-9) {
  const double r3 = std::abs(p.x3);
  if (r3 > 1.0 + tol) throw error(error_kind::outside_disk, "|x3| = " + std::to_string(r3) + " > 1");
  if (r3 >= 1.0 - tol) {
    const double defect = std::abs(p.x1 - std::conj(p.x2) * p.x3);
    return Degenerate{defect <= tol, defect};
  }
  const double det = 1.0 - r3 * r3;
  const cplx beta1 = (p.x1 - p.x3 * std::conj(p.x2)) / det;
  const cplx beta2 = (p.x2 - p.x3 * std::conj(p.x1)) / det;
  return BetaPair{beta1, beta2};
}

enum class Membership { in_closure, on_distinguished_boundary, outside };

/// Whether the point is known to lie in the open domain, from |beta1| + |beta2| vs 1.
enum class InteriorStatus { interior, uncertain, not_interior };

constexpr const char* to_string(Membership m) {
  switch (m) {
    case Membership::in_closure: return "InClosure";
    case Membership::on_distinguished_boundary: return "OnDistinguishedBoundary";
    case Membership::outside: return "Outside";
  }
  return "?";
}

constexpr const char* to_string(InteriorStatus s) {
  switch (s) {
    case InteriorStatus::interior: return "Interior";
    case InteriorStatus::uncertain: return "Uncertain";
    case InteriorStatus::not_interior: return "NotInterior";
  }
  return "?";
}

struct Classification {
  Membership membership = Membership::outside;
  InteriorStatus interior = InteriorStatus::not_interior;
  std::optional<BetaPair> betas;
  double beta_sum = 0.0;         // |beta1| + |beta2| when betas exist
  double boundary_defect = 0.0;  // |x1 - conj(x2) x3| when |x3| ~ 1
  std::string evidence;

  /// OnDistinguishedBoundary also means InClosure.
  bool in_closure() const { return membership != Membership::outside; }
};

/**
 * @brief Classify a point against the closed tetrablock and its
 * distinguished boundary.
 *
 * For |x3| < 1 the unique beta pair decides. On |x3| = 1 the point is in
 * the closure exactly when it is on the distinguished boundary:
 * x1 = conj(x2) x3 and |x2| <= 1.
 */
inline Classification classify_point(const Point3& p, double tol = 1e-9) {
  Classification c;
  const double r3 = std::abs(p.x3);
  if (r3 > 1.0 + tol) {
    c.evidence = "|x3| = " + std::to_string(r3) + " exceeds 1";
    return c;
  }
  const BetaSolution sol = solve_betas(p, tol);
  if (const auto* deg = std::get_if<Degenerate>(&sol)) {
    c.boundary_defect = deg->consistency_defect;
    const double r2 = std::abs(p.x2);
    if (deg->consistent && r2 <= 1.0 + tol) {
      c.membership = Membership::on_distinguished_boundary;
      c.evidence = "|x3| = 1, x1 = conj(x2) x3, |x2| <= 1";
    } else if (!deg->consistent) {
      c.evidence = "|x3| = 1 but |x1 - conj(x2) x3| = " + std::to_string(deg->consistency_defect);
    } else {
      c.evidence = "|x3| = 1 but |x2| = " + std::to_string(r2) + " exceeds 1";
    }
    return c;
  }
  const auto& b = std::get<BetaPair>(sol);
  c.betas = b;
  c.beta_sum = b.sum();
  if (c.beta_sum <= 1.0 + tol) {
    c.membership = Membership::in_closure;
    c.evidence = "|beta1| + |beta2| = " + std::to_string(c.beta_sum);
  } else {
    c.evidence = "|beta1| + |beta2| = " + std::to_string(c.beta_sum) + " exceeds 1";
  }
  if (c.beta_sum < 1.0 - tol) {
    c.interior = InteriorStatus::interior;
  } else if (c.beta_sum <= 1.0 + tol) {
    c.interior = InteriorStatus::uncertain;
  }
  return c;
}

/**
 * @brief min over |z|, |w| <= 1 of |1 - z x1 - w x2 + z w x3|.
 *
 * For fixed w the expression is a - z b with a = 1 - w x2, b = x1 - w x3,
 * whose minimum over the closed disc is max(0, |a| - |b|). The outer
 * minimization over w uses a polar grid (grid angles, grid/2 + 1 radii)
 * followed by one pattern search in (r, phi) from the best cell. A value
 * bounded away from 0 is consistent with membership in the open domain.
 */
inline double defining_min(const Point3& p, std::size_t grid = 64) {
  if (grid < 8) throw error(error_kind::invalid_argument, "defining_min grid must be >= 8");
  auto g = [&](double r, double phi) {
    const cplx w = std::polar(r, phi);
    const double a = std::abs(1.0 - w * p.x2);
    const double b = std::abs(p.x1 - w * p.x3);
    return std::max(0.0, a - b);
  };
  const std::size_t radial = grid / 2 + 1;
  double best = g(0.0, 0.0);
  double br = 0.0;
  double bphi = 0.0;
  for (std::size_t i = 0; i < radial; ++i) {
    const double r = static_cast<double>(i) / static_cast<double>(radial - 1);
    for (std::size_t k = 0; k < grid; ++k) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid);
      const double v = g(r, phi);
      if (v < best) {
        best = v;
        br = r;
        bphi = phi;
      }
    }
  }
  double step = 0.1;
  for (int it = 0; it < 60 && best > 0.0; ++it) {
    bool improved = false;
    for (const auto& [dr, dp] : std::array<std::pair<double, double>, 4>{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}}) {
      const double r = std::clamp(br + dr * step, 0.0, 1.0);
      const double phi = bphi + dp * step;
      const double v = g(r, phi);
      if (v < best) {
        best = v;
        br = r;
        bphi = phi;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

/// Parameters (theta, r, phi) of a distinguished-boundary point.
struct BoundaryParams {
  double theta = 0.0;
  double r = 0.0;
  double phi = 0.0;
};

/// x3 = e^{i theta}, x2 = r e^{i phi}, x1 = conj(x2) x3.
inline Point3 boundary_point(const BoundaryParams& b) {
  const cplx x3 = std::polar(1.0, b.theta);
  const cplx x2 = std::polar(b.r, b.phi);
  return {std::conj(x2) * x3, x2, x3};
}

namespace detail {

inline std::vector<BoundaryParams> sample_boundary_params(std::size_t n, std::uint64_t seed) {
  rng_t rng(seed);
  std::vector<BoundaryParams> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    BoundaryParams b;
    b.theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    b.phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    b.r = std::sqrt(uniform(rng));
    out.push_back(b);
  }
  return out;
}

}  // namespace detail

/// n seeded samples of the distinguished boundary, area-uniform in x2.
inline std::vector<Point3> sample_distinguished_boundary(std::size_t n, std::uint64_t seed) {
  std::vector<Point3> out;
  out.reserve(n);
  for (const auto& b : detail::sample_boundary_params(n, seed)) out.push_back(boundary_point(b));
  return out;
}

struct SupOptions {
  std::size_t starts = 5;
  double initial_step = 0.1;
};

/**
 * @brief Lower bound for sup |poly| over the closed tetrablock.
 *
 * Samples the distinguished boundary (where the maximum modulus is
 * attained), then runs a coordinate pattern search in (theta, r, phi) with
 * step halving from the best `starts` samples.
 */
inline double sup_on_closure(const Poly3& poly, std::size_t n_samples = 2000, std::size_t refine_iters = 60,
                             std::uint64_t seed = 0, SupOptions opts = {}) {
  if (poly.empty()) return 0.0;
  auto f = [&](const BoundaryParams& b) { return std::abs(eval_scalar(poly, boundary_point(b))); };
  auto params = detail::sample_boundary_params(std::max<std::size_t>(n_samples, 1), seed);
  std::vector<std::pair<double, std::size_t>> vals(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) vals[i] = {f(params[i]), i};
  const std::size_t top = std::min(opts.starts, vals.size());
  std::partial_sort(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(top), vals.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
  double best = vals.front().first;
  for (std::size_t s = 0; s < top; ++s) {
    BoundaryParams cur = params[vals[s].second];
    double val = vals[s].first;
    double step = opts.initial_step;
    for (std::size_t it = 0; it < refine_iters; ++it) {
      bool improved = false;
      for (int coord = 0; coord < 3; ++coord) {
        for (double sgn : {1.0, -1.0}) {
          BoundaryParams trial = cur;
          double& x = coord == 0 ? trial.theta : (coord == 1 ? trial.r : trial.phi);
          x += sgn * step;
          trial.r = std::clamp(trial.r, 0.0, 1.0);
          const double v = f(trial);
          if (v > val) {
            val = v;
            cur = trial;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    best = std::max(best, val);
  }
  return best;
}

}  // namespace tetra
