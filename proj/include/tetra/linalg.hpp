#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <vector>

#include "tetra/error.hpp"
#include "tetra/matrix.hpp"

namespace tetra {

/// Eigen-decomposition of a Hermitian matrix: H = basis * diag(eigenvalues) * basis^*.
struct HermEig {
  std::vector<double> eigenvalues;  // ascending
  CMatrix basis;                    // unitary, eigenvectors in columns
  int sweeps = 0;
};

struct JacobiOptions {
  int max_sweeps = 100;
  double relative_threshold = 1e-13;  // off-diagonal stop, relative to ||H||_F
};

/**
 * @brief Cyclic Jacobi eigensolver for complex Hermitian matrices.
 *
 * The input is symmetrized as (H + H^*)/2 before iterating, after checking
 * that ||H - H^*||_F <= tol. Each rotation first removes the phase of the
 * pivot entry, then applies the real symmetric Jacobi rotation.
 */
inline HermEig herm_eig(const CMatrix& h, double tol = 1e-9, JacobiOptions opts = {}) {
  if (!h.is_square()) throw error(error_kind::non_square, "herm_eig on " + h.shape());
  const std::size_t n = h.rows();
  const double asym = (h - h.adjoint()).frobenius_norm();
  if (asym > tol * std::max(1.0, h.frobenius_norm())) {
    throw error(error_kind::not_hermitian, "||H - H*|| = " + std::to_string(asym));
  }

  CMatrix a = hermitian_part(h);
  CMatrix v = CMatrix::identity(n);
  const double threshold = opts.relative_threshold * a.frobenius_norm();

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
  };

  int sweep = 0;
  while (off_norm() > threshold) {
    if (sweep >= opts.max_sweeps) {
      throw error(error_kind::no_convergence, "Jacobi did not converge in " + std::to_string(opts.max_sweeps) + " sweeps");
    }
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const cplx phase = apq / g;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // W = [[c, s e^{i phi}], [-s e^{-i phi}, c]] on coordinates (p, q); A <- W^* A W.
        const cplx wpq = s * phase;
        const cplx wqp = -s * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp + wqp * akq;
          a(k, q) = wpq * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk + std::conj(wqp) * aqk;
          a(q, k) = std::conj(wpq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp + wqp * vkq;
          v(k, q) = wpq * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermEig out;
  out.sweeps = sweep;
  out.eigenvalues.resize(n);
  out.basis = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.basis(i, k) = v(i, order[k]);
  }
  return out;
}

/// U diag(f(lambda)) U^*
template <class F>
CMatrix spectral_apply(const HermEig& e, F&& f) {
  const std::size_t n = e.eigenvalues.size();
  CMatrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(e.eigenvalues[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx uik = e.basis(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += uik * std::conj(e.basis(j, k));
    }
  }
  return r;
}

/// Largest eigenvalue of a Hermitian matrix.
inline double lambda_max(const CMatrix& h, double tol = 1e-9) {
  if (!h.is_square()) throw error(error_kind::non_square, "lambda_max on " + h.shape());
  if (h.rows() == 0) return 0.0;
  if (h.rows() == 1) return h(0, 0).real();
  if (h.rows() == 2) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double b = std::abs(0.5 * (h(0, 1) + std::conj(h(1, 0))));
    return 0.5 * (a + d) + std::hypot(0.5 * (a - d), b);
  }
  return herm_eig(h, tol).eigenvalues.back();
}

/// Largest singular value, sqrt(lambda_max(M^* M)). Empty matrices have norm 0.
inline double op_norm(const CMatrix& m) {
  if (m.empty()) return 0.0;
  const CMatrix g = m.rows() < m.cols() ? m * m.adjoint() : m.adjoint() * m;
  return std::sqrt(std::max(0.0, lambda_max(g, 1e-6)));
}

/**
 * @brief Square root of a Hermitian positive semidefinite matrix.
 *
 * Eigenvalues in [-tol, 0) are clamped to zero; anything below -tol is
 * rejected with NotPSD (for H = I - T^*T this means ||T|| > 1).
 */
inline CMatrix sqrt_psd(const CMatrix& h, double tol = 1e-9) {
  const HermEig e = herm_eig(h, tol);
  if (!e.eigenvalues.empty() && e.eigenvalues.front() < -tol) {
    throw error(error_kind::not_psd, "smallest eigenvalue " + std::to_string(e.eigenvalues.front()));
  }
  return spectral_apply(e, [](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; });
}

/// lambda_max(Re(e^{i theta} T)), the support function of the numerical range in direction theta.
inline double rotated_real_part_max(const CMatrix& t, double theta) {
  return lambda_max(hermitian_part(t * std::polar(1.0, theta)));
}

struct NumericalRadius {
  double value = 0.0;
  double theta_star = 0.0;
};

/**
 * @brief Numerical radius w(T) = max over theta of lambda_max(Re e^{i theta} T).
 *
 * Uniform theta grid, then ternary refinement on the two cells adjacent to
 * the best grid point. The result never drops below the best grid value.
 */
inline NumericalRadius numerical_radius(const CMatrix& t, std::size_t grid = 720, std::size_t refine_iters = 40) {
  if (!t.is_square()) throw error(error_kind::non_square, "numerical_radius on " + t.shape());
  if (grid < 8) throw error(error_kind::invalid_argument, "numerical_radius grid must be >= 8");
  if (t.rows() == 0) return {};

  const double step = 2.0 * std::numbers::pi / static_cast<double>(grid);
  NumericalRadius best{rotated_real_part_max(t, 0.0), 0.0};
  for (std::size_t k = 1; k < grid; ++k) {
    const double th = step * static_cast<double>(k);
    const double v = rotated_real_part_max(t, th);
    if (v > best.value) best = {v, th};
  }

  double lo = best.theta_star - step;
  double hi = best.theta_star + step;
  for (std::size_t it = 0; it < refine_iters; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (rotated_real_part_max(t, m1) < rotated_real_part_max(t, m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double v = rotated_real_part_max(t, mid);
  if (v > best.value) best = {v, mid};
  best.theta_star = std::remainder(best.theta_star, 2.0 * std::numbers::pi);
  if (best.theta_star < 0.0) best.theta_star += 2.0 * std::numbers::pi;
  return best;
}

/**
 * @brief Approximate spectral radius from power iteration.
 *
 * Returns |<Tx, x>| for the normalized power iterate x. That is a point of
 * the numerical range, so the estimate never exceeds w(T); it converges to
 * r(T) when a dominant eigenvalue exists. Approximate by construction.
 */
inline double spectral_radius_estimate(const CMatrix& t, int iters = 2000) {
  if (!t.is_square()) throw error(error_kind::non_square, "spectral_radius_estimate on " + t.shape());
  const std::size_t n = t.rows();
  if (n == 0) return 0.0;
  CMatrix x(n, 1);
  for (std::size_t i = 0; i < n; ++i) x(i, 0) = cplx(1.0 + 0.1 * static_cast<double>(i), 0.37 * static_cast<double>(i % 3));
  double best = 0.0;
  for (int k = 0; k < iters; ++k) {
    const double nx = x.frobenius_norm();
    if (nx < 1e-300) return 0.0;
    x *= 1.0 / nx;
    CMatrix y = t * x;
    const cplx rq = (x.adjoint() * y)(0, 0);
    best = std::abs(rq);
    x = std::move(y);
  }
  return best;
}

/**
 * @brief Minimum-norm solution of G x = b for Hermitian PSD G via its
 * eigen-decomposition, discarding eigenvalues below rcond * lambda_max.
 */
inline CMatrix solve_hermitian_psd(const CMatrix& g, const CMatrix& b, double rcond = 1e-14) {
  const HermEig e = herm_eig(g, 1e-8);
  const double top = e.eigenvalues.empty() ? 0.0 : std::abs(e.eigenvalues.back());
  const CMatrix pinv = spectral_apply(e, [&](double l) { return l > rcond * top ? 1.0 / l : 0.0; });
  return pinv * b;
}

}  // namespace tetra
