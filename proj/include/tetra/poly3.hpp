#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <vector>

#include "tetra/linalg.hpp"
#include "tetra/point.hpp"
#include "tetra/random.hpp"
#include "tetra/triple.hpp"

namespace tetra {

using Exponent3 = std::array<unsigned, 3>;

/// Polynomial in three commuting variables. Zero coefficients are never stored.
class Poly3 {
 public:
  using term_map = std::map<Exponent3, cplx>;

  Poly3() = default;
  explicit Poly3(cplx constant) { add_term({0, 0, 0}, constant); }

  /// Adds c * x1^m1 x2^m2 x3^m3, merging with an existing term.
  Poly3& add_term(Exponent3 e, cplx c) {
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) it->second += c;
    if (it->second == cplx{}) terms_.erase(it);
    return *this;
  }

  static Poly3 monomial(Exponent3 e, cplx c = 1.0) { return Poly3{}.add_term(e, c); }

  const term_map& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
  }

  unsigned max_exponent(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  cplx coefficient(Exponent3 e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? cplx{} : it->second;
  }

  /// sum of |coefficient|
  double coefficient_mass() const {
    double s = 0.0;
    for (const auto& [e, c] : terms_) s += std::abs(c);
    return s;
  }

  friend Poly3 operator+(Poly3 a, const Poly3& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }

  friend Poly3 operator*(const Poly3& a, const Poly3& b) {
    Poly3 r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return r;
  }

  friend Poly3 operator*(cplx s, Poly3 p) {
    Poly3 r;
    for (const auto& [e, c] : p.terms_) r.add_term(e, s * c);
    return r;
  }

  friend bool operator==(const Poly3&, const Poly3&) = default;

 private:
  term_map terms_;
};

/// Scalar evaluation with per-variable power tables.
inline cplx eval_scalar(const Poly3& p, const Point3& x) {
  if (p.empty()) return 0.0;
  const std::array<cplx, 3> xs{x.x1, x.x2, x.x3};
  std::array<std::vector<cplx>, 3> pw;
  for (std::size_t v = 0; v < 3; ++v) {
    pw[v].resize(p.max_exponent(v) + 1);
    pw[v][0] = 1.0;
    for (std::size_t k = 1; k < pw[v].size(); ++k) pw[v][k] = pw[v][k - 1] * xs[v];
  }
  cplx s = 0.0;
  for (const auto& [e, c] : p.terms()) s += c * pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]];
  return s;
}

namespace detail {

/// T^k by repeated squaring.
inline CMatrix matrix_power(const CMatrix& t, unsigned k) {
  CMatrix result = CMatrix::identity(t.rows());
  CMatrix base = t;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

}  // namespace detail

/**
 * @brief p(T1, T2, T3) as a matrix.
 *
 * Monomials are evaluated in the fixed order T1^m1 * T2^m2 * T3^m3; any
 * commutation defect of the triple is the caller's concern.
 */
inline CMatrix eval_operator(const Poly3& p, const OperatorTriple& t) {
  t.validate();
  const std::size_t n = t.dim();
  CMatrix out(n, n);
  std::array<std::map<unsigned, CMatrix>, 3> powers;
  auto power = [&](std::size_t v, unsigned k) -> const CMatrix& {
    auto it = powers[v].find(k);
    if (it == powers[v].end()) it = powers[v].emplace(k, detail::matrix_power(t[v], k)).first;
    return it->second;
  };
  for (const auto& [e, c] : p.terms()) {
    if (e == Exponent3{0, 0, 0}) {
      for (std::size_t i = 0; i < n; ++i) out(i, i) += c;
      continue;
    }
    CMatrix m = CMatrix::identity(n);
    bool first = true;
    for (std::size_t v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      m = first ? power(v, e[v]) : m * power(v, e[v]);
      first = false;
    }
    out += m * c;
  }
  return out;
}

/// Complex Gaussian coefficients (E|c|^2 = scale^2) on every monomial of total degree <= max_degree.
inline Poly3 random_poly(unsigned max_degree, double scale, std::uint64_t seed) {
  rng_t rng(seed);
  Poly3 p;
  for (unsigned d = 0; d <= max_degree; ++d)
    for (unsigned a = d + 1; a-- > 0;)
      for (unsigned b = d - a + 1; b-- > 0;) p.add_term({a, b, d - a - b}, complex_gaussian(rng, scale));
  return p;
}

// ---------------------------------------------------------------------------
// Caratheodory-Fejer minimal norm for b0 + b1 z + (terms of degree >= 2)
// ---------------------------------------------------------------------------

/// ||[[b0, 0], [b1, b0]]||, the minimal sup-norm over all completions.
inline double cf_matrix_norm(cplx b0, cplx b1) {
  return op_norm(CMatrix{{b0, 0.0}, {b1, b0}});
}

/// Coefficients c_0..c_d of a one-variable polynomial.
using UniPoly = std::vector<cplx>;

inline cplx eval_unipoly(const UniPoly& c, cplx z) {
  cplx s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * z + c[k];
  return s;
}

/**
 * @brief sup over |z| = 1 of |f(z)|: equispaced grid, then a golden-section
 * pass around each of the three largest grid values.
 */
inline double circle_sup(const UniPoly& c, std::size_t grid = 512) {
  const double h = 2.0 * std::numbers::pi / static_cast<double>(grid);
  auto f = [&](double th) { return std::abs(eval_unipoly(c, std::polar(1.0, th))); };
  std::vector<std::pair<double, double>> vals(grid);
  for (std::size_t k = 0; k < grid; ++k) {
    const double th = h * static_cast<double>(k);
    vals[k] = {f(th), th};
  }
  const std::size_t top = std::min<std::size_t>(3, grid);
  std::partial_sort(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(top), vals.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  double best = vals.front().first;
  constexpr double inv_phi = 0.6180339887498949;
  for (std::size_t t = 0; t < top; ++t) {
    double lo = vals[t].second - h;
    double hi = vals[t].second + h;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 40; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = f(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = f(x1);
      }
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

namespace detail {

/**
 * Lawson iteration for the complex Chebyshev problem
 *   min over c_2..c_d of max_k |b0 + b1 z_k + sum c_j z_k^j|
 * on the circle grid. Returns the full coefficient vector c_0..c_d.
 */
inline UniPoly lawson_completion(cplx b0, cplx b1, unsigned degree, std::size_t grid, int iters) {
  const std::size_t m = degree - 1;
  std::vector<cplx> zs(grid);
  for (std::size_t k = 0; k < grid; ++k) zs[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid));
  std::vector<double> w(grid, 1.0 / static_cast<double>(grid));
  UniPoly c(degree + 1, 0.0);
  c[0] = b0;
  c[1] = b1;
  UniPoly best = c;
  double best_val = std::numeric_limits<double>::infinity();
  for (int it = 0; it < iters; ++it) {
    // Weighted normal equations G x = r, basis z^2..z^d.
    CMatrix g(m, m);
    CMatrix r(m, 1);
    for (std::size_t k = 0; k < grid; ++k) {
      const cplx z = zs[k];
      const cplx target = -(b0 + b1 * z);
      std::vector<cplx> phi(m);
      cplx zp = z * z;
      for (std::size_t j = 0; j < m; ++j, zp *= z) phi[j] = zp;
      for (std::size_t i = 0; i < m; ++i) {
        r(i, 0) += w[k] * std::conj(phi[i]) * target;
        for (std::size_t j = 0; j < m; ++j) g(i, j) += w[k] * std::conj(phi[i]) * phi[j];
      }
    }
    const CMatrix x = solve_hermitian_psd(g, r);
    for (std::size_t j = 0; j < m; ++j) c[j + 2] = x(j, 0);
    double total = 0.0;
    double mx = 0.0;
    for (std::size_t k = 0; k < grid; ++k) {
      const double e = std::abs(eval_unipoly(c, zs[k]));
      w[k] *= e;
      total += w[k];
      mx = std::max(mx, e);
    }
    if (mx < best_val) {
      best_val = mx;
      best = c;
    }
    if (total <= 0.0) break;
    for (auto& wk : w) wk /= total;
  }
  return best;
}

}  // namespace detail

struct CfOptions {
  std::size_t circle_grid = 512;
  int lawson_iters = 300;
};

/**
 * @brief Upper-bound search for inf ||b0 + b1 z + r(z)||_inf over r with
 * terms of degree 2..extra_degree.
 *
 * Degrees are visited in increasing order; each degree starts from the
 * better of the previous optimum (zero-extended) and a Lawson warm start,
 * then runs a coordinate pattern search with step halving. The result is
 * therefore nonincreasing in extra_degree for fixed (iters, seed).
 */
inline double cf_empirical_inf(cplx b0, cplx b1, unsigned extra_degree, int iters = 400, std::uint64_t seed = 0,
                               CfOptions opts = {}) {
  UniPoly best{b0, b1};
  double best_val = circle_sup(best, opts.circle_grid);
  const double scale = std::max(std::abs(b0) + std::abs(b1), 1e-12);

  for (unsigned d = 2; d <= extra_degree; ++d) {
    UniPoly start = best;
    start.resize(d + 1, 0.0);
    double start_val = best_val;
    const UniPoly warm = detail::lawson_completion(b0, b1, d, opts.circle_grid, opts.lawson_iters);
    const double warm_val = circle_sup(warm, opts.circle_grid);
    if (warm_val < start_val) {
      start = warm;
      start_val = warm_val;
    }

    // Real parameters: (Re c_j, Im c_j) for j = 2..d.
    const std::size_t np = 2 * (d - 1);
    auto apply = [&](UniPoly& c, std::size_t idx, double delta) {
      const std::size_t j = 2 + idx / 2;
      c[j] += (idx % 2 == 0) ? cplx(delta, 0.0) : cplx(0.0, delta);
    };
    rng_t rng(derive_seed(seed, d));
    std::vector<std::size_t> order(np);
    for (std::size_t i = 0; i < np; ++i) order[i] = i;

    double step = 0.05 * scale;
    for (int it = 0; it < iters && step > 1e-13 * scale; ++it) {
      std::shuffle(order.begin(), order.end(), rng);
      bool improved = false;
      for (std::size_t idx : order) {
        for (double sgn : {1.0, -1.0}) {
          UniPoly trial = start;
          apply(trial, idx, sgn * step);
          const double v = circle_sup(trial, opts.circle_grid);
          if (v < start_val) {
            start = std::move(trial);
            start_val = v;
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (start_val <= best_val) {
      best = std::move(start);
      best_val = start_val;
    } else {
      best.resize(d + 1, 0.0);
    }
  }
  return best_val;
}

}  // namespace tetra
