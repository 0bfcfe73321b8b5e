#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "tetra/matrix.hpp"

namespace tetra {

using rng_t = std::mt19937_64;

/// splitmix64 finalizer; derives independent per-trial seeds from a master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Complex Gaussian with E|z|^2 = sigma^2.
inline cplx complex_gaussian(rng_t& rng, double sigma = 1.0) {
  std::normal_distribution<double> nd(0.0, sigma / std::sqrt(2.0));
  const double re = nd(rng);
  const double im = nd(rng);
  return {re, im};
}

inline CMatrix random_gaussian(std::size_t rows, std::size_t cols, rng_t& rng, double sigma = 1.0) {
  CMatrix m(rows, cols);
  for (auto& v : m.data()) v = complex_gaussian(rng, sigma);
  return m;
}

inline CMatrix random_hermitian(std::size_t n, rng_t& rng) { return hermitian_part(random_gaussian(n, n, rng)); }

/// Haar-ish unitary: modified Gram-Schmidt on a complex Gaussian matrix.
inline CMatrix random_unitary(std::size_t n, rng_t& rng) {
  CMatrix q = random_gaussian(n, n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      cplx dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
      for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(q(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= nrm;
  }
  return q;
}

inline double uniform(rng_t& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace tetra
