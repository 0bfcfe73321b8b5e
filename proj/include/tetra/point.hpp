#pragma once

#include <cmath>

#include "tetra/matrix.hpp"

namespace tetra {

/// A point (x1, x2, x3) of C^3.
struct Point3 {
  cplx x1{};
  cplx x2{};
  cplx x3{};

  bool is_finite() const {
    for (const cplx& v : {x1, x2, x3})
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

  friend bool operator==(const Point3&, const Point3&) = default;
};

}  // namespace tetra
