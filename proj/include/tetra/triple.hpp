#pragma once

#include <algorithm>

#include "tetra/error.hpp"
#include "tetra/linalg.hpp"
#include "tetra/matrix.hpp"

namespace tetra {

/**
 * @brief Three square matrices of equal dimension, the finite model of a
 * commuting operator triple (T1, T2, T3).
 *
 * Commutation is not enforced on construction; `commutation_defect`
 * measures it against `tol`.
 */
struct OperatorTriple {
  CMatrix t1;
  CMatrix t2;
  CMatrix t3;
  double tol = 1e-9;

  OperatorTriple() = default;
  OperatorTriple(CMatrix a, CMatrix b, CMatrix c, double tolerance = 1e-9)
      : t1(std::move(a)), t2(std::move(b)), t3(std::move(c)), tol(tolerance) {
    validate();
  }

  std::size_t dim() const noexcept { return t1.rows(); }

  void validate() const {
    for (const CMatrix* m : {&t1, &t2, &t3}) {
      if (!m->is_square()) throw error(error_kind::non_square, "triple component " + m->shape());
    }
    if (t2.rows() != t1.rows() || t3.rows() != t1.rows()) {
      throw error(error_kind::dimension_mismatch,
                  "triple components " + t1.shape() + ", " + t2.shape() + ", " + t3.shape());
    }
  }

  OperatorTriple adjoint() const { return {t1.adjoint(), t2.adjoint(), t3.adjoint(), tol}; }

  const CMatrix& operator[](std::size_t i) const { return i == 0 ? t1 : (i == 1 ? t2 : t3); }
};

/// max over the three pairs of ||T_i T_j - T_j T_i||.
inline double commutation_defect(const OperatorTriple& t) {
  t.validate();
  return std::max({op_norm(commutator(t.t1, t.t2)), op_norm(commutator(t.t1, t.t3)),
                   op_norm(commutator(t.t2, t.t3))});
}

}  // namespace tetra
