#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tetra {

enum class error_kind {
  non_square,
  not_hermitian,
  no_convergence,
  not_psd,
  outside_disk,
  dimension_mismatch,
  not_a_contraction,
  inconsistent_equation,
  bad_split,
  not_isometric_embedding,
  validation_required,
  truncation_too_small,
  invalid_argument,
  parse_error,
};

constexpr std::string_view to_string(error_kind k) noexcept {
  switch (k) {
    case error_kind::non_square: return "NonSquare";
    case error_kind::not_hermitian: return "NotHermitian";
    case error_kind::no_convergence: return "NoConvergence";
    case error_kind::not_psd: return "NotPSD";
    case error_kind::outside_disk: return "OutsideDisk";
    case error_kind::dimension_mismatch: return "DimensionMismatch";
    case error_kind::not_a_contraction: return "NotAContraction";
    case error_kind::inconsistent_equation: return "InconsistentEquation";
    case error_kind::bad_split: return "BadSplit";
    case error_kind::not_isometric_embedding: return "NotIsometricEmbedding";
    case error_kind::validation_required: return "ValidationRequired";
    case error_kind::truncation_too_small: return "TruncationTooSmall";
    case error_kind::invalid_argument: return "InvalidArgument";
    case error_kind::parse_error: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class error : public std::runtime_error {
 public:
  error(error_kind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  error_kind kind() const noexcept { return kind_; }

 private:
  error_kind kind_;
};

}  // namespace tetra
