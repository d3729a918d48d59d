#pragma once

#include <stdexcept>
#include <string>

namespace projshape {

/// Error codes for every failure mode the library reports.
enum class errc {
  zero_vector,
  zero_row,
  dimension_mismatch,
  invariant_violation,
  parse_error,
  instance_too_large,
  singular_base,
  not_a_frame,
  pseudo_frame_absent,
  not_free,
  not_hausdorff_input,
  rank_deficient,
  not_standardizable,
  not_standardized,
  not_splittable,
  invalid_block_pair,
  infeasible_constraint,
  cancelled,
};

inline const char* to_string(errc c) {
  switch (c) {
    case errc::zero_vector: return "ZeroVector";
    case errc::zero_row: return "ZeroRow";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::invariant_violation: return "InvariantViolation";
    case errc::parse_error: return "ParseError";
    case errc::instance_too_large: return "InstanceTooLarge";
    case errc::singular_base: return "SingularBase";
    case errc::not_a_frame: return "NotAFrame";
    case errc::pseudo_frame_absent: return "PseudoFrameAbsent";
    case errc::not_free: return "NotFree";
    case errc::not_hausdorff_input: return "NotHausdorffInput";
    case errc::rank_deficient: return "RankDeficient";
    case errc::not_standardizable: return "NotStandardizable";
    case errc::not_standardized: return "NotStandardized";
    case errc::not_splittable: return "NotSplittable";
    case errc::invalid_block_pair: return "InvalidBlockPair";
    case errc::infeasible_constraint: return "InfeasibleConstraint";
    case errc::cancelled: return "Cancelled";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace projshape
