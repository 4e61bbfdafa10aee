#ifndef SBPSAT_ERRORS_HPP
#define SBPSAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sbpsat {

/// Error categories shared between the C++ exceptions and the C API status codes.
enum class ErrorCode {
  invalid_argument = 1,
  singular_matrix,
  rank_deficient,
  infeasible_constraints,
  not_symmetric,
  invalid_index,
  construction_failed,
  inconsistent,
  negative_jacobian,
  unmatched_face,
  inconsistent_normals,
  zero_velocity,
  non_finite_state,
  io_error,
  unknown_name,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

#define SBPSAT_DEFINE_ERROR(NAME, CODE)                                   \
  class NAME : public Error {                                             \
   public:                                                                \
    explicit NAME(const std::string& what) : Error(ErrorCode::CODE, what) {} \
  }

SBPSAT_DEFINE_ERROR(InvalidArgument, invalid_argument);
SBPSAT_DEFINE_ERROR(SingularMatrix, singular_matrix);
SBPSAT_DEFINE_ERROR(RankDeficient, rank_deficient);
SBPSAT_DEFINE_ERROR(InfeasibleConstraints, infeasible_constraints);
SBPSAT_DEFINE_ERROR(NotSymmetric, not_symmetric);
SBPSAT_DEFINE_ERROR(InvalidIndex, invalid_index);
SBPSAT_DEFINE_ERROR(ConstructionFailed, construction_failed);
SBPSAT_DEFINE_ERROR(Inconsistent, inconsistent);
SBPSAT_DEFINE_ERROR(NegativeJacobian, negative_jacobian);
SBPSAT_DEFINE_ERROR(UnmatchedFace, unmatched_face);
SBPSAT_DEFINE_ERROR(InconsistentNormals, inconsistent_normals);
SBPSAT_DEFINE_ERROR(ZeroVelocity, zero_velocity);
SBPSAT_DEFINE_ERROR(NonFiniteState, non_finite_state);
SBPSAT_DEFINE_ERROR(IoError, io_error);
SBPSAT_DEFINE_ERROR(UnknownName, unknown_name);

#undef SBPSAT_DEFINE_ERROR

}  // namespace sbpsat

#endif
