#pragma once

#include "projlat/errors.hpp"

namespace projlat {

/// Numerical thresholds shared by every operation.
///
/// `rank_rel` is a relative singular-value cutoff. Supports measure it against
/// the norm of the whole element, so a block that is zero up to rounding has
/// rank 0; invertibility measures it per block. It is also used as the threshold on
/// the sine of a principal angle below which two directions are identified.
/// `proj_tol` bounds deviations of projections, `eq_tol` bounds element
/// equality; both are measured in operator norm.
struct Tolerances {
  double rank_rel = 1e-9;
  double proj_tol = 1e-8;
  double eq_tol = 1e-8;

  void validate() const {
    if (!(rank_rel > 0.0) || !(rank_rel < 1.0)) {
      throw PreconditionViolated("tolerances: rank_rel must lie in (0, 1)");
    }
    if (!(proj_tol > 0.0) || !(eq_tol > 0.0)) {
      throw PreconditionViolated("tolerances: proj_tol and eq_tol must be positive");
    }
  }
};

}  // namespace projlat
