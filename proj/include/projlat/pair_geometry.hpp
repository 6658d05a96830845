#pragma once

#include <cstdint>
#include <vector>

#include "projlat/element.hpp"
#include "projlat/projection.hpp"
#include "projlat/tolerances.hpp"

namespace projlat {

/// Canonical form of a pair of projections (p, q).
///
/// The space splits into the four corners p∧q, p∧q⊥, p⊥∧q, p⊥∧q⊥ and the
/// generic part e1 + e2, where e1 = p − p∧q − p∧q⊥ and
/// e2 = p⊥ − p⊥∧q − p⊥∧q⊥. Identifying e2 with e1 through the partial
/// isometry v (vv* = e1, v*v = e2), the pair reads
///
///     p = 1 ⊕ 1 ⊕ 0 ⊕ 0 ⊕ [[1, 0], [0, 0]]
///     q = 1 ⊕ 0 ⊕ 1 ⊕ 0 ⊕ [[a², ab], [ab, b²]]
///
/// with commuting positive a, b on e1 and a² + b² = e1. The eigenvalues of a
/// and b are the cosines and sines of the principal angles of the generic part.
struct HalmosDecomposition {
  Projection p_and_q;
  Projection p_and_qc;
  Projection pc_and_q;
  Projection pc_and_qc;
  Projection e1;
  Projection e2;
  Element a;
  Element b;
  Element v;
  /// Principal angles of the generic part, ascending, per block (radians).
  std::vector<std::vector<double>> angles;
};

HalmosDecomposition halmos_decompose(const Projection& p, const Projection& q, const Tolerances& tol = {});

struct ProjectionPair {
  Projection p;
  Projection q;
};

/// Rebuilds (p, q) from a decomposition.
ProjectionPair reconstruct(const HalmosDecomposition& d, const Tolerances& tol = {});

/// p ∧ q = 0 and the sine operator b is invertible on e1 (vacuously true when e1 = 0).
///
/// In finite dimension the second condition always holds once p ∧ q = 0,
/// because angles with sine below rank_rel are absorbed into the p∧q corner.
bool ls_orthogonal(const Projection& p, const Projection& q, const Tolerances& tol = {});

/// The minimal-cover characterization: no strict subprojection p0 < p has
/// p0 ∨ q = p ∨ q. Decided exactly by rank(p ∨ q) = rank(p) + rank(q) per
/// block; `trials` random strict subprojections are additionally tried as
/// falsification attempts. Throws PreconditionViolated if p ∧ q ≠ 0.
bool ls_char_minimal_cover(const Projection& p, const Projection& q, int trials, std::uint64_t seed = 0,
                           const Tolerances& tol = {});

/// Invertible S with S(p∨q)⊥ = (p∨q)⊥S = (p∨q)⊥, Sp = p and l(SqS⁻¹) = p∨q − p.
///
/// S is the identity off the generic part and [[1, −ab⁻¹], [0, b⁻¹]] on it.
/// Throws NotLSOrthogonal.
Element orthogonalizer(const Projection& p, const Projection& q, const Tolerances& tol = {});

/// For orthogonal equivalent p, q and x = pxq with ‖x‖ ≤ 1/2, a projection
/// e ≤ p + q with peq = x:
///
///     e = cos²a + v*(sin a cos a) + (sin a cos a)v + v*(sin²a)v
///
/// where x = v|x| (v extended to a full partial isometry from q onto p) and
/// a ∈ (pMp)₊ solves sin a cos a = |x*|, ‖a‖ ≤ π/4.
Projection corner_witness_projection(const Element& x, const Projection& p, const Projection& q,
                                     const Tolerances& tol = {});

}  // namespace projlat
