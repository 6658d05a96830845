#pragma once

#include "projlat/element.hpp"
#include "projlat/projection.hpp"
#include "projlat/tolerances.hpp"

namespace projlat {

/// l(x): the projection onto the column space of every block of x. Singular
/// values at or below rank_rel·‖x‖ count as zero.
Projection left_support(const Element& x, const Tolerances& tol = {});

/// r(x) = l(x*).
Projection right_support(const Element& x, const Tolerances& tol = {});

/// x⁻¹. Throws NotInvertible naming the first block whose smallest singular
/// value is at or below rank_rel times its largest.
Element invert(const Element& x, const Tolerances& tol = {});

struct PolarDecomposition {
  Element partial_isometry;  // v, with v*v = r(x) and vv* = l(x)
  Element modulus;           // |x| = (x*x)^{1/2}
};

/// x = v |x|.
PolarDecomposition polar_decompose(const Element& x, const Tolerances& tol = {});

/// |x| = (x*x)^{1/2}.
Element modulus(const Element& x);

/// The central element whose block i is ‖x_i‖ times the identity.
Element center_valued_norm(const Element& x);

/// True iff every block lies within eq_tol of a multiple of its identity.
bool is_central(const Element& x, const Tolerances& tol = {});

/// a ≤ b in the positive-semidefinite order: the smallest eigenvalue of the
/// Hermitian part of b − a is at least −slack.
bool psd_leq(const Element& a, const Element& b, double slack);

/// Smallest eigenvalue of the Hermitian part over all blocks.
double min_eigenvalue(const Element& h);

/// Ratio of the extreme singular values over all blocks (infinity if singular).
double condition_number(const Element& x);

}  // namespace projlat
