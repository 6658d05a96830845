#pragma once

#include <optional>

#include "projlat/element.hpp"
#include "projlat/projection.hpp"
#include "projlat/tolerances.hpp"

namespace projlat {

/// p ∧ q: projection onto range(p) ∩ range(q).
///
/// Computed per block from the principal angles between the two ranges:
/// directions of range(q) whose component outside range(p) has norm at most
/// rank_rel (the sine of the principal angle) are taken as the intersection.
Projection meet(const Projection& p, const Projection& q, const Tolerances& tol = {});

/// p ∨ q: projection onto range(p) + range(q).
///
/// Shares the principal-angle computation with `meet`, so
/// rank(p ∨ q) + rank(p ∧ q) = rank(p) + rank(q) holds exactly per block.
Projection join(const Projection& p, const Projection& q, const Tolerances& tol = {});

/// p ≤ q, i.e. ‖p − qp‖ ≤ eq_tol.
bool leq(const Projection& p, const Projection& q, const Tolerances& tol = {});

/// Murray–von Neumann equivalence. Returns a partial isometry v with
/// vv* = p and v*v = q when the per-block ranks agree, otherwise nullopt.
std::optional<Element> mv_equivalent(const Projection& p, const Projection& q);

/// For complementary p, q (p ∨ q = 1, p ∧ q = 0) returns v with vv* = 1 − p
/// and v*v = q. Throws NotComplementary otherwise.
Element perspectivity_witness(const Projection& p, const Projection& q, const Tolerances& tol = {});

/// Block i is the identity if block i of p is nonzero, else 0.
Projection central_support(const Projection& p);

/// True iff every block of p is 0 or the identity.
bool is_central_projection(const Projection& p);

/// A complement q ≠ 1 − p with p ∨ q = 1 and p ∧ q = 0, if one exists.
///
/// q is the graph of the rectangular identity from range(1 − p) into range(p);
/// it differs from 1 − p exactly when some block of p is neither 0 nor 1, so
/// its existence characterizes non-central projections.
std::optional<Projection> non_unique_complement(const Projection& p);

/// l(x) ≤ l(a), i.e. x lies in the right ideal a·M.
bool principal_ideal_leq(const Element& x, const Element& a, const Tolerances& tol = {});

}  // namespace projlat
