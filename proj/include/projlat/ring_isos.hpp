#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "projlat/coordinatization.hpp"
#include "projlat/element.hpp"
#include "projlat/lattice_maps.hpp"
#include "projlat/projection.hpp"
#include "projlat/tolerances.hpp"

namespace projlat {

/// q with Ψ(i·1) = q·i − q⊥·i: the central projection on which Ψ is complex linear.
/// Throws NotRingIso if Ψ(i·1) is not central or its square is not −1.
Projection classify_linearity(const RingMap& psi, const Shape& shape, const Tolerances& tol = {});

enum class BlockKind { linear, conjugate_linear };

/// Ψ(x) = y ψ₀(x) y⁻¹ where ψ₀ sends source block source_block[b] to target
/// block b, conjugating entries when kind[b] is conjugate_linear.
struct RingIsoFactorization {
  Projection q;
  Element y;
  std::vector<BlockKind> kind;
  std::vector<std::size_t> source_block;
  double residual = 0.0;

  Element psi0(const Element& x) const;
};

/// Skolem–Noether factorization of a real-linear ring isomorphism.
///
/// Blocks are matched through the central supports of Ψ(1_b); the
/// conjugate-linear blocks are reduced to the linear case by pre-composing
/// with entrywise conjugation. Per block, with f_ij = Ψ(e_ij) and ξ the first
/// basis vector with ‖f₁₁ξ‖ > rank_rel·‖f₁₁‖ (else the top singular vector),
/// y is defined by y e_j = f_j1 ξ, then scaled so that its largest-magnitude
/// entry is real positive. `residual` is the largest ‖Ψ(x) − yψ₀(x)y⁻¹‖ over
/// `samples` seeded x.
///
/// Only the conclusion of the factorization theorem is checked here; its proof
/// technique (the center-valued-norm argument) is not exercised.
///
/// Throws NotRealLinear, NotRingIso, DegenerateWitness.
RingIsoFactorization inner_factor(const RingMap& psi, const Shape& shape, std::size_t samples = 20,
                                  std::uint64_t seed = 0, const Tolerances& tol = {});

struct CertificateEntry {
  std::string name;
  double max_residual = 0.0;
  bool passed = true;
};

struct DyeResult {
  RingMap Psi;
  CoordinatizationResult coordinatization;
  std::vector<CertificateEntry> certificate;

  bool passed() const;
};

/// Extends an orthogonality-preserving lattice isomorphism to a real
/// *-isomorphism and certifies on seeded samples: Ψ(p) is the projection Φ(p),
/// Ψ(x*) = Ψ(x)*, h ≤ k ⇒ Ψ(h) ≤ Ψ(k) for Hermitian h, k, and Ψ(1) = 1.
///
/// Throws OrthogonalityNotPreserved (with the witness pair) and any
/// coordinatize error.
DyeResult dye_extension(const LatticeMap& phi, std::size_t samples = 20, std::uint64_t seed = 0,
                        const Tolerances& tol = {});

}  // namespace projlat
