#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "projlat/element.hpp"
#include "projlat/graph_projections.hpp"
#include "projlat/lattice_maps.hpp"
#include "projlat/projection.hpp"
#include "projlat/tolerances.hpp"

namespace projlat {

/// Frame from three mutually orthogonal, pairwise equivalent projections
/// summing to 1. The matrix units are w_1j from mv_equivalent(p1, pj) and
/// w_ij = w_1i* w_1j. Throws NotAFrame.
ThreeFrame order_frame(const Shape& shape, const Projection& p1, const Projection& p2, const Projection& p3,
                       const Tolerances& tol = {});

struct NormalizedMap {
  LatticeMap phi;         // Φ'(p) = l(S Φ(p)), S = normalizers[2] normalizers[1] normalizers[0]
  ThreeFrame target_frame;
  std::vector<Element> normalizers;  // S_{e1∨e2,e3}, S_{e1,e2}, diagonal renormalization
  Element total;                     // the product S
};

/// Moves Φ(e_i) to an orthogonal frame of N and renormalizes it so that
/// Φ'(e_i) = e_i^N and Φ'(P_1j[1]) = P_1j^N[1] for j = 2, 3.
///
/// `seed` only rotates the corner identification of the target frame; the
/// assembled Ψ does not depend on it. Throws NotOrderThree when the images of
/// the frame fail the LS-orthogonality or join checks and FrameAssemblyFailed
/// when the normalized map misses its postconditions.
NormalizedMap normalize_map(const LatticeMap& phi, const ThreeFrame& source_frame, std::uint64_t seed = 0,
                            const Tolerances& tol = {});

struct Residual {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

struct CoordinatizationResult {
  RingMap psi;  // Â → N̂
  RingMap Psi;  // M → N
  ThreeFrame source_frame;
  ThreeFrame target_frame;
  std::vector<Element> normalizers;
  std::vector<Residual> diagnostics;

  bool passed() const;
};

/// Rebuilds the ring isomorphism Ψ with Φ(l(x)) = l(Ψ(x)) from a lattice
/// isomorphism on an algebra of order 3.
///
/// ψ(x) is read off Φ'(P_12[x]) and cross-checked through slots 13 and 23.
/// Ψ applies ψ entrywise in the two frames and undoes the normalizers.
/// `samples` seeded samples check additivity, multiplicativity, Ψ(1) = 1 and
/// the intertwining on random supports, graph projections, P_{x2,x3} and
/// e3-corner projections. Tolerances scale with cond(S).
///
/// Throws NotOrderThree, SlotMismatch, IntertwiningFailure.
CoordinatizationResult coordinatize(const LatticeMap& phi, const ThreeFrame& source_frame, std::size_t samples = 20,
                                    std::uint64_t seed = 0, const Tolerances& tol = {});

/// coordinatize with the contiguous-thirds frame of the source.
CoordinatizationResult coordinatize(const LatticeMap& phi, std::size_t samples = 20, std::uint64_t seed = 0,
                                    const Tolerances& tol = {});

struct UniquenessReport {
  double max_residual = 0.0;           // max ‖Ψ(x) − x‖ / max(1, ‖x‖)
  double max_support_deviation = 0.0;  // max ‖l(Ψ(x)) − l(x)‖
  bool support_condition_holds = true;
  bool certified = false;  // support condition holds and residual ≤ eq_tol
};

/// Quantitative identity lemma: a ring map with l(Ψ(x)) = l(x) is the identity.
UniquenessReport uniqueness_residual(const RingMap& psi, const Shape& shape, std::size_t samples, std::uint64_t seed,
                                     const Tolerances& tol = {});

/// Inverse of a real-linear bijection on an algebra, from its matrix on the
/// real basis {e_ij, i·e_ij}. Throws NotInvertible.
RingMap invert_real_linear(const RingMap& psi, const Shape& shape, const Tolerances& tol = {});

struct SplitPiece {
  Element piece;
  Projection p;  // piece = p·piece·q
  Projection q;
  bool diagonal;  // p = q
};

/// Per-block splits 0 ≤ n1 ≤ n2 ≤ n into three coordinate ranges.
struct BlockSplit {
  Index n1;
  Index n2;
};

/// Splits x into at most nine pieces, one per 3×3 super-block of the split.
/// Off-diagonal pieces live between orthogonal equivalent projections, so each
/// part must have size at most n/2. Zero pieces are omitted. Throws BadSplit.
std::vector<SplitPiece> block_split9(const Element& x, const std::vector<BlockSplit>& splits);

}  // namespace projlat
