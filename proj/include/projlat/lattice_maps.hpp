#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "projlat/element.hpp"
#include "projlat/projection.hpp"
#include "projlat/tolerances.hpp"

namespace projlat {

/// A (not necessarily linear) map between algebras, used for ring isomorphisms.
using RingMap = std::function<Element(const Element&)>;

enum class FieldAutomorphism { identity, conjugation };

/// The ring isomorphisms x ↦ T σ(x) T⁻¹ of a finite direct sum, where σ
/// conjugates the entries of the flagged blocks. Covers Ad_T, entrywise
/// conjugation, mixed direct sums and their compositions.
struct StandardRingIso {
  Element T;
  std::vector<bool> conjugate_block;

  static StandardRingIso inner(const Element& t);
  static StandardRingIso conjugation(const Shape& shape);

  Element operator()(const Element& x) const;
  StandardRingIso inverse(const Tolerances& tol = {}) const;
  RingMap as_function(const Tolerances& tol = {}) const;
};

class LatticeMap;

namespace provenance {
struct FromRingIso {
  RingMap psi;
  std::optional<RingMap> inverse;
};
struct FromConjugation {
  Element T;
};
struct FromSemilinear {
  Element T;
  FieldAutomorphism sigma;
};
/// parts are applied in order: parts[0] first.
struct Composite {
  std::vector<std::shared_ptr<const LatticeMap>> parts;
};
struct Opaque {
  std::string description;
};
}  // namespace provenance

using Provenance = std::variant<provenance::FromRingIso, provenance::FromConjugation, provenance::FromSemilinear,
                                provenance::Composite, provenance::Opaque>;

/// A map P(M) → P(N) treated as a pure black box, plus a record of how it was built.
class LatticeMap {
 public:
  using Apply = std::function<Projection(const Projection&)>;

  LatticeMap(Shape source, Shape target, Apply apply, Provenance provenance);

  const Shape& source() const { return source_; }
  const Shape& target() const { return target_; }
  const Provenance& provenance() const { return provenance_; }
  std::string describe() const;

  Projection operator()(const Projection& p) const;

 private:
  Shape source_;
  Shape target_;
  Apply apply_;
  Provenance provenance_;
};

LatticeMap identity_map(const Shape& shape);

/// Φ(p) = l(Ψ(p)). The target shape is read off Ψ(1).
LatticeMap from_ring_iso(const Shape& source, RingMap psi, std::optional<RingMap> inverse = std::nullopt,
                         const Tolerances& tol = {});
LatticeMap from_ring_iso(const StandardRingIso& psi, const Tolerances& tol = {});

/// Φ(p) = projection onto T·range(p). Throws NotInvertible.
LatticeMap from_conjugation(const Element& T, const Tolerances& tol = {});

/// Φ(p) = projection onto T·σ(range(p)), σ acting entrywise on basis vectors.
LatticeMap from_semilinear(const Element& T, FieldAutomorphism sigma, const Tolerances& tol = {});

/// Wraps an arbitrary function; not invertible and not serializable.
LatticeMap opaque_map(const Shape& source, const Shape& target, LatticeMap::Apply apply, std::string description);

/// outer ∘ inner.
LatticeMap compose(const LatticeMap& outer, const LatticeMap& inner);

/// Inverse built from provenance. Throws NotInvertibleProvenance for opaque
/// maps and for ring-isomorphism maps without a recorded inverse.
LatticeMap invert_map(const LatticeMap& phi, const Tolerances& tol = {});

struct LatticeIsoReport {
  bool passed = true;
  std::uint64_t seed = 0;
  std::size_t checks = 0;
  double max_residual = 0.0;
  std::vector<std::string> failures;
};

/// Sampled check of the lattice-isomorphism hypothesis: Φ(0) = 0, Φ(1) = 1,
/// order preserved and reflected, meets and joins preserved within proj_tol,
/// and a constant image rank profile over projections of a fixed rank profile.
LatticeIsoReport verify_lattice_iso(const LatticeMap& phi, std::size_t samples, std::uint64_t seed,
                                    const Tolerances& tol = {});

struct OrthogonalityReport {
  bool preserved = true;
  std::size_t checks = 0;
  std::optional<Projection> witness_p;
  std::optional<Projection> witness_q;
  std::string description;
};

/// Checks pq = 0 ⇔ Φ(p)Φ(q) = 0 on the diagonal matrix-unit pairs of every
/// block, then on seeded random orthogonal and non-orthogonal pairs.
OrthogonalityReport preserves_orthogonality(const LatticeMap& phi, std::size_t samples, std::uint64_t seed,
                                            const Tolerances& tol = {});

}  // namespace projlat
