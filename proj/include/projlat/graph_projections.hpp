#pragma once

#include <optional>
#include <string>
#include <vector>

#include "projlat/element.hpp"
#include "projlat/projection.hpp"
#include "projlat/tolerances.hpp"

namespace projlat {

/// A 3×3 system of matrix units identifying the ambient algebra with M₃(Â).
///
/// Stored as one unitary per block whose columns are [V1 | V2 | V3], each V_i
/// an isometry from the corner space onto range(e_i). The corner algebra Â
/// has shape n_b / 3 per block; the matrix units are w_ij = V_i V_j*.
class ThreeFrame {
 public:
  /// `basis` must be unitary per block with every block size divisible by 3.
  /// Throws NotAFrame otherwise.
  static ThreeFrame from_basis(const Element& basis, const Tolerances& tol = {});

  const Shape& ambient() const { return basis_.shape(); }
  const Shape& corner() const { return corner_; }
  const Element& basis() const { return basis_; }

  /// Diagonal frame projection e_i, i ∈ {1, 2, 3}.
  const Projection& e(int i) const;
  /// Matrix unit w_ij, i, j ∈ {1, 2, 3}.
  Element unit(int i, int j) const;

  /// Isometry V_i for block b.
  Matrix isometry(std::size_t block, int i) const;

  /// V_i x V_j* for a corner element x.
  Element embed(const Element& corner_x, int i, int j) const;
  /// V_i* X V_j, the (i, j) corner coordinate of an ambient element.
  Element coordinate(const Element& x, int i, int j) const;

  /// Entrywise assembly Σ_ij V_i x_ij V_j* from nine corner elements (row-major).
  Element assemble(const std::vector<Element>& entries) const;

 private:
  ThreeFrame(Element basis, Shape corner, std::vector<Projection> diagonal);

  Element basis_;
  Shape corner_;
  std::vector<Projection> diagonal_;
};

/// Contiguous thirds: M_{3k} ≅ M₃(M_k) with e_i the i-th block of k coordinates.
/// Throws NotOrderThree if some block size is not divisible by 3.
ThreeFrame standard_frame(const Shape& shape);

/// Position of the graph: {ξ in slot `from`, xξ in slot `to`}.
enum class Slot { s12, s13, s23, s21 };

int slot_from(Slot s);
int slot_to(Slot s);
std::string to_string(Slot s);

/// P_ij[x]: the projection onto {V_i ξ + V_j xξ}. In frame coordinates for slot 12
///
///     [[(1+x*x)⁻¹, (1+x*x)⁻¹x*, 0], [x(1+x*x)⁻¹, x(1+x*x)⁻¹x*, 0], [0, 0, 0]].
///
/// Built from the isometry [1; x](1+x*x)^{-1/2}, with (1+x*x)^{-1/2} taken by
/// Hermitian eigendecomposition. Throws ShapeMismatch.
Projection graph_projection(const ThreeFrame& frame, const Element& x, Slot slot);

/// Q ∨ e_to = e_from ∨ e_to and Q is LS-orthogonal to e_to; equivalently Q is
/// the graph projection of some corner element in this slot.
bool is_slot_graph_projection(const ThreeFrame& frame, const Projection& q, Slot slot,
                              const Tolerances& tol = {});

/// x with Q = P_slot[x], read from the range basis B of Q as
/// x = (V_to* B)(V_from* B)⁻¹. Throws NotAGraphProjection.
Element recover_operator(const ThreeFrame& frame, const Projection& q, Slot slot, const Tolerances& tol = {});

/// (P₂₃[−x] ∨ P₁₂[y]) ∧ (e1 ∨ e3), which equals P₁₃[xy].
Projection lattice_product(const ThreeFrame& frame, const Element& x, const Element& y,
                           const Tolerances& tol = {});

/// (f ∨ g) ∧ (e1 ∨ e2) with f = (P₁₂[x] ∨ e3) ∧ (P₁₃[1] ∨ e2) and
/// g = (P₁₂[y] ∨ P₁₃[1]) ∧ (e2 ∨ e3), which equals P₁₂[x + y].
Projection lattice_sum(const ThreeFrame& frame, const Element& x, const Element& y, const Tolerances& tol = {});

/// (P₁₂[x2] ∨ e3) ∧ (P₁₃[x3] ∨ e2), the projection onto {(ξ, x2ξ, x3ξ)}.
Projection graph_pair_projection(const ThreeFrame& frame, const Element& x2, const Element& x3,
                                 const Tolerances& tol = {});

struct InverseCoincidence {
  bool invertible;
  std::optional<Element> inverse;  // recovered through slot 21 when invertible
};

/// P₁₂[x] = P₂₁[y] for some y iff x is invertible, and then y = x⁻¹.
InverseCoincidence inverse_coincidence(const ThreeFrame& frame, const Element& x, const Tolerances& tol = {});

}  // namespace projlat
