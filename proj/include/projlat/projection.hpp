#pragma once

#include <vector>

#include "projlat/element.hpp"
#include "projlat/tolerances.hpp"

namespace projlat {

/// A self-adjoint idempotent element, carried together with orthonormal bases
/// of its range and of the range of its complement in every block.
///
/// Projections are always built exactly (p = U U* per block), so idempotence
/// and self-adjointness hold to machine precision.
class Projection {
 public:
  /// `bases[i]` must have orthonormal columns spanning the range in block i.
  static Projection from_bases(const Shape& shape, std::vector<Matrix> bases);
  static Projection zero(const Shape& shape);
  static Projection one(const Shape& shape);

  const Element& element() const { return element_; }
  const Shape& shape() const { return element_.shape(); }
  std::size_t num_blocks() const { return element_.num_blocks(); }

  const std::vector<Index>& ranks() const { return ranks_; }
  Index total_rank() const;
  bool is_zero() const { return total_rank() == 0; }

  const Matrix& basis(std::size_t block) const { return bases_[block]; }
  const Matrix& complement_basis(std::size_t block) const { return complements_[block]; }

  /// 1 − p.
  Projection complement() const;

 private:
  Projection(Element element, std::vector<Matrix> bases, std::vector<Matrix> complements);

  Element element_;
  std::vector<Matrix> bases_;
  std::vector<Matrix> complements_;
  std::vector<Index> ranks_;
};

/// Snaps a nearly-projection element to the exact spectral projection.
///
/// Eigenvalues in [-0.1, 0.1] go to 0 and those in [0.9, 1.1] go to 1. Any
/// other eigenvalue, or a Hermitian defect above proj_tol, raises NotAProjection.
Projection canonicalize(const Element& x, const Tolerances& tol = {});

/// True if x is Hermitian and idempotent within proj_tol.
bool is_projection(const Element& x, const Tolerances& tol = {});

double distance(const Projection& p, const Projection& q);

}  // namespace projlat
