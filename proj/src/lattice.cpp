#include "projlat/lattice.hpp"

#include <algorithm>

#include "linalg.hpp"
#include "projlat/algebra.hpp"
#include "projlat/errors.hpp"

namespace projlat {

namespace {

struct AngleSplit {
  Matrix meet_basis;  // inside range(q)
  Matrix join_extra;  // inside range(1 - p), orthonormal
};

// Principal-angle split of range(q) against range(p) for a single block.
AngleSplit split_block(const Matrix& up, const Matrix& cp, const Matrix& uq, double threshold) {
  const Index n = up.rows();
  const Index rq = uq.cols();
  if (rq == 0) return {Matrix(n, 0), Matrix(n, 0)};
  if (cp.cols() == 0) return {uq, Matrix(n, 0)};

  // Singular values of cp* uq are the sines of the principal angles.
  const Matrix r = cp.adjoint() * uq;
  Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Index separated = 0;
  while (separated < s.size() && s(separated) > threshold) ++separated;

  AngleSplit out;
  out.meet_basis = uq * svd.matrixV().rightCols(rq - separated);
  out.join_extra = cp * svd.matrixU().leftCols(separated);
  return out;
}

}  // namespace

Projection meet(const Projection& p, const Projection& q, const Tolerances& tol) {
  require_same_shape(p.shape(), q.shape(), "meet");
  std::vector<Matrix> bases;
  for (std::size_t b = 0; b < p.num_blocks(); ++b) {
    auto split = split_block(p.basis(b), p.complement_basis(b), q.basis(b), tol.rank_rel);
    // Re-orthonormalize against accumulated rounding in the product.
    bases.push_back(detail::orthonormalize(split.meet_basis));
  }
  return Projection::from_bases(p.shape(), std::move(bases));
}

Projection join(const Projection& p, const Projection& q, const Tolerances& tol) {
  require_same_shape(p.shape(), q.shape(), "join");
  std::vector<Matrix> bases;
  for (std::size_t b = 0; b < p.num_blocks(); ++b) {
    auto split = split_block(p.basis(b), p.complement_basis(b), q.basis(b), tol.rank_rel);
    Matrix basis(p.shape()[b], p.basis(b).cols() + split.join_extra.cols());
    basis << p.basis(b), split.join_extra;
    bases.push_back(std::move(basis));
  }
  return Projection::from_bases(p.shape(), std::move(bases));
}

bool leq(const Projection& p, const Projection& q, const Tolerances& tol) {
  require_same_shape(p.shape(), q.shape(), "leq");
  return distance(p.element(), q.element() * p.element()) <= tol.eq_tol;
}

std::optional<Element> mv_equivalent(const Projection& p, const Projection& q) {
  require_same_shape(p.shape(), q.shape(), "mv_equivalent");
  if (p.ranks() != q.ranks()) return std::nullopt;
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < p.num_blocks(); ++b) {
    blocks.push_back(p.basis(b) * q.basis(b).adjoint());
  }
  return Element(p.shape(), std::move(blocks));
}

Element perspectivity_witness(const Projection& p, const Projection& q, const Tolerances& tol) {
  require_same_shape(p.shape(), q.shape(), "perspectivity_witness");
  if (!meet(p, q, tol).is_zero()) throw NotComplementary("p ∧ q ≠ 0");
  if (join(p, q, tol).ranks() != Projection::one(p.shape()).ranks()) {
    throw NotComplementary("p ∨ q ≠ 1");
  }
  auto v = mv_equivalent(p.complement(), q);
  if (!v) throw NotComplementary("1 − p and q have different ranks");
  return *v;
}

Projection central_support(const Projection& p) {
  std::vector<Matrix> bases;
  for (std::size_t b = 0; b < p.num_blocks(); ++b) {
    const Index n = p.shape()[b];
    bases.push_back(p.ranks()[b] > 0 ? detail::identity(n) : Matrix(n, 0));
  }
  return Projection::from_bases(p.shape(), std::move(bases));
}

bool is_central_projection(const Projection& p) {
  for (std::size_t b = 0; b < p.num_blocks(); ++b) {
    const Index r = p.ranks()[b];
    if (r != 0 && r != p.shape()[b]) return false;
  }
  return true;
}

std::optional<Projection> non_unique_complement(const Projection& p) {
  if (is_central_projection(p)) return std::nullopt;
  std::vector<Matrix> bases;
  for (std::size_t b = 0; b < p.num_blocks(); ++b) {
    const Matrix& up = p.basis(b);
    const Matrix& cp = p.complement_basis(b);
    // Graph of the rectangular identity range(1 - p) -> range(p).
    Matrix g = cp + up * Matrix::Identity(up.cols(), cp.cols());
    bases.push_back(detail::orthonormalize(g));
  }
  return Projection::from_bases(p.shape(), std::move(bases));
}

bool principal_ideal_leq(const Element& x, const Element& a, const Tolerances& tol) {
  require_same_shape(x.shape(), a.shape(), "principal_ideal_leq");
  return leq(left_support(x, tol), left_support(a, tol), tol);
}

}  // namespace projlat
