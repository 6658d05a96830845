#include "projlat/pair_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "linalg.hpp"
#include "projlat/algebra.hpp"
#include "projlat/errors.hpp"
#include "projlat/lattice.hpp"
#include "projlat/sampling.hpp"

namespace projlat {

namespace {

// Embeds per-block cores (r×r, in the coordinates of `basis`) into the algebra.
Element embed(const Projection& frame, const std::vector<Matrix>& cores) {
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < frame.num_blocks(); ++b) {
    const Matrix& u = frame.basis(b);
    blocks.push_back(u * cores[b] * u.adjoint());
  }
  return Element(frame.shape(), std::move(blocks));
}

}  // namespace

HalmosDecomposition halmos_decompose(const Projection& p, const Projection& q, const Tolerances& tol) {
  require_same_shape(p.shape(), q.shape(), "halmos_decompose");
  const Projection pc = p.complement();
  const Projection qc = q.complement();
  Projection pq = meet(p, q, tol);
  Projection pqc = meet(p, qc, tol);
  Projection pcq = meet(pc, q, tol);
  Projection pcqc = meet(pc, qc, tol);
  Projection e1 = canonicalize(p.element() - pq.element() - pqc.element(), tol);
  Projection e2 = canonicalize(pc.element() - pcq.element() - pcqc.element(), tol);
  if (e1.ranks() != e2.ranks()) {
    throw NumericalBreakdown("halmos_decompose: generic parts e1 and e2 have different ranks");
  }

  const Shape& shape = p.shape();
  std::vector<Matrix> a_blocks, b_blocks, v_blocks;
  std::vector<std::vector<double>> angles;
  for (std::size_t blk = 0; blk < shape.num_blocks(); ++blk) {
    const Index n = shape[blk];
    const Matrix& u1 = e1.basis(blk);
    const Matrix& u2 = e2.basis(blk);
    const Index r = u1.cols();
    std::vector<double> theta;
    if (r == 0) {
      a_blocks.push_back(Matrix::Zero(n, n));
      b_blocks.push_back(Matrix::Zero(n, n));
      v_blocks.push_back(Matrix::Zero(n, n));
      angles.push_back(theta);
      continue;
    }
    const Matrix& qb = q.element().block(blk);
    // a² = e1 q e1 compressed to range(e1).
    Eigen::SelfAdjointEigenSolver<Matrix> es(detail::hermitian_part(u1.adjoint() * qb * u1));
    const Matrix& w = es.eigenvectors();
    Eigen::VectorXd cos2 = es.eigenvalues().cwiseMax(0.0).cwiseMin(1.0);
    Eigen::VectorXd c = cos2.cwiseSqrt();
    Eigen::VectorXd s = (Eigen::VectorXd::Ones(r) - cos2).cwiseSqrt();
    for (Index i = 0; i < r; ++i) theta.push_back(std::atan2(s(i), c(i)));
    std::sort(theta.begin(), theta.end());

    Matrix a_core = w * c.cast<Complex>().asDiagonal() * w.adjoint();
    Matrix b_core = w * s.cast<Complex>().asDiagonal() * w.adjoint();
    // x = e1 q e2; its polar part identifies e2 with e1.
    Eigen::JacobiSVD<Matrix> svd(u1.adjoint() * qb * u2, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Matrix v_core = svd.matrixU() * svd.matrixV().adjoint();

    a_blocks.push_back(u1 * a_core * u1.adjoint());
    b_blocks.push_back(u1 * b_core * u1.adjoint());
    v_blocks.push_back(u1 * v_core * u2.adjoint());
    angles.push_back(std::move(theta));
  }

  return HalmosDecomposition{std::move(pq),
                             std::move(pqc),
                             std::move(pcq),
                             std::move(pcqc),
                             std::move(e1),
                             std::move(e2),
                             Element(shape, std::move(a_blocks)),
                             Element(shape, std::move(b_blocks)),
                             Element(shape, std::move(v_blocks)),
                             std::move(angles)};
}

ProjectionPair reconstruct(const HalmosDecomposition& d, const Tolerances& tol) {
  const Element& a = d.a;
  const Element& b = d.b;
  const Element& v = d.v;
  const Element ab = a * b;
  Element p = d.p_and_q.element() + d.p_and_qc.element() + d.e1.element();
  Element q = d.p_and_q.element() + d.pc_and_q.element() + a * a + ab * v + v.adjoint() * ab +
              v.adjoint() * (b * b) * v;
  return {canonicalize(p, tol), canonicalize(q, tol)};
}

bool ls_orthogonal(const Projection& p, const Projection& q, const Tolerances& tol) {
  require_same_shape(p.shape(), q.shape(), "ls_orthogonal");
  if (!meet(p, q, tol).is_zero()) return false;
  const HalmosDecomposition d = halmos_decompose(p, q, tol);
  for (std::size_t blk = 0; blk < d.e1.num_blocks(); ++blk) {
    const Matrix& u1 = d.e1.basis(blk);
    if (u1.cols() == 0) continue;
    const Matrix core = u1.adjoint() * d.b.block(blk) * u1;
    if (detail::min_eigenvalue(core) <= tol.rank_rel) return false;
  }
  return true;
}

bool ls_char_minimal_cover(const Projection& p, const Projection& q, int trials, std::uint64_t seed,
                           const Tolerances& tol) {
  require_same_shape(p.shape(), q.shape(), "ls_char_minimal_cover");
  if (!meet(p, q, tol).is_zero()) throw PreconditionViolated("ls_char_minimal_cover: p ∧ q ≠ 0");
  const Projection pq = join(p, q, tol);
  bool additive = true;
  for (std::size_t blk = 0; blk < p.num_blocks(); ++blk) {
    if (pq.ranks()[blk] != p.ranks()[blk] + q.ranks()[blk]) additive = false;
  }
  if (p.is_zero()) return additive;

  Rng rng(seed);
  std::vector<std::size_t> nonzero;
  for (std::size_t blk = 0; blk < p.num_blocks(); ++blk) {
    if (p.ranks()[blk] > 0) nonzero.push_back(blk);
  }
  for (int t = 0; t < trials; ++t) {
    std::vector<Index> ranks = p.ranks();
    const std::size_t drop = nonzero[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(nonzero.size()) - 1))];
    ranks[drop] = uniform_int(rng, 0, static_cast<int>(ranks[drop]) - 1);
    const Projection p0 = random_subprojection(p, ranks, rng);
    if (distance(join(p0, q, tol), pq) <= tol.proj_tol) return false;
  }
  return additive;
}

Element orthogonalizer(const Projection& p, const Projection& q, const Tolerances& tol) {
  if (!ls_orthogonal(p, q, tol)) throw NotLSOrthogonal("orthogonalizer: p is not LS-orthogonal to q");
  const HalmosDecomposition d = halmos_decompose(p, q, tol);
  std::vector<Matrix> b_inv_cores;
  for (std::size_t blk = 0; blk < d.e1.num_blocks(); ++blk) {
    const Matrix& u1 = d.e1.basis(blk);
    if (u1.cols() == 0) {
      b_inv_cores.emplace_back(0, 0);
      continue;
    }
    b_inv_cores.push_back(detail::hermitian_function(u1.adjoint() * d.b.block(blk) * u1,
                                                     [](double t) { return 1.0 / t; }));
  }
  const Element b_inv = embed(d.e1, b_inv_cores);
  const Element one = Element::identity(p.shape());
  return one - d.e2.element() - d.a * b_inv * d.v + d.v.adjoint() * b_inv * d.v;
}

Projection corner_witness_projection(const Element& x, const Projection& p, const Projection& q,
                                     const Tolerances& tol) {
  require_same_shape(x.shape(), p.shape(), "corner_witness_projection");
  require_same_shape(p.shape(), q.shape(), "corner_witness_projection");
  if ((p.element() * q.element()).norm() > tol.proj_tol) {
    throw PreconditionViolated("corner_witness_projection: p and q are not orthogonal");
  }
  if (p.ranks() != q.ranks()) {
    throw PreconditionViolated("corner_witness_projection: p and q are not equivalent");
  }
  if (distance(p.element() * x * q.element(), x) > tol.eq_tol) {
    throw PreconditionViolated("corner_witness_projection: x ≠ pxq");
  }
  if (x.norm() > 0.5 + tol.eq_tol) {
    throw PreconditionViolated("corner_witness_projection: ‖x‖ exceeds 1/2");
  }

  const PolarDecomposition polar = polar_decompose(x, tol);
  // Extend v by an equivalence between the parts of p and q that x misses.
  const Projection lx = left_support(x, tol);
  const Projection rx = right_support(x, tol);
  const Projection p_rest = canonicalize(p.element() - lx.element(), tol);
  const Projection q_rest = canonicalize(q.element() - rx.element(), tol);
  const auto rest = mv_equivalent(p_rest, q_rest);
  if (!rest) throw PreconditionViolated("corner_witness_projection: p and q are not equivalent");
  const Element v = polar.partial_isometry + *rest;

  // Functional calculus on |x*| inside range(p): a = arcsin(2t)/2.
  const Element abs_xstar = modulus(x.adjoint());
  std::vector<Matrix> c2, sc, s2;
  for (std::size_t blk = 0; blk < p.num_blocks(); ++blk) {
    const Matrix& up = p.basis(blk);
    const Index n = p.shape()[blk];
    if (up.cols() == 0) {
      c2.push_back(Matrix::Zero(n, n));
      sc.push_back(Matrix::Zero(n, n));
      s2.push_back(Matrix::Zero(n, n));
      continue;
    }
    const Matrix core = up.adjoint() * abs_xstar.block(blk) * up;
    auto angle = [](double t) { return 0.5 * std::asin(std::clamp(2.0 * t, 0.0, 1.0)); };
    c2.push_back(up * detail::hermitian_function(core, [&](double t) { return std::pow(std::cos(angle(t)), 2); }) *
                 up.adjoint());
    sc.push_back(up *
                 detail::hermitian_function(
                     core, [&](double t) { return std::sin(angle(t)) * std::cos(angle(t)); }) *
                 up.adjoint());
    s2.push_back(up * detail::hermitian_function(core, [&](double t) { return std::pow(std::sin(angle(t)), 2); }) *
                 up.adjoint());
  }
  const Shape& shape = p.shape();
  const Element cos2(shape, std::move(c2));
  const Element sincos(shape, std::move(sc));
  const Element sin2(shape, std::move(s2));
  const Element e = cos2 + v.adjoint() * sincos + sincos * v + v.adjoint() * sin2 * v;
  return canonicalize(e, tol);
}

}  // namespace projlat
