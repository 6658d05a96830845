#include "projlat/ring_isos.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "linalg.hpp"
#include "projlat/algebra.hpp"
#include "projlat/errors.hpp"
#include "projlat/lattice.hpp"
#include "projlat/sampling.hpp"

namespace projlat {

namespace {

Element block_unit(const Shape& shape, std::size_t block, Index i, Index j) {
  Element z = Element::zero(shape);
  std::vector<Matrix> blocks = z.blocks();
  blocks[block](i, j) = 1.0;
  return Element(shape, std::move(blocks));
}

Element block_identity(const Shape& shape, std::size_t block) {
  std::vector<Complex> values(shape.num_blocks(), 0.0);
  values[block] = 1.0;
  return Element::central(shape, values);
}

Element conjugate_blocks(const Element& x, const std::vector<bool>& flags) {
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < x.num_blocks(); ++b) {
    blocks.push_back(flags[b] ? Matrix(x.block(b).conjugate()) : x.block(b));
  }
  return Element(x.shape(), std::move(blocks));
}

void check_real_linear(const RingMap& psi, const Shape& shape, std::size_t samples, Rng& rng, const Tolerances& tol) {
  const double scalars[] = {3.0 / 7.0, -2.0, std::numbers::sqrt2, std::numbers::pi};
  for (std::size_t k = 0; k < std::max<std::size_t>(samples, 4); ++k) {
    const double r = k < 4 ? scalars[k] : uniform(rng, -3.0, 3.0);
    const double s = k < 4 ? scalars[3 - k] : uniform(rng, -3.0, 3.0);
    const Element x = random_element(shape, rng);
    const Element y = random_element(shape, rng);
    const Element lhs = psi(Complex(r) * x + Complex(s) * y);
    const Element rhs = Complex(r) * psi(x) + Complex(s) * psi(y);
    const double scale = std::max(1.0, rhs.norm());
    if (distance(lhs, rhs) > tol.eq_tol * scale) {
      throw NotRealLinear("Ψ(rx + sy) ≠ rΨ(x) + sΨ(y) for r = " + std::to_string(r) + ", s = " + std::to_string(s));
    }
  }
}

}  // namespace

Projection classify_linearity(const RingMap& psi, const Shape& shape, const Tolerances& tol) {
  const Element z = psi(Element::scalar(shape, Complex(0.0, 1.0)));
  const Element one = Element::identity(z.shape());
  const double scale = std::max(1.0, z.norm());
  if (!is_central(z, Tolerances{tol.rank_rel, tol.proj_tol, tol.eq_tol * scale})) {
    throw NotRingIso("Ψ(i) is not central");
  }
  if (distance(z * z, -one) > tol.eq_tol * scale * scale) throw NotRingIso("Ψ(i)² ≠ −1");
  // Ψ(i) = qi − q⊥i  ⇒  q = (1 − iΨ(i))/2
  const Element q = Complex(0.5) * (one - Complex(0.0, 1.0) * z);
  try {
    return canonicalize(q, tol);
  } catch (const NotAProjection&) {
    throw NotRingIso("Ψ(i) is not of the form qi − q⊥i");
  }
}

Element RingIsoFactorization::psi0(const Element& x) const {
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < y.num_blocks(); ++b) {
    const Matrix& xb = x.block(source_block[b]);
    blocks.push_back(kind[b] == BlockKind::conjugate_linear ? Matrix(xb.conjugate()) : xb);
  }
  return Element(y.shape(), std::move(blocks));
}

RingIsoFactorization inner_factor(const RingMap& psi, const Shape& shape, std::size_t samples, std::uint64_t seed,
                                  const Tolerances& tol) {
  Rng rng(seed);
  check_real_linear(psi, shape, samples, rng, tol);
  const Projection q = classify_linearity(psi, shape, tol);
  const Shape& target = q.shape();
  if (target.num_blocks() != shape.num_blocks()) throw NotRingIso("source and target have different block counts");

  // Block matching through the central supports of Ψ(1_a).
  std::vector<std::size_t> source_block(target.num_blocks(), shape.num_blocks());
  for (std::size_t a = 0; a < shape.num_blocks(); ++a) {
    const Element image = psi(block_identity(shape, a));
    Projection support = left_support(image, tol);
    std::size_t hits = 0;
    for (std::size_t b = 0; b < target.num_blocks(); ++b) {
      if (support.ranks()[b] == 0) continue;
      if (support.ranks()[b] != target[b] || target[b] != shape[a] || source_block[b] != shape.num_blocks()) {
        throw NotRingIso("Ψ does not map the summands of the source onto summands of the target");
      }
      source_block[b] = a;
      ++hits;
    }
    if (hits != 1) throw NotRingIso("Ψ(1_b) is not a minimal central projection");
  }

  std::vector<BlockKind> kind;
  std::vector<bool> conj_source(shape.num_blocks(), false);
  for (std::size_t b = 0; b < target.num_blocks(); ++b) {
    const bool linear = q.ranks()[b] == target[b];
    kind.push_back(linear ? BlockKind::linear : BlockKind::conjugate_linear);
    conj_source[source_block[b]] = !linear;
  }
  const RingMap linear_psi = [&psi, conj_source](const Element& x) { return psi(conjugate_blocks(x, conj_source)); };

  std::vector<Matrix> ys;
  for (std::size_t b = 0; b < target.num_blocks(); ++b) {
    const std::size_t a = source_block[b];
    const Index n = target[b];
    auto f = [&](Index i, Index j) { return Matrix(linear_psi(block_unit(shape, a, i, j)).block(b)); };
    const Matrix f11 = f(0, 0);
    const double f11_norm = detail::op_norm(f11);
    if (!(f11_norm > 0.0)) throw DegenerateWitness("Ψ(e11) vanishes in block " + std::to_string(b));
    Eigen::VectorXcd xi = Eigen::VectorXcd::Zero(n);
    bool found = false;
    for (Index k = 0; k < n && !found; ++k) {
      if (f11.col(k).norm() > tol.rank_rel * f11_norm) {
        xi(k) = 1.0;
        found = true;
      }
    }
    if (!found) {
      Eigen::JacobiSVD<Matrix> svd(f11, Eigen::ComputeFullV);
      xi = svd.matrixV().col(0);
    }
    Matrix y(n, n);
    for (Index j = 0; j < n; ++j) y.col(j) = f(j, 0) * xi;
    Index r = 0, c = 0;
    y.cwiseAbs().maxCoeff(&r, &c);
    const Complex top = y(r, c);
    if (std::abs(top) == 0.0) throw DegenerateWitness("Skolem–Noether witness vanishes in block " + std::to_string(b));
    y *= std::conj(top) / std::abs(top);
    ys.push_back(std::move(y));
  }

  RingIsoFactorization out{q, Element(target, std::move(ys)), std::move(kind), std::move(source_block), 0.0};
  Element y_inv = Element::zero(target);
  try {
    y_inv = invert(out.y, tol);
  } catch (const NotInvertible&) {
    throw DegenerateWitness("Skolem–Noether witness y is singular");
  }
  for (std::size_t k = 0; k < samples; ++k) {
    const Element x = random_element(shape, rng);
    out.residual = std::max(out.residual, distance(psi(x), out.y * out.psi0(x) * y_inv));
  }
  return out;
}

bool DyeResult::passed() const {
  return std::all_of(certificate.begin(), certificate.end(), [](const CertificateEntry& e) { return e.passed; });
}

DyeResult dye_extension(const LatticeMap& phi, std::size_t samples, std::uint64_t seed, const Tolerances& tol) {
  const OrthogonalityReport orth = preserves_orthogonality(phi, samples, seed, tol);
  if (!orth.preserved) {
    throw OrthogonalityNotPreserved("Φ does not preserve orthogonality: " + orth.description,
                                    std::make_shared<const Projection>(*orth.witness_p),
                                    std::make_shared<const Projection>(*orth.witness_q));
  }
  CoordinatizationResult coord = coordinatize(phi, samples, seed, tol);
  const RingMap Psi = coord.Psi;
  const Shape& shape = phi.source();
  Rng rng(seed ^ 0x5bd1e995ULL);

  double projections = 0.0, adjoints = 0.0, order = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const Projection p = random_projection(shape, rng);
    const Element image = Psi(p.element());
    projections = std::max(projections, distance(image, phi(p).element()));
    projections = std::max(projections, distance(image * image, image));

    const Element x = random_element(shape, rng);
    adjoints = std::max(adjoints, distance(Psi(x.adjoint()), Psi(x).adjoint()) / std::max(1.0, x.norm()));

    const Element h = random_hermitian(shape, rng);
    const Element g = random_element(shape, rng);
    const Element k_ = h + g.adjoint() * g;
    order = std::max(order, std::max(0.0, -min_eigenvalue(Psi(k_) - Psi(h))));
  }
  const double unit = distance(Psi(Element::identity(shape)), Element::identity(phi.target()));

  DyeResult out{Psi, std::move(coord), {}};
  out.certificate.push_back({"Psi(p) = Phi(p) is a projection", projections, projections <= tol.proj_tol});
  out.certificate.push_back({"Psi(x*) = Psi(x)*", adjoints, adjoints <= tol.eq_tol});
  out.certificate.push_back({"h <= k implies Psi(h) <= Psi(k)", order, order <= tol.eq_tol});
  out.certificate.push_back({"Psi(1) = 1", unit, unit <= tol.eq_tol});
  return out;
}

}  // namespace projlat
