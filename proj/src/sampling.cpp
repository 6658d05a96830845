#include "projlat/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "linalg.hpp"
#include "projlat/errors.hpp"

namespace projlat {

namespace {

Matrix gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  return m;
}

Matrix haar_unitary(Index n, Rng& rng) {
  Matrix z = gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * detail::identity(n);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

}  // namespace

double uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  return dist(rng);
}

Element random_element(const Shape& shape, Rng& rng, double scale) {
  std::vector<Matrix> blocks;
  for (Index n : shape.blocks()) blocks.push_back(scale * gaussian(n, n, rng));
  return Element(shape, std::move(blocks));
}

Element random_hermitian(const Shape& shape, Rng& rng) {
  return random_element(shape, rng).map_blocks(
      [](const Matrix& m) -> Matrix { return detail::hermitian_part(m); });
}

Element random_unitary(const Shape& shape, Rng& rng) {
  std::vector<Matrix> blocks;
  for (Index n : shape.blocks()) blocks.push_back(haar_unitary(n, rng));
  return Element(shape, std::move(blocks));
}

Element random_invertible(const Shape& shape, Rng& rng, double max_cond) {
  if (!(max_cond >= 1.0)) throw PreconditionViolated("random_invertible: max_cond must be ≥ 1");
  const double log_max = std::log(max_cond);
  std::vector<Matrix> blocks;
  for (Index n : shape.blocks()) {
    Eigen::VectorXd s(n);
    for (Index i = 0; i < n; ++i) s(i) = std::exp(uniform(rng, 0.0, log_max));
    Matrix u = haar_unitary(n, rng);
    Matrix v = haar_unitary(n, rng);
    blocks.push_back(u * s.cast<Complex>().asDiagonal() * v.adjoint());
  }
  return Element(shape, std::move(blocks));
}

Element random_central(const Shape& shape, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> values;
  for (std::size_t i = 0; i < shape.num_blocks(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    values.emplace_back(re, im);
  }
  return Element::central(shape, values);
}

Projection random_projection_with_ranks(const Shape& shape, const std::vector<Index>& ranks, Rng& rng) {
  if (ranks.size() != shape.num_blocks()) throw ShapeMismatch("random_projection: one rank per block");
  std::vector<Matrix> bases;
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    if (ranks[b] < 0 || ranks[b] > shape[b]) throw ShapeMismatch("random_projection: rank out of range");
    bases.push_back(haar_unitary(shape[b], rng).leftCols(ranks[b]));
  }
  return Projection::from_bases(shape, std::move(bases));
}

Projection random_projection(const Shape& shape, Rng& rng) {
  std::vector<Index> ranks;
  for (Index n : shape.blocks()) ranks.push_back(uniform_int(rng, 0, static_cast<int>(n)));
  return random_projection_with_ranks(shape, ranks, rng);
}

Projection random_subprojection(const Projection& p, const std::vector<Index>& ranks, Rng& rng) {
  if (ranks.size() != p.num_blocks()) throw ShapeMismatch("random_subprojection: one rank per block");
  std::vector<Matrix> bases;
  for (std::size_t b = 0; b < p.num_blocks(); ++b) {
    const Index r = p.ranks()[b];
    if (ranks[b] < 0 || ranks[b] > r) throw ShapeMismatch("random_subprojection: rank out of range");
    if (r == 0) {
      bases.emplace_back(p.shape()[b], 0);
      continue;
    }
    bases.push_back(p.basis(b) * haar_unitary(r, rng).leftCols(ranks[b]));
  }
  return Projection::from_bases(p.shape(), std::move(bases));
}

Projection random_subprojection(const Projection& p, Rng& rng) {
  std::vector<Index> ranks;
  for (Index r : p.ranks()) ranks.push_back(uniform_int(rng, 0, static_cast<int>(r)));
  return random_subprojection(p, ranks, rng);
}

AnglePair random_pair_with_angles(const Shape& shape, Rng& rng, double min_angle) {
  const double half_pi = std::numbers::pi / 2.0;
  const double log_lo = std::log(min_angle);
  const double log_hi = std::log(half_pi);
  std::vector<Matrix> pb, qb;
  std::vector<std::vector<double>> angles;
  for (Index n : shape.blocks()) {
    const Index r = n / 2;
    Matrix u = haar_unitary(n, rng);
    std::vector<double> theta;
    Matrix qbasis(n, r);
    for (Index i = 0; i < r; ++i) {
      double t = std::exp(uniform(rng, log_lo, log_hi));
      t = std::min(t, half_pi * (1.0 - 1e-3));
      theta.push_back(t);
      qbasis.col(i) = std::cos(t) * u.col(i) + std::sin(t) * u.col(r + i);
    }
    std::sort(theta.begin(), theta.end());
    pb.push_back(u.leftCols(r));
    qb.push_back(qbasis);
    angles.push_back(std::move(theta));
  }
  return {Projection::from_bases(shape, std::move(pb)), Projection::from_bases(shape, std::move(qb)),
          std::move(angles)};
}

}  // namespace projlat
