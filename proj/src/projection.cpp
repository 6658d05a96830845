#include "projlat/projection.hpp"

#include <cmath>
#include <sstream>

#include "linalg.hpp"
#include "projlat/errors.hpp"

namespace projlat {

namespace {

constexpr double kLowBand = 0.1;
constexpr double kHighBand = 0.9;

Matrix outer(const Matrix& u) {
  Matrix p = u * u.adjoint();
  return detail::hermitian_part(p);
}

}  // namespace

Projection::Projection(Element element, std::vector<Matrix> bases, std::vector<Matrix> complements)
    : element_(std::move(element)), bases_(std::move(bases)), complements_(std::move(complements)) {
  ranks_.reserve(bases_.size());
  for (const auto& b : bases_) ranks_.push_back(b.cols());
}

Projection Projection::from_bases(const Shape& shape, std::vector<Matrix> bases) {
  if (bases.size() != shape.num_blocks()) {
    throw ShapeMismatch("projection needs one basis per block");
  }
  std::vector<Matrix> blocks, complements;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (bases[i].rows() != shape[i] || bases[i].cols() > shape[i]) {
      throw ShapeMismatch("range basis of block " + std::to_string(i) + " has wrong size");
    }
    blocks.push_back(outer(bases[i]));
    complements.push_back(detail::complement_basis(bases[i], shape[i]));
  }
  return Projection(Element(shape, std::move(blocks)), std::move(bases), std::move(complements));
}

Projection Projection::zero(const Shape& shape) {
  std::vector<Matrix> bases;
  for (Index n : shape.blocks()) bases.emplace_back(n, 0);
  return from_bases(shape, std::move(bases));
}

Projection Projection::one(const Shape& shape) {
  std::vector<Matrix> bases;
  for (Index n : shape.blocks()) bases.push_back(detail::identity(n));
  return from_bases(shape, std::move(bases));
}

Index Projection::total_rank() const {
  Index total = 0;
  for (Index r : ranks_) total += r;
  return total;
}

Projection Projection::complement() const {
  std::vector<Matrix> blocks;
  for (const auto& c : complements_) blocks.push_back(outer(c));
  return Projection(Element(shape(), std::move(blocks)), complements_, bases_);
}

Projection canonicalize(const Element& x, const Tolerances& tol) {
  std::vector<Matrix> bases;
  bases.reserve(x.num_blocks());
  for (std::size_t i = 0; i < x.num_blocks(); ++i) {
    const Matrix& b = x.block(i);
    const double defect = detail::op_norm(b - b.adjoint());
    if (defect > tol.proj_tol) {
      std::ostringstream os;
      os << "block " << i << " is not Hermitian (defect " << defect << ")";
      throw NotAProjection(os.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(detail::hermitian_part(b));
    const auto& vals = es.eigenvalues();
    std::vector<Index> keep;
    for (Index k = 0; k < vals.size(); ++k) {
      const double v = vals(k);
      if (v >= -kLowBand && v <= kLowBand) continue;
      if (v >= kHighBand && v <= 1.0 + kLowBand) {
        keep.push_back(k);
        continue;
      }
      std::ostringstream os;
      os << "block " << i << " has eigenvalue " << v << " outside the projection guard bands";
      throw NotAProjection(os.str());
    }
    Matrix u(b.rows(), static_cast<Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) u.col(static_cast<Index>(c)) = es.eigenvectors().col(keep[c]);
    bases.push_back(std::move(u));
  }
  return Projection::from_bases(x.shape(), std::move(bases));
}

bool is_projection(const Element& x, const Tolerances& tol) {
  for (const auto& b : x.blocks()) {
    if (detail::op_norm(b - b.adjoint()) > tol.proj_tol) return false;
    if (detail::op_norm(b * b - b) > tol.proj_tol) return false;
  }
  return true;
}

double distance(const Projection& p, const Projection& q) { return distance(p.element(), q.element()); }

}  // namespace projlat
