#include "projlat/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "linalg.hpp"
#include "projlat/errors.hpp"

namespace projlat {

Projection left_support(const Element& x, const Tolerances& tol) {
  std::vector<Matrix> bases;
  bases.reserve(x.num_blocks());
  const double scale = x.norm();
  for (const auto& b : x.blocks()) bases.push_back(detail::range_basis(b, tol.rank_rel, scale));
  return Projection::from_bases(x.shape(), std::move(bases));
}

Projection right_support(const Element& x, const Tolerances& tol) {
  return left_support(x.adjoint(), tol);
}

Element invert(const Element& x, const Tolerances& tol) {
  std::vector<Matrix> out;
  out.reserve(x.num_blocks());
  for (std::size_t i = 0; i < x.num_blocks(); ++i) {
    Eigen::JacobiSVD<Matrix> svd(x.block(i), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smax = s(0);
    const double smin = s(s.size() - 1);
    if (!(smax > 0.0) || smin <= tol.rank_rel * smax) throw NotInvertible(i, smin);
    Eigen::VectorXd inv = s.cwiseInverse();
    out.push_back(svd.matrixV() * inv.cast<Complex>().asDiagonal() * svd.matrixU().adjoint());
  }
  return Element(x.shape(), std::move(out));
}

PolarDecomposition polar_decompose(const Element& x, const Tolerances& tol) {
  std::vector<Matrix> vs, mods;
  const double scale = x.norm();
  for (const auto& b : x.blocks()) {
    Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cutoff = tol.rank_rel * std::max(s.size() ? s(0) : 0.0, scale);
    Index r = 0;
    if (cutoff > 0.0) {
      while (r < s.size() && s(r) > cutoff) ++r;
    }
    vs.push_back(svd.matrixU().leftCols(r) * svd.matrixV().leftCols(r).adjoint());
    mods.push_back(detail::hermitian_part(svd.matrixV() * s.cast<Complex>().asDiagonal() *
                                          svd.matrixV().adjoint()));
  }
  return {Element(x.shape(), std::move(vs)), Element(x.shape(), std::move(mods))};
}

Element modulus(const Element& x) {
  return x.map_blocks([](const Matrix& b) -> Matrix {
    return detail::hermitian_function(b.adjoint() * b, [](double t) { return std::sqrt(std::max(t, 0.0)); });
  });
}

Element center_valued_norm(const Element& x) {
  std::vector<Complex> values;
  for (double n : x.block_norms()) values.emplace_back(n, 0.0);
  return Element::central(x.shape(), values);
}

bool is_central(const Element& x, const Tolerances& tol) {
  for (const auto& b : x.blocks()) {
    const Complex c = b.trace() / static_cast<double>(b.rows());
    if (detail::op_norm(b - c * detail::identity(b.rows())) > tol.eq_tol) return false;
  }
  return true;
}

double min_eigenvalue(const Element& h) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& b : h.blocks()) best = std::min(best, detail::min_eigenvalue(b));
  return best;
}

bool psd_leq(const Element& a, const Element& b, double slack) {
  return min_eigenvalue(b - a) >= -slack;
}

double condition_number(const Element& x) {
  double smax = 0.0;
  double smin = std::numeric_limits<double>::infinity();
  for (const auto& b : x.blocks()) {
    Eigen::JacobiSVD<Matrix> svd(b);
    const auto& s = svd.singularValues();
    smax = std::max(smax, s(0));
    smin = std::min(smin, s(s.size() - 1));
  }
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

}  // namespace projlat
