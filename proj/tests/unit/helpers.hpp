#pragma once

#include <initializer_list>

#include "doctest.h"
#include "oracles.hpp"
#include "projlat/element.hpp"
#include "projlat/projection.hpp"

namespace testing {

using projlat::Complex;
using projlat::Element;
using projlat::Matrix;
using projlat::Projection;
using projlat::Shape;

inline Matrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const Complex& v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Element el(std::initializer_list<Matrix> blocks) {
  std::vector<Eigen::Index> sizes;
  for (const Matrix& b : blocks) sizes.push_back(b.rows());
  return Element(Shape(sizes), std::vector<Matrix>(blocks));
}

inline Element el(const Matrix& m) { return el({m}); }

inline Projection proj(const Element& x) { return projlat::canonicalize(x); }
inline Projection proj(const Matrix& m) { return proj(el(m)); }

inline Matrix diag(std::initializer_list<Complex> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (const Complex& v : d) m(i, i) = v, ++i;
  return m;
}

inline void check_close(const Element& a, const Element& b, double tol) {
  REQUIRE(a.shape() == b.shape());
  CHECK(oracle::op_distance(a, b) <= tol);
}

inline void check_close(const Projection& a, const Element& b, double tol) { check_close(a.element(), b, tol); }
inline void check_close(const Projection& a, const Projection& b, double tol) {
  check_close(a.element(), b.element(), tol);
}

}  // namespace testing
