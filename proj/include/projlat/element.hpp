#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace projlat {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Block sizes of a finite direct sum of full matrix algebras M_{n_1} + ... + M_{n_k}.
class Shape {
 public:
  explicit Shape(std::vector<Index> blocks);
  Shape(std::initializer_list<Index> blocks) : Shape(std::vector<Index>(blocks)) {}

  /// Parses "3,3" or "[3, 3]".
  static Shape parse(std::string_view text);

  const std::vector<Index>& blocks() const { return blocks_; }
  std::size_t num_blocks() const { return blocks_.size(); }
  Index operator[](std::size_t i) const { return blocks_[i]; }
  Index total_dim() const;

  std::string to_string() const;

  bool operator==(const Shape& other) const = default;

 private:
  std::vector<Index> blocks_;
};

/// An element of a finite-dimensional von Neumann algebra, stored block by block.
///
/// Elements are immutable values; every operation returns a fresh element.
class Element {
 public:
  /// Validates that block sizes match `shape` and that every entry is finite.
  Element(Shape shape, std::vector<Matrix> blocks);

  static Element zero(const Shape& shape);
  static Element identity(const Shape& shape);
  static Element scalar(const Shape& shape, Complex value);
  /// Central element whose block i equals values[i] times the identity.
  static Element central(const Shape& shape, const std::vector<Complex>& values);

  const Shape& shape() const { return shape_; }
  std::size_t num_blocks() const { return blocks_.size(); }
  const Matrix& block(std::size_t i) const { return blocks_[i]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  Element adjoint() const;
  /// Entrywise complex conjugation.
  Element conjugate() const;
  Element transpose() const;

  /// Operator norm, the maximum of the per-block largest singular values.
  double norm() const;
  std::vector<double> block_norms() const;

  /// Block-diagonal dense representation of size total_dim.
  Matrix dense() const;

  Element map_blocks(const std::function<Matrix(const Matrix&)>& f) const;

 private:
  Shape shape_;
  std::vector<Matrix> blocks_;
};

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator-(const Element& a);
Element operator*(const Element& a, const Element& b);
Element operator*(Complex s, const Element& a);
Element operator*(const Element& a, Complex s);

/// Operator-norm distance ‖a − b‖.
double distance(const Element& a, const Element& b);

/// Throws ShapeMismatch unless the shapes agree.
void require_same_shape(const Shape& a, const Shape& b, std::string_view context);

}  // namespace projlat
