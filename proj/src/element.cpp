#include "projlat/element.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "linalg.hpp"
#include "projlat/errors.hpp"

namespace projlat {

Shape::Shape(std::vector<Index> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw ShapeMismatch("shape must have at least one block");
  for (Index n : blocks_) {
    if (n < 1) throw ShapeMismatch("shape block sizes must be positive");
  }
}

Shape Shape::parse(std::string_view text) {
  std::vector<Index> blocks;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw ParseError("bad shape token '" + token + "'");
    }
    if (used != token.size()) throw ParseError("bad shape token '" + token + "'");
    blocks.push_back(static_cast<Index>(v));
    token.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      token.push_back(c);
    } else if (c == ',' || std::isspace(static_cast<unsigned char>(c)) || c == '[' || c == ']') {
      flush();
    } else {
      throw ParseError(std::string("unexpected character in shape: ") + c);
    }
  }
  flush();
  try {
    return Shape(std::move(blocks));
  } catch (const ShapeMismatch& e) {
    throw ParseError(e.what());
  }
}

Index Shape::total_dim() const {
  Index total = 0;
  for (Index n : blocks_) total += n;
  return total;
}

std::string Shape::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) os << ',';
    os << blocks_[i];
  }
  os << ']';
  return os.str();
}

void require_same_shape(const Shape& a, const Shape& b, std::string_view context) {
  if (!(a == b)) {
    throw ShapeMismatch(std::string(context) + ": shape " + a.to_string() + " vs " + b.to_string());
  }
}

Element::Element(Shape shape, std::vector<Matrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  if (blocks_.size() != shape_.num_blocks()) {
    throw ShapeMismatch("element has " + std::to_string(blocks_.size()) + " blocks, shape " +
                        shape_.to_string() + " expects " + std::to_string(shape_.num_blocks()));
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Index n = shape_[i];
    if (blocks_[i].rows() != n || blocks_[i].cols() != n) {
      throw ShapeMismatch("block " + std::to_string(i) + " is not " + std::to_string(n) + "x" +
                          std::to_string(n));
    }
    if (!blocks_[i].allFinite()) {
      throw PreconditionViolated("block " + std::to_string(i) + " has non-finite entries");
    }
  }
}

Element Element::zero(const Shape& shape) {
  std::vector<Matrix> blocks;
  for (Index n : shape.blocks()) blocks.push_back(Matrix::Zero(n, n));
  return Element(shape, std::move(blocks));
}

Element Element::identity(const Shape& shape) { return scalar(shape, 1.0); }

Element Element::scalar(const Shape& shape, Complex value) {
  std::vector<Matrix> blocks;
  for (Index n : shape.blocks()) blocks.push_back(value * detail::identity(n));
  return Element(shape, std::move(blocks));
}

Element Element::central(const Shape& shape, const std::vector<Complex>& values) {
  if (values.size() != shape.num_blocks()) {
    throw ShapeMismatch("central element needs one value per block");
  }
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < values.size(); ++i) {
    blocks.push_back(values[i] * detail::identity(shape[i]));
  }
  return Element(shape, std::move(blocks));
}

Element Element::map_blocks(const std::function<Matrix(const Matrix&)>& f) const {
  std::vector<Matrix> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(f(b));
  return Element(shape_, std::move(out));
}

Element Element::adjoint() const {
  return map_blocks([](const Matrix& m) -> Matrix { return m.adjoint(); });
}

Element Element::conjugate() const {
  return map_blocks([](const Matrix& m) -> Matrix { return m.conjugate(); });
}

Element Element::transpose() const {
  return map_blocks([](const Matrix& m) -> Matrix { return m.transpose(); });
}

std::vector<double> Element::block_norms() const {
  std::vector<double> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(detail::op_norm(b));
  return out;
}

double Element::norm() const {
  double best = 0.0;
  for (double v : block_norms()) best = std::max(best, v);
  return best;
}

Matrix Element::dense() const {
  const Index n = shape_.total_dim();
  Matrix out = Matrix::Zero(n, n);
  Index offset = 0;
  for (const auto& b : blocks_) {
    out.block(offset, offset, b.rows(), b.cols()) = b;
    offset += b.rows();
  }
  return out;
}

namespace {

template <typename Op>
Element zip(const Element& a, const Element& b, std::string_view what, Op op) {
  require_same_shape(a.shape(), b.shape(), what);
  std::vector<Matrix> out;
  out.reserve(a.num_blocks());
  for (std::size_t i = 0; i < a.num_blocks(); ++i) out.push_back(op(a.block(i), b.block(i)));
  return Element(a.shape(), std::move(out));
}

}  // namespace

Element operator+(const Element& a, const Element& b) {
  return zip(a, b, "add", [](const Matrix& x, const Matrix& y) -> Matrix { return x + y; });
}

Element operator-(const Element& a, const Element& b) {
  return zip(a, b, "subtract", [](const Matrix& x, const Matrix& y) -> Matrix { return x - y; });
}

Element operator-(const Element& a) {
  return a.map_blocks([](const Matrix& m) -> Matrix { return -m; });
}

Element operator*(const Element& a, const Element& b) {
  return zip(a, b, "multiply", [](const Matrix& x, const Matrix& y) -> Matrix { return x * y; });
}

Element operator*(Complex s, const Element& a) {
  return a.map_blocks([s](const Matrix& m) -> Matrix { return s * m; });
}

Element operator*(const Element& a, Complex s) { return s * a; }

double distance(const Element& a, const Element& b) { return (a - b).norm(); }

}  // namespace projlat
