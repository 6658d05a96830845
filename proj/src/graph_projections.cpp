#include "projlat/graph_projections.hpp"

#include <cmath>

#include "linalg.hpp"
#include "projlat/errors.hpp"
#include "projlat/lattice.hpp"
#include "projlat/pair_geometry.hpp"

namespace projlat {

namespace {

Shape corner_shape(const Shape& ambient) {
  std::vector<Index> k;
  for (Index n : ambient.blocks()) {
    if (n % 3 != 0) {
      throw NotAFrame("block size " + std::to_string(n) + " is not divisible by 3");
    }
    k.push_back(n / 3);
  }
  return Shape(std::move(k));
}

void check_index(int i) {
  if (i < 1 || i > 3) throw NotAFrame("frame index must be 1, 2 or 3");
}

}  // namespace

ThreeFrame::ThreeFrame(Element basis, Shape corner, std::vector<Projection> diagonal)
    : basis_(std::move(basis)), corner_(std::move(corner)), diagonal_(std::move(diagonal)) {}

ThreeFrame ThreeFrame::from_basis(const Element& basis, const Tolerances& tol) {
  Shape corner = corner_shape(basis.shape());
  for (std::size_t b = 0; b < basis.num_blocks(); ++b) {
    const Matrix& u = basis.block(b);
    if (detail::op_norm(u.adjoint() * u - detail::identity(u.cols())) > tol.eq_tol) {
      throw NotAFrame("frame basis of block " + std::to_string(b) + " is not unitary");
    }
  }
  std::vector<Projection> diagonal;
  for (int i = 0; i < 3; ++i) {
    std::vector<Matrix> bases;
    for (std::size_t b = 0; b < basis.num_blocks(); ++b) {
      const Index k = corner[b];
      bases.push_back(basis.block(b).middleCols(i * k, k));
    }
    diagonal.push_back(Projection::from_bases(basis.shape(), std::move(bases)));
  }
  return ThreeFrame(basis, std::move(corner), std::move(diagonal));
}

const Projection& ThreeFrame::e(int i) const {
  check_index(i);
  return diagonal_[static_cast<std::size_t>(i - 1)];
}

Matrix ThreeFrame::isometry(std::size_t block, int i) const {
  check_index(i);
  const Index k = corner_[block];
  return basis_.block(block).middleCols((i - 1) * k, k);
}

Element ThreeFrame::unit(int i, int j) const {
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < basis_.num_blocks(); ++b) {
    blocks.push_back(isometry(b, i) * isometry(b, j).adjoint());
  }
  return Element(ambient(), std::move(blocks));
}

Element ThreeFrame::embed(const Element& corner_x, int i, int j) const {
  require_same_shape(corner_x.shape(), corner_, "frame embed");
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < basis_.num_blocks(); ++b) {
    blocks.push_back(isometry(b, i) * corner_x.block(b) * isometry(b, j).adjoint());
  }
  return Element(ambient(), std::move(blocks));
}

Element ThreeFrame::coordinate(const Element& x, int i, int j) const {
  require_same_shape(x.shape(), ambient(), "frame coordinate");
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < basis_.num_blocks(); ++b) {
    blocks.push_back(isometry(b, i).adjoint() * x.block(b) * isometry(b, j));
  }
  return Element(corner_, std::move(blocks));
}

Element ThreeFrame::assemble(const std::vector<Element>& entries) const {
  if (entries.size() != 9) throw ShapeMismatch("frame assemble needs nine entries");
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < basis_.num_blocks(); ++b) {
    const Index k = corner_[b];
    Matrix coords(3 * k, 3 * k);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const Element& e = entries[static_cast<std::size_t>(3 * i + j)];
        require_same_shape(e.shape(), corner_, "frame assemble");
        coords.block(i * k, j * k, k, k) = e.block(b);
      }
    }
    const Matrix& u = basis_.block(b);
    blocks.push_back(u * coords * u.adjoint());
  }
  return Element(ambient(), std::move(blocks));
}

ThreeFrame standard_frame(const Shape& shape) {
  for (Index n : shape.blocks()) {
    if (n % 3 != 0) {
      throw NotOrderThree("shape " + shape.to_string() + " has a block of size " + std::to_string(n) +
                          ", which admits no 3×3 frame");
    }
  }
  return ThreeFrame::from_basis(Element::identity(shape));
}

int slot_from(Slot s) {
  switch (s) {
    case Slot::s12: return 1;
    case Slot::s13: return 1;
    case Slot::s23: return 2;
    case Slot::s21: return 2;
  }
  return 1;
}

int slot_to(Slot s) {
  switch (s) {
    case Slot::s12: return 2;
    case Slot::s13: return 3;
    case Slot::s23: return 3;
    case Slot::s21: return 1;
  }
  return 2;
}

std::string to_string(Slot s) {
  return std::to_string(slot_from(s)) + std::to_string(slot_to(s));
}

Projection graph_projection(const ThreeFrame& frame, const Element& x, Slot slot) {
  require_same_shape(x.shape(), frame.corner(), "graph_projection");
  const int i = slot_from(slot);
  const int j = slot_to(slot);
  std::vector<Matrix> bases;
  for (std::size_t b = 0; b < x.num_blocks(); ++b) {
    const Matrix& xb = x.block(b);
    const Matrix inv_sqrt =
        detail::hermitian_function(xb.adjoint() * xb, [](double t) { return 1.0 / std::sqrt(1.0 + std::max(t, 0.0)); });
    bases.push_back(frame.isometry(b, i) * inv_sqrt + frame.isometry(b, j) * (xb * inv_sqrt));
  }
  return Projection::from_bases(frame.ambient(), std::move(bases));
}

bool is_slot_graph_projection(const ThreeFrame& frame, const Projection& q, Slot slot, const Tolerances& tol) {
  require_same_shape(q.shape(), frame.ambient(), "is_slot_graph_projection");
  const Projection& e_from = frame.e(slot_from(slot));
  const Projection& e_to = frame.e(slot_to(slot));
  const Projection target = join(e_from, e_to, tol);
  const Projection covered = join(q, e_to, tol);
  if (covered.ranks() != target.ranks() || distance(covered, target) > tol.proj_tol) return false;
  return ls_orthogonal(q, e_to, tol);
}

Element recover_operator(const ThreeFrame& frame, const Projection& q, Slot slot, const Tolerances& tol) {
  if (!is_slot_graph_projection(frame, q, slot, tol)) {
    throw NotAGraphProjection("projection is not a graph projection in slot " + to_string(slot));
  }
  const int i = slot_from(slot);
  const int j = slot_to(slot);
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < q.num_blocks(); ++b) {
    const Matrix& basis = q.basis(b);
    if (basis.cols() != frame.corner()[b]) {
      throw NotAGraphProjection("graph projection has rank " + std::to_string(basis.cols()) + " in block " +
                                std::to_string(b));
    }
    const Matrix from = frame.isometry(b, i).adjoint() * basis;
    const Matrix to = frame.isometry(b, j).adjoint() * basis;
    // x · from = to  ⇔  from* x* = to*
    Matrix x_adj = from.adjoint().fullPivLu().solve(to.adjoint());
    blocks.push_back(x_adj.adjoint());
  }
  return Element(frame.corner(), std::move(blocks));
}

Projection lattice_product(const ThreeFrame& frame, const Element& x, const Element& y, const Tolerances& tol) {
  const Projection left = join(graph_projection(frame, -x, Slot::s23), graph_projection(frame, y, Slot::s12), tol);
  return meet(left, join(frame.e(1), frame.e(3), tol), tol);
}

Projection lattice_sum(const ThreeFrame& frame, const Element& x, const Element& y, const Tolerances& tol) {
  const Element one = Element::identity(frame.corner());
  const Projection p13_one = graph_projection(frame, one, Slot::s13);
  const Projection f = meet(join(graph_projection(frame, x, Slot::s12), frame.e(3), tol), join(p13_one, frame.e(2), tol), tol);
  const Projection g = meet(join(graph_projection(frame, y, Slot::s12), p13_one, tol), join(frame.e(2), frame.e(3), tol), tol);
  return meet(join(f, g, tol), join(frame.e(1), frame.e(2), tol), tol);
}

Projection graph_pair_projection(const ThreeFrame& frame, const Element& x2, const Element& x3, const Tolerances& tol) {
  return meet(join(graph_projection(frame, x2, Slot::s12), frame.e(3), tol),
              join(graph_projection(frame, x3, Slot::s13), frame.e(2), tol), tol);
}

InverseCoincidence inverse_coincidence(const ThreeFrame& frame, const Element& x, const Tolerances& tol) {
  const Projection q = graph_projection(frame, x, Slot::s12);
  if (!is_slot_graph_projection(frame, q, Slot::s21, tol)) return {false, std::nullopt};
  return {true, recover_operator(frame, q, Slot::s21, tol)};
}

}  // namespace projlat
