#include <numeric>

#include "helpers.hpp"
#include "projlat/algebra.hpp"
#include "projlat/coordinatization.hpp"
#include "projlat/errors.hpp"
#include "projlat/graph_projections.hpp"
#include "projlat/lattice.hpp"
#include "projlat/lattice_maps.hpp"
#include "projlat/sampling.hpp"

using namespace projlat;
using namespace testing;

TEST_CASE("order_frame") {
  const Shape m3({3});
  const ThreeFrame f = order_frame(m3, proj(diag({1, 0, 0})), proj(diag({0, 1, 0})), proj(diag({0, 0, 1})));
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      Matrix e = Matrix::Zero(3, 3);
      e(i - 1, j - 1) = 1;
      check_close(f.unit(i, j), el(e), 1e-14);
    }
  }

  const Shape m6({6});
  const ThreeFrame g =
      order_frame(m6, proj(diag({1, 1, 0, 0, 0, 0})), proj(diag({0, 0, 1, 1, 0, 0})), proj(diag({0, 0, 0, 0, 1, 1})));
  CHECK(g.corner() == Shape({2}));
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      check_close(g.unit(i, j) * g.unit(j, i), g.e(i).element(), 1e-12);
      for (int k = 1; k <= 3; ++k) check_close(g.unit(i, j) * g.unit(j, k), g.unit(i, k), 1e-12);
    }
  }

  const Projection e1 = proj(diag({1, 0, 0}));
  CHECK_THROWS_AS(order_frame(m3, e1, e1, proj(diag({0, 0, 1}))), NotAFrame);
  CHECK_THROWS_AS(order_frame(Shape({2}), proj(diag({1, 0})), proj(diag({0, 1})), Projection::zero(Shape({2}))),
                  NotAFrame);
}

TEST_CASE("normalize_map") {
  const Shape shape({3});
  const ThreeFrame f = standard_frame(shape);
  const NormalizedMap id = normalize_map(identity_map(shape), f);
  for (const Element& s : id.normalizers) check_close(s, Element::identity(shape), 1e-10);

  Rng rng(61);
  const Element t = random_invertible(shape, rng, 30.0);
  const NormalizedMap n = normalize_map(from_conjugation(t), f, 3);
  for (int i = 1; i <= 3; ++i) check_close(n.phi(f.e(i)), n.target_frame.e(i), 1e-8);
  const Element one = Element::identity(f.corner());
  check_close(n.phi(graph_projection(f, one, Slot::s12)), graph_projection(n.target_frame, one, Slot::s12), 1e-8);
  check_close(n.phi(graph_projection(f, one, Slot::s13)), graph_projection(n.target_frame, one, Slot::s13), 1e-8);

  CHECK_THROWS_AS(normalize_map(identity_map(Shape({2})), f), ShapeMismatch);
}

TEST_CASE("coordinatize examples") {
  const Shape shape({3});
  Rng rng(62);
  const CoordinatizationResult id = coordinatize(identity_map(shape));
  CHECK(id.passed());
  const CoordinatizationResult tr =
      coordinatize(from_semilinear(Element::identity(shape), FieldAutomorphism::conjugation));
  CHECK(tr.passed());
  const Element t = random_invertible(shape, rng, 50.0);
  const CoordinatizationResult ad = coordinatize(from_conjugation(t));
  CHECK(ad.passed());
  const Element tinv = el(Matrix(t.block(0).inverse()));
  const double c = oracle::cond(t);
  for (int k = 0; k < 20; ++k) {
    const Element x = random_element(shape, rng);
    check_close(id.Psi(x), x, 1e-10);
    check_close(tr.Psi(x), x.conjugate(), 1e-10);
    check_close(ad.Psi(x), t * x * tinv, 1e-6 * c);
  }
  CHECK_THROWS_AS(coordinatize(identity_map(Shape({2}))), NotOrderThree);
  CHECK_THROWS_AS(coordinatize(identity_map(Shape({3, 4}))), NotOrderThree);
}

TEST_CASE("coordinatize over a direct sum") {
  const Shape shape({3, 6});
  Rng rng(63);
  const Element t = random_invertible(shape, rng, 20.0);
  const CoordinatizationResult r = coordinatize(from_conjugation(t), 10, 4);
  CHECK(r.passed());
  const Element tinv = el({Matrix(t.block(0).inverse()), Matrix(t.block(1).inverse())});
  for (int k = 0; k < 10; ++k) {
    const Element x = random_element(shape, rng);
    check_close(r.Psi(x), t * x * tinv, 1e-6 * oracle::cond(t));
  }
}

TEST_CASE("maps that are not lattice isomorphisms are rejected") {
  const Shape shape({3});
  const LatticeMap anti =
      opaque_map(shape, shape, [](const Projection& p) { return p.complement(); }, "p -> 1-p");
  CHECK_THROWS_AS(coordinatize(anti), Error);
}

TEST_CASE("uniqueness residual") {
  const Shape shape({3});
  const UniquenessReport id = uniqueness_residual([](const Element& x) { return x; }, shape, 20, 1);
  CHECK(id.max_residual == 0.0);
  CHECK(id.certified);

  Rng rng(64);
  const Element u = random_unitary(shape, rng);
  const UniquenessReport ad =
      uniqueness_residual([u](const Element& x) { return u * x * u.adjoint(); }, shape, 20, 2);
  CHECK_FALSE(ad.support_condition_holds);
  CHECK_FALSE(ad.certified);
}

TEST_CASE("real-linear inversion") {
  const Shape shape({3});
  Rng rng(65);
  const Element t = random_invertible(shape, rng, 10.0);
  const StandardRingIso psi{t, {true}};
  const RingMap inv = invert_real_linear(psi.as_function(), shape);
  for (int k = 0; k < 5; ++k) {
    const Element x = random_element(shape, rng);
    check_close(inv(psi(x)), x, 1e-9);
  }
  CHECK_THROWS_AS(invert_real_linear([](const Element& x) { return x * Complex(0.0); }, shape), NotInvertible);
}

TEST_CASE("block_split9") {
  const Element ones = el(Matrix::Ones(3, 3));
  const std::vector<SplitPiece> pieces = block_split9(ones, {{1, 2}});
  CHECK(pieces.size() == 9);
  Element sum = Element::zero(ones.shape());
  for (const SplitPiece& p : pieces) {
    sum = sum + p.piece;
    check_close(p.p.element() * p.piece * p.q.element(), p.piece, 0.0);
    CHECK(p.p.ranks() == p.q.ranks());
    CHECK(p.diagonal == (oracle::op_distance(p.p.element(), p.q.element()) == 0.0));
    if (!p.diagonal) CHECK(meet(p.p, p.q).is_zero());
  }
  CHECK(oracle::op_distance(sum, ones) == 0.0);

  CHECK(block_split9(el(diag({1, 0, 0})), {{1, 2}}).size() == 1);
  CHECK(block_split9(Element::zero(Shape({3})), {{1, 2}}).empty());
  CHECK_THROWS_AS(block_split9(ones, {{2, 3}}), BadSplit);

  Rng rng(66);
  const Element x = random_element(Shape({6, 4}), rng);
  Element total = Element::zero(x.shape());
  for (const SplitPiece& p : block_split9(x, {{2, 4}, {1, 3}})) total = total + p.piece;
  CHECK(oracle::op_distance(total, x) == 0.0);
}
