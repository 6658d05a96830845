#include "helpers.hpp"
#include "projlat/algebra.hpp"
#include "projlat/errors.hpp"
#include "projlat/lattice.hpp"
#include "projlat/sampling.hpp"

using namespace projlat;
using namespace testing;

namespace {

const Matrix kDiag10 = diag({1, 0});
const Matrix kHalf = mat({{0.5, 0.5}, {0.5, 0.5}});

}  // namespace

TEST_CASE("canonicalize") {
  check_close(canonicalize(el(diag({1.0000001, -0.0000002}))), el(diag({1, 0})), 1e-15);
  CHECK_THROWS_AS(canonicalize(el(diag({0.5, 0.5}))), NotAProjection);
  const Projection p = proj(kHalf);
  check_close(canonicalize(p.element()), p, 1e-15);
  CHECK_THROWS_AS(canonicalize(el(mat({{1, 1}, {0, 0}}))), NotAProjection);
}

TEST_CASE("meet and join examples") {
  const Projection p = proj(kDiag10);
  const Projection q = proj(kHalf);
  const Projection one = Projection::one(Shape({2}));
  const Projection zero = Projection::zero(Shape({2}));

  check_close(meet(p, one), p, 1e-14);
  check_close(meet(p, p), p, 1e-14);
  CHECK(meet(p, q).is_zero());
  check_close(el(oracle::intersection_projection(p.element().block(0), q.element().block(0))), el(Matrix::Zero(2, 2)),
              1e-12);

  check_close(join(p, zero), p, 1e-14);
  check_close(join(p, q), one, 1e-12);
  check_close(join(p, p.complement()), one, 1e-12);

  CHECK(leq(zero, p));
  CHECK(leq(p, p));
  CHECK_FALSE(leq(p, q));
}

TEST_CASE("meet and join agree with the kernel oracle") {
  Rng rng(21);
  const Shape shape({4, 2, 3});
  for (int k = 0; k < 100; ++k) {
    // Share a random subspace so that meets are nontrivial.
    const Projection c = random_projection(shape, rng);
    const Projection p = join(c, random_projection(shape, rng));
    const Projection q = join(c, random_projection(shape, rng));
    const Projection m = meet(p, q);
    const Projection j = join(p, q);
    for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
      const Matrix& pb = p.element().block(b);
      const Matrix& qb = q.element().block(b);
      CHECK(oracle::op_norm(m.element().block(b) - oracle::intersection_projection(pb, qb)) <= 1e-7);
      CHECK(oracle::op_norm(j.element().block(b) - oracle::sum_projection(pb, qb)) <= 1e-7);
      CHECK(j.ranks()[b] + m.ranks()[b] == p.ranks()[b] + q.ranks()[b]);
    }
    // De Morgan.
    check_close(j.complement(), meet(p.complement(), q.complement()), 1e-8);
  }
}

TEST_CASE("lattice axioms on random triples") {
  Rng rng(22);
  const Shape shape({3, 4});
  for (int k = 0; k < 50; ++k) {
    const Projection p = random_projection(shape, rng);
    const Projection q = random_projection(shape, rng);
    const Projection r = random_projection(shape, rng);
    check_close(meet(p, q), meet(q, p), 1e-8);
    check_close(join(p, q), join(q, p), 1e-8);
    check_close(meet(meet(p, q), r), meet(p, meet(q, r)), 1e-8);
    check_close(join(join(p, q), r), join(p, join(q, r)), 1e-8);
    check_close(meet(p, join(p, q)), p, 1e-8);
    check_close(join(p, meet(p, q)), p, 1e-8);
  }
}

TEST_CASE("Murray-von Neumann equivalence") {
  const Projection e11 = proj(diag({1, 0}));
  const Projection e22 = proj(diag({0, 1}));
  const auto v = mv_equivalent(e11, e22);
  REQUIRE(v.has_value());
  check_close(*v * v->adjoint(), e11.element(), 1e-14);
  check_close(v->adjoint() * *v, e22.element(), 1e-14);

  CHECK_FALSE(mv_equivalent(proj(diag({1, 1})), e11).has_value());

  const Projection a = proj(el({diag({1, 0}), diag({0, 0})}));
  const Projection b = proj(el({diag({0, 0}), diag({0, 1})}));
  CHECK_FALSE(mv_equivalent(a, b).has_value());

  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    const Projection p = random_projection_with_ranks(Shape({4, 3}), {2, 1}, rng);
    const Projection q = random_projection_with_ranks(Shape({4, 3}), {2, 1}, rng);
    const auto w = mv_equivalent(p, q);
    REQUIRE(w.has_value());
    check_close(*w * w->adjoint(), p.element(), 1e-8);
    check_close(w->adjoint() * *w, q.element(), 1e-8);
  }
}

TEST_CASE("perspectivity witness") {
  const Projection p = proj(kDiag10);
  const Projection q2 = proj(diag({0, 1}));
  const Element v = perspectivity_witness(p, q2);
  check_close(v * v.adjoint(), el(diag({0, 1})), 1e-14);
  check_close(v.adjoint() * v, el(diag({0, 1})), 1e-14);

  const Projection q = proj(kHalf);
  const Element w = perspectivity_witness(p, q);
  check_close(w * w.adjoint(), el(diag({0, 1})), 1e-12);
  check_close(w.adjoint() * w, q.element(), 1e-12);

  CHECK_THROWS_AS(perspectivity_witness(p, p), NotComplementary);
}

TEST_CASE("central supports and central projections") {
  check_close(central_support(proj(diag({1, 0}))), el(diag({1, 1})), 0.0);
  const Projection mixed = proj(el({diag({1, 0}), diag({0, 0, 0})}));
  check_close(central_support(mixed), el({diag({1, 1}), diag({0, 0, 0})}), 0.0);
  CHECK(central_support(Projection::zero(Shape({2}))).is_zero());

  CHECK(is_central_projection(proj(el({diag({1, 1}), diag({0})}))));
  CHECK(is_central_projection(Projection::zero(Shape({2}))));

  const Projection e11 = proj(diag({1, 0}));
  CHECK_FALSE(is_central_projection(e11));
  const auto q = non_unique_complement(e11);
  REQUIRE(q.has_value());
  check_close(join(e11, *q), Projection::one(Shape({2})), 1e-12);
  CHECK(meet(e11, *q).is_zero());
  CHECK(distance(*q, e11.complement()) > 0.1);
  check_close(*q, el(kHalf), 1e-12);

  CHECK_FALSE(non_unique_complement(proj(el({diag({1, 1}), diag({0})}))).has_value());
}

TEST_CASE("principal ideals") {
  const Element a = el(mat({{1, 2}, {3, 4}}));
  CHECK(principal_ideal_leq(a, a));
  CHECK(principal_ideal_leq(el(mat({{5, -1}, {0, 7}})), a));
  CHECK_FALSE(principal_ideal_leq(el(diag({0, 1})), el(diag({1, 0}))));

  Rng rng(9);
  const Shape shape({3, 4});
  for (int k = 0; k < 100; ++k) {
    const Element b = random_element(shape, rng) * random_projection(shape, rng).element();
    // Half the draws lie in the ideal by construction.
    const Element x = k % 2 == 0 ? b * random_element(shape, rng)
                                 : random_element(shape, rng) * random_projection(shape, rng).element();
    bool oracle_in = true;
    for (std::size_t i = 0; i < shape.num_blocks(); ++i) {
      oracle_in = oracle_in && oracle::ls_solvable(x.block(i), b.block(i), 1e-8);
    }
    CHECK(principal_ideal_leq(x, b) == oracle_in);
  }
}
