#include "projlat/coordinatization.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "linalg.hpp"
#include "projlat/algebra.hpp"
#include "projlat/errors.hpp"
#include "projlat/lattice.hpp"
#include "projlat/pair_geometry.hpp"
#include "projlat/sampling.hpp"

namespace projlat {

namespace {

Element stack_frame(const std::vector<Matrix>& v1, const std::vector<Matrix>& v2, const std::vector<Matrix>& v3,
                    const Shape& shape) {
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    Matrix u(shape[b], shape[b]);
    u << v1[b], v2[b], v3[b];
    blocks.push_back(std::move(u));
  }
  return Element(shape, std::move(blocks));
}

Element corner_identity(const ThreeFrame& f) { return Element::identity(f.corner()); }

double scaled(double residual, double scale) { return residual / std::max(1.0, scale); }

}  // namespace

ThreeFrame order_frame(const Shape& shape, const Projection& p1, const Projection& p2, const Projection& p3,
                       const Tolerances& tol) {
  const Projection* ps[3] = {&p1, &p2, &p3};
  for (const Projection* p : ps) require_same_shape(p->shape(), shape, "order_frame");
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if ((ps[i]->element() * ps[j]->element()).norm() > tol.proj_tol) {
        throw NotAFrame("order_frame: p" + std::to_string(i + 1) + " and p" + std::to_string(j + 1) +
                        " are not orthogonal");
      }
    }
  }
  if (distance(p1.element() + p2.element() + p3.element(), Element::identity(shape)) > tol.proj_tol) {
    throw NotAFrame("order_frame: p1 + p2 + p3 ≠ 1");
  }
  const auto w12 = mv_equivalent(p1, p2);
  const auto w13 = mv_equivalent(p1, p3);
  if (!w12 || !w13) throw NotAFrame("order_frame: the projections are not equivalent");
  std::vector<Matrix> v1, v2, v3;
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    v1.push_back(p1.basis(b));
    v2.push_back(w12->block(b).adjoint() * p1.basis(b));
    v3.push_back(w13->block(b).adjoint() * p1.basis(b));
  }
  return ThreeFrame::from_basis(stack_frame(v1, v2, v3, shape), tol);
}

NormalizedMap normalize_map(const LatticeMap& phi, const ThreeFrame& source_frame, std::uint64_t seed,
                            const Tolerances& tol) {
  require_same_shape(phi.source(), source_frame.ambient(), "normalize_map");
  const Shape& target = phi.target();
  for (Index n : target.blocks()) {
    if (n % 3 != 0) throw NotOrderThree("target shape " + target.to_string() + " has no 3×3 frame");
  }

  // Stage 1: the images of the frame, made orthogonal.
  const Projection e1 = phi(source_frame.e(1));
  const Projection e2 = phi(source_frame.e(2));
  const Projection e3 = phi(source_frame.e(3));
  std::vector<Index> third;
  for (Index n : target.blocks()) third.push_back(n / 3);
  for (const Projection* e : {&e1, &e2, &e3}) {
    if (e->ranks() != third) throw NotOrderThree("image of a frame projection does not have a third of every block");
  }
  const Projection e12 = join(e1, e2, tol);
  if (!meet(e1, e2, tol).is_zero() || !meet(e12, e3, tol).is_zero() ||
      join(e12, e3, tol).ranks() != target.blocks()) {
    throw NotOrderThree("images of the frame projections are not independent with join 1");
  }
  if (!ls_orthogonal(e12, e3, tol)) throw NotOrderThree("Φ(e1 ∨ e2) is not LS-orthogonal to Φ(e3)");
  const Element s1 = orthogonalizer(e12, e3, tol);
  const LatticeMap phi1 = compose(from_conjugation(s1, tol), phi);
  const Projection g1 = phi1(source_frame.e(1));
  const Projection g2 = phi1(source_frame.e(2));
  if (!ls_orthogonal(g1, g2, tol)) throw NotOrderThree("Φ(e1) is not LS-orthogonal to Φ(e2)");
  const Element s2 = orthogonalizer(g1, g2, tol);
  const Element s12 = s2 * s1;
  const LatticeMap phi12 = compose(from_conjugation(s12, tol), phi);
  const Projection f1 = phi12(source_frame.e(1));
  const Projection f2 = phi12(source_frame.e(2));
  const Projection f3 = phi12(source_frame.e(3));
  const double slack = tol.proj_tol * std::max(1.0, condition_number(s12));
  for (const auto& [a, b] : {std::pair{&f1, &f2}, std::pair{&f1, &f3}, std::pair{&f2, &f3}}) {
    if ((a->element() * b->element()).norm() > slack) {
      throw FrameAssemblyFailed("orthogonalized frame images are not orthogonal");
    }
  }

  // Stage 2: equivalences through perspectivities, via the common complements
  // Φ(P12[1] ∨ e3) of (f1, f2) and Φ(P13[1] ∨ e2) of (f1, f3).
  const Element one_corner = corner_identity(source_frame);
  Element w12 = Element::zero(target);
  Element w13 = Element::zero(target);
  try {
    const Projection h2 = phi12(join(graph_projection(source_frame, one_corner, Slot::s12), source_frame.e(3), tol));
    const Projection h3 = phi12(join(graph_projection(source_frame, one_corner, Slot::s13), source_frame.e(2), tol));
    w12 = perspectivity_witness(h2, f1, tol).adjoint() * perspectivity_witness(h2, f2, tol);
    w13 = perspectivity_witness(h3, f1, tol).adjoint() * perspectivity_witness(h3, f3, tol);
  } catch (const NotComplementary& e) {
    throw FrameAssemblyFailed(std::string("perspectivity failed: ") + e.what());
  }

  // Stage 3: provisional frame, seeded rotation of the corner identification.
  std::vector<Index> corner_sizes = third;
  Rng rng(seed);
  const Element rotation = random_unitary(Shape(corner_sizes), rng);
  std::vector<Matrix> v1, v2, v3;
  for (std::size_t b = 0; b < target.num_blocks(); ++b) {
    v1.push_back(f1.basis(b) * rotation.block(b));
    v2.push_back(w12.block(b).adjoint() * v1.back());
    v3.push_back(w13.block(b).adjoint() * v1.back());
  }
  Element c2 = Element::zero(Shape(corner_sizes));
  Element c3 = c2;
  try {
    const ThreeFrame provisional = ThreeFrame::from_basis(stack_frame(v1, v2, v3, target), tol);
    c2 = recover_operator(provisional, phi12(graph_projection(source_frame, one_corner, Slot::s12)), Slot::s12, tol);
    c3 = recover_operator(provisional, phi12(graph_projection(source_frame, one_corner, Slot::s13)), Slot::s13, tol);
  } catch (const Error& e) {
    throw FrameAssemblyFailed(std::string("provisional frame: ") + e.what());
  }

  // c = u|c|: u goes into the frame, |c|⁻¹ into the diagonal normalizer.
  Element inv_mod2 = c2, inv_mod3 = c3;
  try {
    const PolarDecomposition pc2 = polar_decompose(c2, tol);
    const PolarDecomposition pc3 = polar_decompose(c3, tol);
    inv_mod2 = invert(pc2.modulus, tol);
    inv_mod3 = invert(pc3.modulus, tol);
    for (std::size_t b = 0; b < target.num_blocks(); ++b) {
      v2[b] = v2[b] * pc2.partial_isometry.block(b);
      v3[b] = v3[b] * pc3.partial_isometry.block(b);
    }
  } catch (const NotInvertible& e) {
    throw FrameAssemblyFailed(std::string("ψ12(1) or ψ13(1) is singular: ") + e.what());
  }
  ThreeFrame frame = ThreeFrame::from_basis(stack_frame(v1, v2, v3, target), tol);
  const Element zero_c = Element::zero(frame.corner());
  const Element s3 = frame.assemble({Element::identity(frame.corner()), zero_c, zero_c, zero_c, inv_mod2, zero_c,
                                     zero_c, zero_c, inv_mod3});
  const Element total = s3 * s12;
  LatticeMap normalized = compose(from_conjugation(total, tol), phi);

  const double post_slack = tol.proj_tol * std::max(1.0, condition_number(total));
  for (int i = 1; i <= 3; ++i) {
    if (distance(normalized(source_frame.e(i)), frame.e(i)) > post_slack) {
      throw FrameAssemblyFailed("normalized map does not fix e" + std::to_string(i));
    }
  }
  for (Slot s : {Slot::s12, Slot::s13}) {
    const double r = distance(normalized(graph_projection(source_frame, one_corner, s)),
                              graph_projection(frame, Element::identity(frame.corner()), s));
    if (r > post_slack) throw FrameAssemblyFailed("normalized map does not fix P" + to_string(s) + "[1]");
  }
  return NormalizedMap{std::move(normalized), std::move(frame), {s1, s2, s3}, total};
}

bool CoordinatizationResult::passed() const {
  return std::all_of(diagnostics.begin(), diagnostics.end(), [](const Residual& r) { return r.passed; });
}

CoordinatizationResult coordinatize(const LatticeMap& phi, const ThreeFrame& source_frame, std::size_t samples,
                                    std::uint64_t seed, const Tolerances& tol) {
  NormalizedMap nm = normalize_map(phi, source_frame, seed, tol);
  const ThreeFrame src = source_frame;
  const ThreeFrame dst = nm.target_frame;
  const LatticeMap phi_n = nm.phi;
  const Element s = nm.total;
  const Element s_inv = invert(s, tol);
  const double kappa = std::max(1.0, condition_number(s));

  auto psi_slot = [src, dst, phi_n, tol](const Element& x, Slot slot) {
    if (x.norm() == 0.0) return Element::zero(dst.corner());
    return recover_operator(dst, phi_n(graph_projection(src, x, slot)), slot, tol);
  };
  RingMap psi = [psi_slot](const Element& x) { return psi_slot(x, Slot::s12); };
  RingMap Psi = [src, dst, psi, s, s_inv](const Element& x) {
    std::vector<Element> entries;
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) entries.push_back(psi(src.coordinate(x, i, j)));
    }
    return s_inv * dst.assemble(entries) * s;
  };

  std::vector<Residual> diag;
  auto add = [&diag](std::string name, double value, double tolerance) {
    diag.push_back({std::move(name), value, tolerance, value <= tolerance});
    return diag.back().passed;
  };

  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const Shape& corner = src.corner();
  const Shape& ambient = src.ambient();
  const double eq = tol.eq_tol * kappa;
  const double pj = tol.proj_tol * kappa;

  add("psi(1) = 1", distance(psi(Element::identity(corner)), Element::identity(dst.corner())), eq);

  double slot13 = 0.0, slot23 = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const Element x = random_element(corner, rng);
    const Element y = psi(x);
    const double scale = y.norm();
    slot13 = std::max(slot13, scaled(distance(psi_slot(x, Slot::s13), y), scale));
    slot23 = std::max(slot23, scaled(distance(psi_slot(x, Slot::s23), y), scale));
  }
  const bool coherent13 = add("slot coherence psi13 = psi12", slot13, eq);
  const bool coherent23 = add("slot coherence psi23 = psi12", slot23, eq);
  if (!coherent13 || !coherent23) {
    throw SlotMismatch("ψ differs between slots (residuals " + std::to_string(slot13) + ", " + std::to_string(slot23) +
                       "); Φ is not a lattice isomorphism");
  }

  add("Psi(1) = 1", distance(Psi(Element::identity(ambient)), Element::identity(phi.target())), eq);

  double additive = 0.0, multiplicative = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const Element x = random_element(ambient, rng);
    const Element y = random_element(ambient, rng);
    const Element px = Psi(x), py = Psi(y);
    additive = std::max(additive, scaled(distance(Psi(x + y), px + py), px.norm() + py.norm()));
    multiplicative = std::max(multiplicative, scaled(distance(Psi(x * y), px * py), px.norm() * py.norm()));
  }
  add("additivity", additive, eq);
  add("multiplicativity", multiplicative, eq);

  double supports = 0.0, graphs = 0.0, pairs = 0.0, corners = 0.0, corner_lattice = 0.0;
  auto intertwining = [&](const Element& x) {
    return distance(phi(left_support(x, tol)), left_support(Psi(x), tol));
  };
  const Element one_corner = Element::identity(corner);
  const Projection p13_one = phi(graph_projection(src, one_corner, Slot::s13));
  const Projection e3_image = phi(src.e(3));
  for (std::size_t k = 0; k < samples; ++k) {
    supports = std::max(supports, intertwining(random_element(ambient, rng) * random_projection(ambient, rng).element()));
    supports = std::max(supports, intertwining(random_projection(ambient, rng).element()));
    const Slot slot = static_cast<Slot>(uniform_int(rng, 0, 3));
    graphs = std::max(graphs, intertwining(graph_projection(src, random_element(corner, rng), slot).element()));
    pairs = std::max(pairs, intertwining(graph_pair_projection(src, random_element(corner, rng),
                                                               random_element(corner, rng), tol)
                                             .element()));
    const Projection pc = random_projection(corner, rng);
    const Projection q = canonicalize(src.embed(pc.element(), 3, 3), tol);
    corners = std::max(corners, intertwining(q.element()));
    const Projection via_lattice =
        meet(join(p13_one, phi(graph_projection(src, pc.complement().element(), Slot::s13)), tol), e3_image, tol);
    corner_lattice = std::max(corner_lattice, distance(via_lattice, phi(q)));
  }
  add("intertwining on supports", supports, pj);
  add("intertwining on graph projections", graphs, pj);
  add("intertwining on P_{x2,x3}", pairs, pj);
  add("intertwining on e3-corner projections", corners, pj);
  add("e3-corner lattice reduction", corner_lattice, pj);
  const double worst = std::max({supports, graphs, pairs, corners});
  if (worst > pj) {
    throw IntertwiningFailure("Φ(l(x)) ≠ l(Ψ(x)) (worst residual " + std::to_string(worst) + ")", worst);
  }

  return CoordinatizationResult{std::move(psi), std::move(Psi), src, dst, std::move(nm.normalizers), std::move(diag)};
}

CoordinatizationResult coordinatize(const LatticeMap& phi, std::size_t samples, std::uint64_t seed,
                                    const Tolerances& tol) {
  return coordinatize(phi, standard_frame(phi.source()), samples, seed, tol);
}

UniquenessReport uniqueness_residual(const RingMap& psi, const Shape& shape, std::size_t samples, std::uint64_t seed,
                                     const Tolerances& tol) {
  UniquenessReport r;
  Rng rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    for (int variant = 0; variant < 2; ++variant) {
      Element x = random_element(shape, rng);
      if (variant == 1) x = x * random_projection(shape, rng).element();
      const Element y = psi(x);
      r.max_residual = std::max(r.max_residual, scaled(distance(y, x), x.norm()));
      r.max_support_deviation = std::max(r.max_support_deviation, distance(left_support(y, tol), left_support(x, tol)));
    }
  }
  r.support_condition_holds = r.max_support_deviation <= tol.proj_tol;
  r.certified = r.support_condition_holds && r.max_residual <= tol.eq_tol;
  return r;
}

namespace {

Eigen::VectorXd real_vec(const Element& x) {
  Index d = 0;
  for (const Matrix& m : x.blocks()) d += 2 * m.size();
  Eigen::VectorXd v(d);
  Index k = 0;
  for (const Matrix& m : x.blocks()) {
    for (Index i = 0; i < m.rows(); ++i) {
      for (Index j = 0; j < m.cols(); ++j) {
        v(k++) = m(i, j).real();
        v(k++) = m(i, j).imag();
      }
    }
  }
  return v;
}

Element from_real_vec(const Eigen::VectorXd& v, const Shape& shape) {
  std::vector<Matrix> blocks;
  Index k = 0;
  for (Index n : shape.blocks()) {
    Matrix m(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        m(i, j) = Complex(v(k), v(k + 1));
        k += 2;
      }
    }
    blocks.push_back(std::move(m));
  }
  return Element(shape, std::move(blocks));
}

}  // namespace

RingMap invert_real_linear(const RingMap& psi, const Shape& shape, const Tolerances& tol) {
  const Index d = 2 * [&] {
    Index s = 0;
    for (Index n : shape.blocks()) s += n * n;
    return s;
  }();
  const Shape target = psi(Element::zero(shape)).shape();
  Eigen::MatrixXd a(d, d);
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(d);
  for (Index k = 0; k < d; ++k) {
    unit(k) = 1.0;
    const Eigen::VectorXd col = real_vec(psi(from_real_vec(unit, shape)));
    if (col.size() != d) throw ShapeMismatch("invert_real_linear: source and target dimensions differ");
    a.col(k) = col;
    unit(k) = 0.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(d - 1) <= tol.rank_rel * sv(0)) throw NotInvertible(0, sv(d - 1));
  const Eigen::MatrixXd inv =
      svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().transpose();
  return [inv, shape, target](const Element& y) {
    require_same_shape(y.shape(), target, "inverse of a real-linear map");
    return from_real_vec(inv * real_vec(y), shape);
  };
}

std::vector<SplitPiece> block_split9(const Element& x, const std::vector<BlockSplit>& splits) {
  const Shape& shape = x.shape();
  if (splits.size() != shape.num_blocks()) throw BadSplit("block_split9: one split per block is required");
  // part boundaries per block
  std::vector<std::array<Index, 4>> bounds;
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    const Index n = shape[b];
    const auto [n1, n2] = splits[b];
    if (n1 < 0 || n1 > n2 || n2 > n) throw BadSplit("block_split9: splits must satisfy 0 ≤ n1 ≤ n2 ≤ n");
    for (Index part : {n1, n2 - n1, n - n2}) {
      if (2 * part > n) {
        throw BadSplit("block_split9: a part of size " + std::to_string(part) + " exceeds half of " +
                       std::to_string(n));
      }
    }
    bounds.push_back({0, n1, n2, n});
  }

  auto coordinate_projection = [&](const std::vector<std::vector<Index>>& idx) {
    std::vector<Matrix> bases;
    for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
      Matrix u = Matrix::Zero(shape[b], static_cast<Index>(idx[b].size()));
      for (std::size_t c = 0; c < idx[b].size(); ++c) u(idx[b][c], static_cast<Index>(c)) = 1.0;
      bases.push_back(std::move(u));
    }
    return Projection::from_bases(shape, std::move(bases));
  };
  auto range = [](Index lo, Index hi) {
    std::vector<Index> r;
    for (Index i = lo; i < hi; ++i) r.push_back(i);
    return r;
  };

  std::vector<SplitPiece> pieces;
  for (int I = 0; I < 3; ++I) {
    for (int J = 0; J < 3; ++J) {
      std::vector<Matrix> blocks;
      bool nonzero = false;
      for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
        Matrix m = Matrix::Zero(shape[b], shape[b]);
        const auto& bd = bounds[b];
        const Index r0 = bd[I], r1 = bd[I + 1], c0 = bd[J], c1 = bd[J + 1];
        m.block(r0, c0, r1 - r0, c1 - c0) = x.block(b).block(r0, c0, r1 - r0, c1 - c0);
        if (!m.isZero(0.0)) nonzero = true;
        blocks.push_back(std::move(m));
      }
      if (!nonzero) continue;
      std::vector<std::vector<Index>> pi, qi;
      for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
        const auto& bd = bounds[b];
        std::vector<Index> rows = range(bd[I], bd[I + 1]);
        std::vector<Index> cols = range(bd[J], bd[J + 1]);
        if (I != J) {
          // Pad the smaller side from the third part until both have equal size.
          const int K = 3 - I - J;
          std::vector<Index> spare = range(bd[K], bd[K + 1]);
          auto& small = rows.size() < cols.size() ? rows : cols;
          const std::size_t need = std::max(rows.size(), cols.size()) - small.size();
          small.insert(small.end(), spare.begin(), spare.begin() + static_cast<std::ptrdiff_t>(need));
        }
        pi.push_back(std::move(rows));
        qi.push_back(std::move(cols));
      }
      Projection p = coordinate_projection(pi);
      Projection q = coordinate_projection(qi);
      pieces.push_back({Element(shape, std::move(blocks)), std::move(p), std::move(q), I == J});
    }
  }
  return pieces;
}

}  // namespace projlat
