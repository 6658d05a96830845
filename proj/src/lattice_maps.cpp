#include "projlat/lattice_maps.hpp"

#include <algorithm>
#include <sstream>

#include "linalg.hpp"
#include "projlat/algebra.hpp"
#include "projlat/errors.hpp"
#include "projlat/lattice.hpp"
#include "projlat/sampling.hpp"

namespace projlat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Element conjugate_blocks(const Element& x, const std::vector<bool>& flags) {
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < x.num_blocks(); ++b) {
    blocks.push_back(flags[b] ? Matrix(x.block(b).conjugate()) : x.block(b));
  }
  return Element(x.shape(), std::move(blocks));
}

Projection image_of_range(const Element& t, const Projection& p, bool conjugate) {
  std::vector<Matrix> bases;
  for (std::size_t b = 0; b < p.num_blocks(); ++b) {
    const Matrix u = conjugate ? Matrix(p.basis(b).conjugate()) : p.basis(b);
    bases.push_back(detail::orthonormalize(t.block(b) * u));
  }
  return Projection::from_bases(p.shape(), std::move(bases));
}

Projection diagonal_unit(const Shape& shape, std::size_t block, Index i) {
  std::vector<Matrix> bases;
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    if (b == block) {
      Matrix u = Matrix::Zero(shape[b], 1);
      u(i, 0) = 1.0;
      bases.push_back(std::move(u));
    } else {
      bases.emplace_back(shape[b], 0);
    }
  }
  return Projection::from_bases(shape, std::move(bases));
}

}  // namespace

StandardRingIso StandardRingIso::inner(const Element& t) {
  return {t, std::vector<bool>(t.num_blocks(), false)};
}

StandardRingIso StandardRingIso::conjugation(const Shape& shape) {
  return {Element::identity(shape), std::vector<bool>(shape.num_blocks(), true)};
}

Element StandardRingIso::operator()(const Element& x) const {
  return as_function()(x);
}

RingMap StandardRingIso::as_function(const Tolerances& tol) const {
  if (conjugate_block.size() != T.num_blocks()) throw ShapeMismatch("ring iso: one conjugation flag per block");
  const Element t = T;
  const Element t_inv = invert(T, tol);
  const std::vector<bool> flags = conjugate_block;
  return [t, t_inv, flags](const Element& x) { return t * conjugate_blocks(x, flags) * t_inv; };
}

StandardRingIso StandardRingIso::inverse(const Tolerances& tol) const {
  // x = σ(T⁻¹ y T) = σ(T)⁻¹ σ(y) σ(T)
  return {invert(conjugate_blocks(T, conjugate_block), tol), conjugate_block};
}

LatticeMap::LatticeMap(Shape source, Shape target, Apply apply, Provenance provenance)
    : source_(std::move(source)),
      target_(std::move(target)),
      apply_(std::move(apply)),
      provenance_(std::move(provenance)) {}

Projection LatticeMap::operator()(const Projection& p) const {
  require_same_shape(p.shape(), source_, "lattice map argument");
  Projection out = apply_(p);
  require_same_shape(out.shape(), target_, "lattice map value");
  return out;
}

std::string LatticeMap::describe() const {
  return std::visit(overloaded{
                        [](const provenance::FromRingIso&) { return std::string("from_ring_iso"); },
                        [](const provenance::FromConjugation&) { return std::string("from_conjugation(T)"); },
                        [](const provenance::FromSemilinear& s) {
                          return std::string("from_semilinear(T, ") +
                                 (s.sigma == FieldAutomorphism::conjugation ? "conj" : "id") + ")";
                        },
                        [](const provenance::Composite& c) {
                          std::string out = "composite(";
                          for (std::size_t i = 0; i < c.parts.size(); ++i) {
                            if (i) out += ", ";
                            out += c.parts[i]->describe();
                          }
                          return out + ")";
                        },
                        [](const provenance::Opaque& o) { return "opaque(" + o.description + ")"; },
                    },
                    provenance_);
}

LatticeMap identity_map(const Shape& shape) {
  return from_conjugation(Element::identity(shape));
}

LatticeMap from_ring_iso(const Shape& source, RingMap psi, std::optional<RingMap> inverse, const Tolerances& tol) {
  Shape target = psi(Element::identity(source)).shape();
  auto apply = [psi, tol](const Projection& p) { return left_support(psi(p.element()), tol); };
  return LatticeMap(source, std::move(target), std::move(apply),
                    provenance::FromRingIso{std::move(psi), std::move(inverse)});
}

LatticeMap from_ring_iso(const StandardRingIso& psi, const Tolerances& tol) {
  return from_ring_iso(psi.T.shape(), psi.as_function(tol), psi.inverse(tol).as_function(tol), tol);
}

LatticeMap from_conjugation(const Element& T, const Tolerances& tol) {
  (void)invert(T, tol);
  auto apply = [T](const Projection& p) { return image_of_range(T, p, false); };
  return LatticeMap(T.shape(), T.shape(), std::move(apply), provenance::FromConjugation{T});
}

LatticeMap from_semilinear(const Element& T, FieldAutomorphism sigma, const Tolerances& tol) {
  (void)invert(T, tol);
  const bool conj = sigma == FieldAutomorphism::conjugation;
  auto apply = [T, conj](const Projection& p) { return image_of_range(T, p, conj); };
  return LatticeMap(T.shape(), T.shape(), std::move(apply), provenance::FromSemilinear{T, sigma});
}

LatticeMap opaque_map(const Shape& source, const Shape& target, LatticeMap::Apply apply, std::string description) {
  return LatticeMap(source, target, std::move(apply), provenance::Opaque{std::move(description)});
}

LatticeMap compose(const LatticeMap& outer, const LatticeMap& inner) {
  require_same_shape(inner.target(), outer.source(), "compose");
  provenance::Composite parts;
  auto append = [&parts](const LatticeMap& m) {
    if (const auto* c = std::get_if<provenance::Composite>(&m.provenance())) {
      parts.parts.insert(parts.parts.end(), c->parts.begin(), c->parts.end());
    } else {
      parts.parts.push_back(std::make_shared<const LatticeMap>(m));
    }
  };
  append(inner);
  append(outer);
  auto apply = [outer, inner](const Projection& p) { return outer(inner(p)); };
  return LatticeMap(inner.source(), outer.target(), std::move(apply), std::move(parts));
}

LatticeMap invert_map(const LatticeMap& phi, const Tolerances& tol) {
  return std::visit(
      overloaded{
          [&](const provenance::FromRingIso& r) -> LatticeMap {
            if (!r.inverse) throw NotInvertibleProvenance("ring-isomorphism map has no recorded inverse");
            return from_ring_iso(phi.target(), *r.inverse, r.psi, tol);
          },
          [&](const provenance::FromConjugation& c) -> LatticeMap { return from_conjugation(invert(c.T, tol), tol); },
          [&](const provenance::FromSemilinear& s) -> LatticeMap {
            Element t_inv = invert(s.T, tol);
            if (s.sigma == FieldAutomorphism::conjugation) t_inv = t_inv.conjugate();
            return from_semilinear(t_inv, s.sigma, tol);
          },
          [&](const provenance::Composite& c) -> LatticeMap {
            if (c.parts.empty()) throw NotInvertibleProvenance("empty composite");
            LatticeMap out = invert_map(*c.parts.back(), tol);
            for (auto it = std::next(c.parts.rbegin()); it != c.parts.rend(); ++it) {
              out = compose(invert_map(**it, tol), out);
            }
            return out;
          },
          [&](const provenance::Opaque& o) -> LatticeMap {
            throw NotInvertibleProvenance("opaque lattice map '" + o.description + "' cannot be inverted");
          },
      },
      phi.provenance());
}

LatticeIsoReport verify_lattice_iso(const LatticeMap& phi, std::size_t samples, std::uint64_t seed,
                                    const Tolerances& tol) {
  LatticeIsoReport report;
  report.seed = seed;
  Rng rng(seed);
  const Shape& src = phi.source();
  auto record = [&](bool ok, double residual, const std::string& what) {
    ++report.checks;
    report.max_residual = std::max(report.max_residual, residual);
    if (!ok) {
      report.passed = false;
      if (report.failures.size() < 16) report.failures.push_back(what);
    }
  };

  const double r0 = distance(phi(Projection::zero(src)), Projection::zero(phi.target()));
  record(r0 <= tol.proj_tol, r0, "Φ(0) ≠ 0");
  const double r1 = distance(phi(Projection::one(src)), Projection::one(phi.target()));
  record(r1 <= tol.proj_tol, r1, "Φ(1) ≠ 1");

  // Image rank profile over a fixed source rank profile.
  std::vector<Index> profile;
  for (Index n : src.blocks()) profile.push_back(uniform_int(rng, 0, static_cast<int>(n)));
  std::optional<std::vector<Index>> image_profile;
  for (int k = 0; k < 4; ++k) {
    const auto ranks = phi(random_projection_with_ranks(src, profile, rng)).ranks();
    if (!image_profile) {
      image_profile = ranks;
    } else {
      record(*image_profile == ranks, 0.0, "image rank profile varies over a fixed source rank profile");
    }
  }

  for (std::size_t s = 0; s < samples; ++s) {
    // Pairs sharing a random common part, so that meets are nontrivial.
    const Projection common = random_subprojection(random_projection(src, rng), rng);
    const Projection p = join(common, random_projection(src, rng), tol);
    const Projection q = join(common, random_projection(src, rng), tol);
    const Projection p0 = random_subprojection(p, rng);
    const Projection fp = phi(p);
    const Projection fq = phi(q);
    const Projection fp0 = phi(p0);

    record(leq(fp0, fp, tol), 0.0, "order not preserved on p0 ≤ p (sample " + std::to_string(s) + ")");
    const bool strict = p0.ranks() != p.ranks();
    if (strict) record(!leq(fp, fp0, tol), 0.0, "order not reflected on p0 < p (sample " + std::to_string(s) + ")");
    record(leq(p, q, tol) == leq(fp, fq, tol), 0.0, "order mismatch on random pair (sample " + std::to_string(s) + ")");
    record(leq(q, p, tol) == leq(fq, fp, tol), 0.0, "order mismatch on random pair (sample " + std::to_string(s) + ")");

    const double rm = distance(phi(meet(p, q, tol)), meet(fp, fq, tol));
    record(rm <= tol.proj_tol, rm, "meet not preserved (sample " + std::to_string(s) + ")");
    const double rj = distance(phi(join(p, q, tol)), join(fp, fq, tol));
    record(rj <= tol.proj_tol, rj, "join not preserved (sample " + std::to_string(s) + ")");
  }
  return report;
}

OrthogonalityReport preserves_orthogonality(const LatticeMap& phi, std::size_t samples, std::uint64_t seed,
                                            const Tolerances& tol) {
  OrthogonalityReport report;
  const Shape& src = phi.source();
  auto product_norm = [](const Projection& a, const Projection& b) { return (a.element() * b.element()).norm(); };
  auto fail = [&](const Projection& p, const Projection& q, const std::string& what) {
    report.preserved = false;
    report.witness_p = p;
    report.witness_q = q;
    report.description = what;
  };
  auto check = [&](const Projection& p, const Projection& q) {
    ++report.checks;
    const bool orth = product_norm(p, q) <= tol.proj_tol;
    const bool image_orth = product_norm(phi(p), phi(q)) <= tol.proj_tol;
    if (orth && !image_orth) {
      fail(p, q, "pq = 0 but Φ(p)Φ(q) ≠ 0");
      return false;
    }
    if (!orth && image_orth) {
      fail(p, q, "pq ≠ 0 but Φ(p)Φ(q) = 0");
      return false;
    }
    return true;
  };

  for (std::size_t b = 0; b < src.num_blocks(); ++b) {
    for (Index i = 0; i < src[b]; ++i) {
      for (Index j = i + 1; j < src[b]; ++j) {
        if (!check(diagonal_unit(src, b, i), diagonal_unit(src, b, j))) return report;
      }
    }
  }

  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const Projection p = random_projection(src, rng);
    const Projection q = random_subprojection(p.complement(), rng);
    if (!check(p, q)) return report;
    const Projection a = random_projection(src, rng);
    const Projection c = random_projection(src, rng);
    // Skip nearly orthogonal random pairs; they say nothing reliable.
    if (product_norm(a, c) > 1e-6 && !check(a, c)) return report;
  }
  return report;
}

}  // namespace projlat
