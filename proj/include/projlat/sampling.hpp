#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "projlat/element.hpp"
#include "projlat/projection.hpp"

namespace projlat {

/// All samplers draw from an explicitly threaded engine; there is no hidden state.
using Rng = std::mt19937_64;

/// Entries i.i.d. standard complex Gaussian times `scale`.
Element random_element(const Shape& shape, Rng& rng, double scale = 1.0);

/// Random Hermitian element (Gaussian, symmetrized).
Element random_hermitian(const Shape& shape, Rng& rng);

/// Haar-distributed unitary (QR of a Gaussian matrix with phase correction).
Element random_unitary(const Shape& shape, Rng& rng);

/// U diag(s) V* with s log-uniform in [1, max_cond], so cond(T) ≤ max_cond.
Element random_invertible(const Shape& shape, Rng& rng, double max_cond);

/// Random central element with Gaussian complex block scalars.
Element random_central(const Shape& shape, Rng& rng);

/// Unitarily invariant projection: per block a rank uniform on {0..n}, range
/// spanned by the first columns of a Haar unitary.
Projection random_projection(const Shape& shape, Rng& rng);

/// Same distribution with prescribed per-block ranks.
Projection random_projection_with_ranks(const Shape& shape, const std::vector<Index>& ranks, Rng& rng);

/// Random subprojection of p with prescribed per-block ranks (each ≤ rank of p).
Projection random_subprojection(const Projection& p, const std::vector<Index>& ranks, Rng& rng);

/// Random subprojection of p with ranks uniform on {0..rank(p)} per block.
Projection random_subprojection(const Projection& p, Rng& rng);

/// A pair (p, q) with q ∧ p = 0 and p ∨ q generic inside the block, whose
/// principal angles are drawn log-uniformly from [min_angle, π/2).
/// Per block rank(p) = rank(q) = r with 2r ≤ n, r ≥ 1 when n ≥ 2.
struct AnglePair {
  Projection p;
  Projection q;
  std::vector<std::vector<double>> angles;
};
AnglePair random_pair_with_angles(const Shape& shape, Rng& rng, double min_angle);

double uniform(Rng& rng, double lo, double hi);
int uniform_int(Rng& rng, int lo, int hi);

}  // namespace projlat
