#pragma once

#include <cstddef>
#include <random>

#include "avgkit/matrix.hpp"
#include "avgkit/subspace.hpp"
#include "avgkit/tolerance.hpp"

// Seeded instance generators for the property suites and the CLI. All draws
// come from a caller-owned std::mt19937_64, so a fixed seed reproduces the
// same sequence of instances.

namespace avgkit {

using Rng = std::mt19937_64;

/// Entries i.i.d. standard normal.
DenseMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng);

/// Gaussian matrix divided by its spectral norm, then multiplied by scale in (0, 1].
DenseMatrix random_nonexpansive(std::size_t n, Rng& rng, double scale = 1.0, const ToleranceConfig& cfg = {});

/// (1 - kappa) I + kappa N with N random nonexpansive; kappa in [0, 1].
DenseMatrix random_averaged(std::size_t n, double kappa, Rng& rng, const ToleranceConfig& cfg = {});

/// Random orthogonal matrix (orthonormalized Gaussian).
DenseMatrix random_orthogonal(std::size_t n, Rng& rng, const ToleranceConfig& cfg = {});

Subspace random_subspace(std::size_t n, std::size_t dim, Rng& rng, const ToleranceConfig& cfg = {});

struct SubspacePair {
    Subspace u;
    Subspace v;
};

/// U and V of the requested dimensions sharing `shared` common random directions.
SubspacePair random_subspace_pair(std::size_t n, std::size_t dim_u, std::size_t dim_v, std::size_t shared, Rng& rng,
                                  const ToleranceConfig& cfg = {});

/// inner subset of outer.
SubspacePair random_nested_pair(std::size_t n, std::size_t dim_inner, std::size_t dim_outer, Rng& rng,
                                const ToleranceConfig& cfg = {});

/// Nonexpansive R = Q diag(I_k, N) Q^T with ||N|| < 1, so Fix R has dimension exactly k.
DenseMatrix random_with_fixed_space(std::size_t n, std::size_t fixed_dim, Rng& rng, const ToleranceConfig& cfg = {});

}  // namespace avgkit
