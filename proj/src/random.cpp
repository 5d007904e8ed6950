#include "avgkit/random.hpp"

#include <string>

#include "avgkit/errors.hpp"
#include "avgkit/linalg.hpp"

namespace avgkit {

DenseMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> gauss;
    DenseMatrix m(rows, cols);
    for (double& x : m.data()) x = gauss(rng);
    return m;
}

DenseMatrix random_nonexpansive(std::size_t n, Rng& rng, double scale, const ToleranceConfig& cfg) {
    if (!(scale > 0.0 && scale <= 1.0)) throw DomainError("random_nonexpansive: scale must lie in (0, 1]");
    DenseMatrix m = random_gaussian(n, n, rng);
    const double norm = spectral_norm(m, cfg);
    if (norm == 0.0) return m;
    // Shave a few ulps so rounding cannot push the norm above 1.
    m *= scale * (1.0 - 4e-16) / norm;
    return m;
}

DenseMatrix random_averaged(std::size_t n, double kappa, Rng& rng, const ToleranceConfig& cfg) {
    if (!(kappa >= 0.0 && kappa <= 1.0)) throw DomainError("random_averaged: kappa must lie in [0, 1]");
    const DenseMatrix inner = random_nonexpansive(n, rng, 1.0, cfg);
    if (kappa == 0.0) return DenseMatrix::identity(n);
    return (1.0 - kappa) * DenseMatrix::identity(n) + kappa * inner;
}

DenseMatrix random_orthogonal(std::size_t n, Rng& rng, const ToleranceConfig& cfg) {
    for (;;) {
        DenseMatrix q = orthonormalize(random_gaussian(n, n, rng), cfg);
        if (q.cols() == n) return q;
    }
}

Subspace random_subspace(std::size_t n, std::size_t dim, Rng& rng, const ToleranceConfig& cfg) {
    if (dim > n) throw DimensionError("random_subspace: dimension exceeds ambient dimension");
    if (dim == 0) return Subspace::zero(n);
    return Subspace::from_orthonormal(random_orthogonal(n, rng, cfg).leading_columns(dim));
}

SubspacePair random_subspace_pair(std::size_t n, std::size_t dim_u, std::size_t dim_v, std::size_t shared, Rng& rng,
                                  const ToleranceConfig& cfg) {
    if (dim_u > n || dim_v > n || shared > dim_u || shared > dim_v)
        throw DimensionError("random_subspace_pair: inconsistent dimensions");
    const std::size_t own_u = dim_u - shared;
    const std::size_t own_v = dim_v - shared;
    const DenseMatrix g = random_gaussian(n, shared + own_u + own_v, rng);
    std::vector<Vector> u_cols;
    std::vector<Vector> v_cols;
    for (std::size_t j = 0; j < shared; ++j) {
        u_cols.push_back(g.column(j));
        v_cols.push_back(g.column(j));
    }
    for (std::size_t j = 0; j < own_u; ++j) u_cols.push_back(g.column(shared + j));
    for (std::size_t j = 0; j < own_v; ++j) v_cols.push_back(g.column(shared + own_u + j));
    return {Subspace::span(n, u_cols, cfg), Subspace::span(n, v_cols, cfg)};
}

SubspacePair random_nested_pair(std::size_t n, std::size_t dim_inner, std::size_t dim_outer, Rng& rng,
                                const ToleranceConfig& cfg) {
    if (dim_inner > dim_outer || dim_outer > n) throw DimensionError("random_nested_pair: need inner <= outer <= n");
    const DenseMatrix outer = random_orthogonal(n, rng, cfg).leading_columns(dim_outer);
    // Mix the outer basis so the inner subspace is not spanned by a column subset.
    const DenseMatrix mix = random_gaussian(dim_outer, dim_inner, rng);
    return {Subspace::span(outer * mix, cfg), Subspace::from_orthonormal(outer)};
}

DenseMatrix random_with_fixed_space(std::size_t n, std::size_t fixed_dim, Rng& rng, const ToleranceConfig& cfg) {
    if (fixed_dim > n) throw DimensionError("random_with_fixed_space: fixed dimension exceeds n");
    const DenseMatrix q = random_orthogonal(n, rng, cfg);
    const std::size_t m = n - fixed_dim;
    std::uniform_real_distribution<double> scale_dist(0.5, 0.95);
    const double scale = scale_dist(rng);
    DenseMatrix block = DenseMatrix::identity(n);
    if (m > 0) {
        const DenseMatrix inner = random_nonexpansive(m, rng, scale, cfg);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) block(fixed_dim + i, fixed_dim + j) = inner(i, j);
    }
    return q * block * q.transpose();
}

}  // namespace avgkit
