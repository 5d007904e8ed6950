#pragma once

#include <cstddef>

#include "avgkit/matrix.hpp"
#include "avgkit/tolerance.hpp"

namespace avgkit {

/// Spectral decomposition of a symmetric matrix.
struct SymEigen {
    Vector eigenvalues;        // nonincreasing
    DenseMatrix eigenvectors;  // column k pairs with eigenvalues[k]
};

/// Eigen-decomposition of (S + S^T)/2 by cyclic Jacobi rotations.
///
/// Sweeps run in fixed (p, q) order until the off-diagonal Frobenius mass
/// drops below eig_tol * ||S||_F. Eigenvalues are returned in nonincreasing
/// order; each eigenvector is flipped so that its first numerically nonzero
/// component is positive. Throws DimensionError for non-square input.
SymEigen sym_eigen(const DenseMatrix& s, const ToleranceConfig& cfg = {});

/// Outcome of a positive-semidefiniteness test.
struct PsdCheck {
    bool psd = false;
    double min_eigenvalue = 0.0;  // the margin; negative means violated
    double threshold = 0.0;       // psd holds iff min_eigenvalue >= -threshold

    explicit operator bool() const noexcept { return psd; }
};

/// lambda_min((S+S^T)/2) >= -psd_tol * ||S||_1.
PsdCheck is_psd(const DenseMatrix& s, const ToleranceConfig& cfg = {});

/// Orthonormal basis of range(columns) by modified Gram-Schmidt with one
/// re-orthogonalization pass. Columns whose residual norm falls below
/// rank_tol * (largest input column norm) are dropped. May return n x 0.
DenseMatrix orthonormalize(const DenseMatrix& columns, const ToleranceConfig& cfg = {});

/// Cosines of the principal angles between range(qu) and range(qv), both
/// given by orthonormal bases: min(cols) values in [0, 1], nonincreasing.
Vector singular_cosines(const DenseMatrix& qu, const DenseMatrix& qv, const ToleranceConfig& cfg = {});

/// Largest singular value.
double spectral_norm(const DenseMatrix& m, const ToleranceConfig& cfg = {});

}  // namespace avgkit
