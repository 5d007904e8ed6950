#include "avgkit/subspace.hpp"

#include <algorithm>
#include <string>

#include "avgkit/errors.hpp"
#include "avgkit/linalg.hpp"

namespace avgkit {

namespace {

constexpr double kOrthonormalTol = 1e-10;

void require_same_ambient(const Subspace& u, const Subspace& v, const char* op) {
    if (u.ambient_dim() != v.ambient_dim())
        throw DimensionError(std::string(op) + ": subspaces live in R^" + std::to_string(u.ambient_dim()) +
                             " and R^" + std::to_string(v.ambient_dim()));
}

std::size_t count_clustered(const Vector& cosines, const ToleranceConfig& cfg) {
    return static_cast<std::size_t>(
        std::count_if(cosines.begin(), cosines.end(), [&](double c) { return c >= 1.0 - cfg.cluster_tol; }));
}

}  // namespace

Subspace Subspace::span(const DenseMatrix& columns, const ToleranceConfig& cfg) {
    return Subspace(orthonormalize(columns, cfg));
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vector>& vectors, const ToleranceConfig& cfg) {
    return span(DenseMatrix::from_columns(ambient_dim, vectors), cfg);
}

Subspace Subspace::from_orthonormal(DenseMatrix basis) {
    if (basis.cols() > basis.rows()) throw DimensionError("basis has more columns than rows");
    const DenseMatrix gram = transpose_times(basis, basis);
    if (max_abs_diff(gram, DenseMatrix::identity(basis.cols())) > kOrthonormalTol)
        throw DomainError("basis columns are not orthonormal");
    return Subspace(std::move(basis));
}

Subspace Subspace::zero(std::size_t ambient_dim) { return Subspace(DenseMatrix(ambient_dim, 0)); }

Subspace Subspace::full(std::size_t ambient_dim) { return Subspace(DenseMatrix::identity(ambient_dim)); }

DenseMatrix projector(const Subspace& s) {
    const DenseMatrix& q = s.basis();
    return q * q.transpose();
}

DenseMatrix reflector(const Subspace& s) {
    return 2.0 * projector(s) - DenseMatrix::identity(s.ambient_dim());
}

Subspace complement(const Subspace& s, const ToleranceConfig& cfg) {
    const std::size_t n = s.ambient_dim();
    if (s.is_zero()) return Subspace::full(n);
    if (s.is_full()) return Subspace::zero(n);
    // Eigenvectors of I - P with eigenvalue 1 span the complement.
    const SymEigen eig = sym_eigen(DenseMatrix::identity(n) - projector(s), cfg);
    return Subspace::span(eig.eigenvectors.leading_columns(n - s.dim()), cfg);
}

AngleReport angles(const Subspace& u, const Subspace& v, const ToleranceConfig& cfg) {
    require_same_ambient(u, v, "angles");
    AngleReport report;
    report.cosines = singular_cosines(u.basis(), v.basis(), cfg);
    report.dim_intersection = count_clustered(report.cosines, cfg);
    if (!report.cosines.empty()) report.dixmier = report.cosines.front();
    if (report.dim_intersection < report.cosines.size()) report.friedrichs = report.cosines[report.dim_intersection];
    return report;
}

Subspace intersection(const Subspace& u, const Subspace& v, const ToleranceConfig& cfg) {
    require_same_ambient(u, v, "intersection");
    const std::size_t n = u.ambient_dim();
    if (u.is_zero() || v.is_zero()) return Subspace::zero(n);
    const std::size_t k = angles(u, v, cfg).dim_intersection;
    if (k == 0) return Subspace::zero(n);
    // Left singular vectors of U^T V, lifted into R^n.
    const DenseMatrix cross = transpose_times(u.basis(), v.basis());
    const SymEigen eig = sym_eigen(cross * cross.transpose(), cfg);
    return Subspace::span(u.basis() * eig.eigenvectors.leading_columns(k), cfg);
}

bool is_contained(const Subspace& u, const Subspace& v, const ToleranceConfig& cfg) {
    require_same_ambient(u, v, "is_contained");
    if (u.is_zero()) return true;
    if (u.dim() > v.dim()) return false;
    return angles(u, v, cfg).dim_intersection == u.dim();
}

}  // namespace avgkit
