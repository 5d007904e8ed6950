#pragma once

#include <cstddef>

#include "avgkit/matrix.hpp"
#include "avgkit/tolerance.hpp"

namespace avgkit {

/// Linear subspace of R^n held as an orthonormal column basis (n x d, d may be 0).
/// Immutable once built.
class Subspace {
public:
    /// Span of arbitrary columns; orthonormalized with cfg.rank_tol.
    static Subspace span(const DenseMatrix& columns, const ToleranceConfig& cfg = {});
    /// Span of a list of vectors in R^n.
    static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors, const ToleranceConfig& cfg = {});
    /// Adopts a basis that is already orthonormal; throws DomainError if B^T B != I within 1e-10.
    static Subspace from_orthonormal(DenseMatrix basis);
    static Subspace zero(std::size_t ambient_dim);
    static Subspace full(std::size_t ambient_dim);

    std::size_t ambient_dim() const noexcept { return basis_.rows(); }
    std::size_t dim() const noexcept { return basis_.cols(); }
    const DenseMatrix& basis() const noexcept { return basis_; }
    bool is_zero() const noexcept { return dim() == 0; }
    bool is_full() const noexcept { return dim() == ambient_dim(); }

private:
    explicit Subspace(DenseMatrix basis) : basis_(std::move(basis)) {}
    DenseMatrix basis_;
};

/// Principal-angle summary of a subspace pair.
struct AngleReport {
    Vector cosines;                    // nonincreasing
    std::size_t dim_intersection = 0;  // cosines >= 1 - cluster_tol
    double dixmier = 0.0;              // c_D, first cosine or 0
    double friedrichs = 0.0;           // c_F, cosine right after the intersection block, or 0

    bool operator==(const AngleReport&) const = default;
};

/// Orthogonal projector Q Q^T.
DenseMatrix projector(const Subspace& s);

/// 2 P - I, i.e. P_S - P_{S^perp}.
DenseMatrix reflector(const Subspace& s);

Subspace complement(const Subspace& s, const ToleranceConfig& cfg = {});

AngleReport angles(const Subspace& u, const Subspace& v, const ToleranceConfig& cfg = {});

/// Principal vectors of u whose cosine against v is >= 1 - cluster_tol.
Subspace intersection(const Subspace& u, const Subspace& v, const ToleranceConfig& cfg = {});

/// u is contained in v, decided with the same cosine cutoff as angles().
bool is_contained(const Subspace& u, const Subspace& v, const ToleranceConfig& cfg = {});

}  // namespace avgkit
