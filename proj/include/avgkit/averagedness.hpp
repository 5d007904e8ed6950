#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "avgkit/linalg.hpp"
#include "avgkit/matrix.hpp"
#include "avgkit/subspace.hpp"
#include "avgkit/tolerance.hpp"

namespace avgkit {

enum class ModulusRoute { ExactEig, Bisection, ClosedForm, QuotientSample };

std::string_view to_string(ModulusRoute route);
std::optional<ModulusRoute> parse_modulus_route(std::string_view name);

/// Evidence that a reported kappa is both feasible and minimal.
struct ModulusCertificate {
    double achieving_eigenvalue = 0.0;  // largest eigenvalue of the reduced pencil matrix
    double psd_margin_at_kappa = 0.0;   // lambda_min(kappa B - A)
    double psd_margin_below = 0.0;      // lambda_min((kappa - 1e-6) B - A), expected negative
    std::optional<Vector> witness;      // unit z attaining the averagedness quotient

    bool operator==(const ModulusCertificate&) const = default;
};

struct ModulusReport {
    double kappa = 0.0;
    ModulusRoute route = ModulusRoute::ExactEig;
    std::optional<ModulusCertificate> certificate;
    std::size_t d = 0;  // number of positive eigenvalues of B = 2I - (M + M^T)

    bool operator==(const ModulusReport&) const = default;
};

struct ScalarModulusInput {
    double inf_derivative = 0.0;  // inf g'(R), must lie in [-1, 1]
};

/// Step below kappa used for the minimality half of the certificate.
inline constexpr double kCertificateStep = 1e-6;

/// I - M^T M is PSD.
PsdCheck is_nonexpansive(const DenseMatrix& m, const ToleranceConfig& cfg = {});

/// (2k - 1) I - (M^T M - (1 - k)(M + M^T)), which equals k B - A with
/// A = (I - M)^T (I - M) and B = 2I - (M + M^T). No domain checks on k.
DenseMatrix averagedness_matrix(const DenseMatrix& m, double kappa);

/// PSD test of averagedness_matrix(m, kappa). kappa = 0 reduces to M == I
/// (within rank_tol). Throws DomainError for kappa outside [0, 1] and
/// PreconditionError when M is not nonexpansive.
PsdCheck is_kappa_averaged(const DenseMatrix& m, double kappa, const ToleranceConfig& cfg = {});

/// Intermediate quantities of the pencil reduction behind smallest_gamma.
struct PencilReduction {
    SymEigen b_eigen;           // full spectrum of B
    std::size_t d = 0;          // eigenvalues of B above rank_tol * lambda_max
    DenseMatrix range_basis;    // n x d, eigenvectors for those eigenvalues
    DenseMatrix reduced;        // C = D^-1 U^T A U D^-1, d x d
    SymEigen reduced_eigen;     // spectrum of C
    double gamma = 0.0;         // lambda_max(C) clamped below at 0
};

/// Smallest gamma >= 0 with A <= gamma B for symmetric PSD A, B.
/// Throws InfeasibleError when ker B is not inside ker A and
/// PreconditionError for asymmetric or indefinite input.
PencilReduction reduce_pencil(const DenseMatrix& a, const DenseMatrix& b, const ToleranceConfig& cfg = {});
double smallest_gamma(const DenseMatrix& a, const DenseMatrix& b, const ToleranceConfig& cfg = {});

/// Modulus of averagedness through the generalized eigenvalue reduction.
ModulusReport kappa_exact(const DenseMatrix& m, const ToleranceConfig& cfg = {});

/// Bisection on the monotone predicate is_kappa_averaged; independent of kappa_exact.
ModulusReport kappa_bisection(const DenseMatrix& m, const ToleranceConfig& cfg = {});

/// Lower bound: max of |z - Mz|^2 / (2 <z, z - Mz>) over random unit vectors.
/// Throws DomainError when M is the identity.
double kappa_quotient_sample(const DenseMatrix& m, std::size_t sample_count, std::uint64_t seed,
                             const ToleranceConfig& cfg = {});

/// Fix R as the near-null space of (I - R)^T (I - R).
Subspace fixed_space(const DenseMatrix& r, const ToleranceConfig& cfg = {});

/// kappa((1 - beta) I + beta R) via restriction of R to (Fix R)^perp.
ModulusReport kappa_relaxed(const DenseMatrix& r, double beta, const ToleranceConfig& cfg = {});

/// (1 - inf g') / 2 for a differentiable nonexpansive g: R -> R.
double kappa_scalar(ScalarModulusInput input);

}  // namespace avgkit
