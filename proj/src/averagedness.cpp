#include "avgkit/averagedness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "avgkit/errors.hpp"
#include "avgkit/kernels.hpp"

namespace avgkit {

namespace {

void require_square(const DenseMatrix& m, const char* op) {
    if (!m.is_square())
        throw DimensionError(std::string(op) + ": expected a square matrix, got " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()));
}

void require_nonexpansive(const DenseMatrix& m, const ToleranceConfig& cfg, const char* op) {
    const PsdCheck check = is_nonexpansive(m, cfg);
    if (!check.psd)
        throw PreconditionError(std::string(op) + ": operator is not nonexpansive (lambda_min(I - M^T M) = " +
                                    std::to_string(check.min_eigenvalue) + ")",
                                check.min_eigenvalue);
}

bool is_identity(const DenseMatrix& m, const ToleranceConfig& cfg) {
    return max_abs_diff(m, DenseMatrix::identity(m.rows())) <= cfg.rank_tol;
}

double min_eigenvalue(const DenseMatrix& s, const ToleranceConfig& cfg) {
    if (s.rows() == 0) return 0.0;
    return sym_eigen(s, cfg).eigenvalues.back();
}

ModulusCertificate certify(const DenseMatrix& m, double kappa, double achieving, const ToleranceConfig& cfg) {
    ModulusCertificate cert;
    cert.achieving_eigenvalue = achieving;
    cert.psd_margin_at_kappa = min_eigenvalue(averagedness_matrix(m, kappa), cfg);
    cert.psd_margin_below = min_eigenvalue(averagedness_matrix(m, kappa - kCertificateStep), cfg);
    return cert;
}

Vector normalized(Vector v) {
    const double norm = norm2(v);
    if (norm > 0.0) kernels::scal(1.0 / norm, v.data(), v.size());
    return v;
}

}  // namespace

std::string_view to_string(ModulusRoute route) {
    switch (route) {
        case ModulusRoute::ExactEig:
            return "exact_eig";
        case ModulusRoute::Bisection:
            return "bisection";
        case ModulusRoute::ClosedForm:
            return "closed_form";
        case ModulusRoute::QuotientSample:
            return "quotient_sample";
    }
    return "unknown";
}

std::optional<ModulusRoute> parse_modulus_route(std::string_view name) {
    for (ModulusRoute r : {ModulusRoute::ExactEig, ModulusRoute::Bisection, ModulusRoute::ClosedForm,
                           ModulusRoute::QuotientSample})
        if (to_string(r) == name) return r;
    return std::nullopt;
}

PsdCheck is_nonexpansive(const DenseMatrix& m, const ToleranceConfig& cfg) {
    require_square(m, "is_nonexpansive");
    // Absolute slack: for isometries I - M^T M is pure roundoff, so a
    // 1-norm-relative margin would collapse to nothing.
    PsdCheck check;
    check.min_eigenvalue = min_eigenvalue(DenseMatrix::identity(m.rows()) - transpose_times(m, m), cfg);
    check.threshold = cfg.psd_tol;
    check.psd = check.min_eigenvalue >= -check.threshold;
    return check;
}

DenseMatrix averagedness_matrix(const DenseMatrix& m, double kappa) {
    require_square(m, "averagedness_matrix");
    const std::size_t n = m.rows();
    const DenseMatrix sum = m + m.transpose();
    DenseMatrix s = (2.0 * kappa - 1.0) * DenseMatrix::identity(n);
    s -= transpose_times(m, m);
    s += (1.0 - kappa) * sum;
    return s;
}

PsdCheck is_kappa_averaged(const DenseMatrix& m, double kappa, const ToleranceConfig& cfg) {
    require_square(m, "is_kappa_averaged");
    if (!(kappa >= 0.0 && kappa <= 1.0))
        throw DomainError("is_kappa_averaged: kappa must lie in [0, 1], got " + std::to_string(kappa));
    require_nonexpansive(m, cfg, "is_kappa_averaged");
    if (kappa == 0.0) {
        // Only the identity is 0-averaged; report -||I - M||_2^2 as the margin.
        const DenseMatrix diff = DenseMatrix::identity(m.rows()) - m;
        const double gap = spectral_norm(diff, cfg);
        return {is_identity(m, cfg), -gap * gap, cfg.rank_tol};
    }
    return is_psd(averagedness_matrix(m, kappa), cfg);
}

PencilReduction reduce_pencil(const DenseMatrix& a, const DenseMatrix& b, const ToleranceConfig& cfg) {
    require_square(a, "smallest_gamma");
    require_square(b, "smallest_gamma");
    if (a.rows() != b.rows()) throw DimensionError("smallest_gamma: A and B differ in size");
    const std::size_t n = a.rows();

    for (const auto* mat : {&a, &b}) {
        if (max_abs_diff(*mat, mat->transpose()) > cfg.psd_tol * std::max(1.0, norm1(*mat)))
            throw PreconditionError("smallest_gamma: input matrix is not symmetric");
        const PsdCheck psd = is_psd(*mat, cfg);
        if (!psd.psd)
            throw PreconditionError("smallest_gamma: input matrix is not positive semidefinite (lambda_min = " +
                                        std::to_string(psd.min_eigenvalue) + ")",
                                    psd.min_eigenvalue);
    }

    PencilReduction out;
    out.b_eigen = sym_eigen(b, cfg);
    const double top = n == 0 ? 0.0 : out.b_eigen.eigenvalues.front();
    if (top > 0.0)
        out.d = static_cast<std::size_t>(std::count_if(out.b_eigen.eigenvalues.begin(), out.b_eigen.eigenvalues.end(),
                                                       [&](double beta) { return beta > cfg.rank_tol * top; }));

    // ker B must lie inside ker A, otherwise no finite gamma exists.
    if (out.d < n) {
        DenseMatrix null_basis(n, n - out.d);
        for (std::size_t j = out.d; j < n; ++j) null_basis.set_column(j - out.d, out.b_eigen.eigenvectors.column(j));
        const DenseMatrix restricted = transpose_times(null_basis, a * null_basis);
        const double leak = sym_eigen(restricted, cfg).eigenvalues.front();
        // Directions cut by the rank threshold may still carry up to rank_tol * top of B-mass.
        const double allowed = cfg.psd_tol * norm1(a) + cfg.rank_tol * top;
        if (leak > allowed)
            throw InfeasibleError("smallest_gamma: ker B is not contained in ker A (leak " + std::to_string(leak) +
                                  ")");
    }

    out.range_basis = out.b_eigen.eigenvectors.leading_columns(out.d);
    if (out.d == 0) return out;

    Vector inv_sqrt(out.d);
    for (std::size_t i = 0; i < out.d; ++i) inv_sqrt[i] = 1.0 / std::sqrt(out.b_eigen.eigenvalues[i]);
    DenseMatrix c = transpose_times(out.range_basis, a * out.range_basis);
    for (std::size_t i = 0; i < out.d; ++i)
        for (std::size_t j = 0; j < out.d; ++j) c(i, j) *= inv_sqrt[i] * inv_sqrt[j];
    out.reduced = c.symmetrized();
    out.reduced_eigen = sym_eigen(out.reduced, cfg);
    out.gamma = std::max(out.reduced_eigen.eigenvalues.front(), 0.0);
    return out;
}

double smallest_gamma(const DenseMatrix& a, const DenseMatrix& b, const ToleranceConfig& cfg) {
    return reduce_pencil(a, b, cfg).gamma;
}

ModulusReport kappa_exact(const DenseMatrix& m, const ToleranceConfig& cfg) {
    require_square(m, "kappa_exact");
    require_nonexpansive(m, cfg, "kappa_exact");
    ModulusReport report;
    report.route = ModulusRoute::ExactEig;
    if (is_identity(m, cfg)) return report;

    const std::size_t n = m.rows();
    const DenseMatrix id = DenseMatrix::identity(n);
    const DenseMatrix residual = id - m;
    const DenseMatrix a = transpose_times(residual, residual);
    const DenseMatrix b = 2.0 * id - (m + m.transpose());
    const PencilReduction red = reduce_pencil(a, b, cfg);

    report.d = red.d;
    if (red.d == 0) return report;
    const double achieving = red.reduced_eigen.eigenvalues.front();
    report.kappa = std::clamp(achieving, 0.0, 1.0);

    ModulusCertificate cert = certify(m, report.kappa, achieving, cfg);
    // z = U D^-1 y maps the top eigenvector of C back to R^n.
    Vector y = red.reduced_eigen.eigenvectors.column(0);
    for (std::size_t i = 0; i < red.d; ++i) y[i] /= std::sqrt(red.b_eigen.eigenvalues[i]);
    cert.witness = normalized(red.range_basis * y);
    report.certificate = std::move(cert);
    return report;
}

ModulusReport kappa_bisection(const DenseMatrix& m, const ToleranceConfig& cfg) {
    require_square(m, "kappa_bisection");
    require_nonexpansive(m, cfg, "kappa_bisection");
    ModulusReport report;
    report.route = ModulusRoute::Bisection;
    if (is_identity(m, cfg)) return report;

    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > cfg.bisect_tol) {
        const double mid = 0.5 * (lo + hi);
        if (is_psd(averagedness_matrix(m, mid), cfg).psd)
            hi = mid;
        else
            lo = mid;
    }
    report.kappa = hi;
    return report;
}

double kappa_quotient_sample(const DenseMatrix& m, std::size_t sample_count, std::uint64_t seed,
                             const ToleranceConfig& cfg) {
    require_square(m, "kappa_quotient_sample");
    require_nonexpansive(m, cfg, "kappa_quotient_sample");
    if (is_identity(m, cfg)) throw DomainError("kappa_quotient_sample: the quotient is undefined for the identity");

    const std::size_t n = m.rows();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Vector z(n);
    double best = 0.0;
    for (std::size_t k = 0; k < sample_count; ++k) {
        for (double& zi : z) zi = gauss(rng);
        const double norm = norm2(z);
        if (norm == 0.0) continue;
        kernels::scal(1.0 / norm, z.data(), n);
        Vector r = m * z;
        for (std::size_t i = 0; i < n; ++i) r[i] = z[i] - r[i];
        const double rr = dot(r, r);
        if (std::sqrt(rr) <= cfg.rank_tol) continue;
        const double denom = 2.0 * dot(z, r);
        if (denom <= 0.0) continue;
        best = std::max(best, rr / denom);
    }
    return best;
}

Subspace fixed_space(const DenseMatrix& r, const ToleranceConfig& cfg) {
    require_square(r, "fixed_space");
    const std::size_t n = r.rows();
    const DenseMatrix residual = DenseMatrix::identity(n) - r;
    const SymEigen eig = sym_eigen(transpose_times(residual, residual), cfg);
    const double top = n == 0 ? 0.0 : eig.eigenvalues.front();
    if (top <= cfg.rank_tol) return Subspace::full(n);
    std::vector<Vector> kernel;
    for (std::size_t j = 0; j < n; ++j)
        if (eig.eigenvalues[j] <= cfg.rank_tol * top) kernel.push_back(eig.eigenvectors.column(j));
    return Subspace::span(n, kernel, cfg);
}

ModulusReport kappa_relaxed(const DenseMatrix& r, double beta, const ToleranceConfig& cfg) {
    require_square(r, "kappa_relaxed");
    if (!(beta >= 0.0 && beta <= 1.0))
        throw DomainError("kappa_relaxed: beta must lie in [0, 1], got " + std::to_string(beta));
    require_nonexpansive(r, cfg, "kappa_relaxed");

    ModulusReport report;
    report.route = ModulusRoute::ExactEig;
    const std::size_t n = r.rows();
    const Subspace fixed = fixed_space(r, cfg);
    if (beta == 0.0 || fixed.is_full()) return report;

    const DenseMatrix w = complement(fixed, cfg).basis();
    const ModulusReport inner = kappa_exact(transpose_times(w, r * w), cfg);
    report.kappa = std::clamp(beta * inner.kappa, 0.0, 1.0);
    report.d = inner.d;

    const DenseMatrix t = (1.0 - beta) * DenseMatrix::identity(n) + beta * r;
    const double achieving = inner.certificate ? beta * inner.certificate->achieving_eigenvalue : report.kappa;
    ModulusCertificate cert = certify(t, report.kappa, achieving, cfg);
    if (inner.certificate && inner.certificate->witness) cert.witness = normalized(w * *inner.certificate->witness);
    report.certificate = std::move(cert);
    return report;
}

double kappa_scalar(ScalarModulusInput input) {
    const double mu = input.inf_derivative;
    if (!(mu >= -1.0 && mu <= 1.0))
        throw DomainError("kappa_scalar: inf g' must lie in [-1, 1] for a nonexpansive g, got " + std::to_string(mu));
    return 0.5 * (1.0 - mu);
}

}  // namespace avgkit
