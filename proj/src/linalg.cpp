#include "avgkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "avgkit/errors.hpp"
#include "avgkit/kernels.hpp"

namespace avgkit {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kSignCutoff = 1e-12;

double off_diagonal_norm(const DenseMatrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) sum += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(sum);
}

// One Jacobi rotation annihilating a(p, q). Rows of `a` and `vt` are rotated
// with the vector kernel; the columns of the symmetric `a` are then restored
// from the rows instead of being rotated with strided access.
void rotate(DenseMatrix& a, DenseMatrix& vt, std::size_t p, std::size_t q) {
    const double apq = a(p, q);
    const double app = a(p, p);
    const double aqq = a(q, q);
    const double theta = (aqq - app) / (2.0 * apq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const std::size_t n = a.rows();

    kernels::rot(a.row(p).data(), a.row(q).data(), n, c, s);
    for (std::size_t r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        a(r, p) = a(p, r);
        a(r, q) = a(q, r);
    }
    a(p, p) = app - t * apq;
    a(q, q) = aqq + t * apq;
    a(p, q) = 0.0;
    a(q, p) = 0.0;

    kernels::rot(vt.row(p).data(), vt.row(q).data(), n, c, s);
}

void require_square(const DenseMatrix& s, const char* op) {
    if (!s.is_square())
        throw DimensionError(std::string(op) + ": expected a square matrix, got " + std::to_string(s.rows()) + "x" +
                             std::to_string(s.cols()));
}

}  // namespace

SymEigen sym_eigen(const DenseMatrix& s, const ToleranceConfig& cfg) {
    require_square(s, "sym_eigen");
    const std::size_t n = s.rows();
    DenseMatrix a = s.symmetrized();
    DenseMatrix vt = DenseMatrix::identity(n);

    const double scale = frobenius_norm(a);
    if (scale > 0.0) {
        for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
            if (off_diagonal_norm(a) <= cfg.eig_tol * scale) break;
            for (std::size_t p = 0; p + 1 < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q)
                    if (std::abs(a(p, q)) > std::numeric_limits<double>::min()) rotate(a, vt, p, q);
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    SymEigen out{Vector(n), DenseMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.eigenvalues[k] = a(src, src);
        auto v = vt.row(src);
        const auto lead = std::find_if(v.begin(), v.end(), [](double x) { return std::abs(x) > kSignCutoff; });
        const double sign = (lead != v.end() && *lead < 0.0) ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = sign * v[i];
    }
    return out;
}

PsdCheck is_psd(const DenseMatrix& s, const ToleranceConfig& cfg) {
    require_square(s, "is_psd");
    PsdCheck check;
    if (s.rows() == 0) {
        check.psd = true;
        return check;
    }
    const DenseMatrix sym = s.symmetrized();
    const SymEigen eig = sym_eigen(sym, cfg);
    check.min_eigenvalue = eig.eigenvalues.back();
    check.threshold = cfg.psd_tol * norm1(sym);
    check.psd = check.min_eigenvalue >= -check.threshold;
    return check;
}

DenseMatrix orthonormalize(const DenseMatrix& columns, const ToleranceConfig& cfg) {
    const std::size_t n = columns.rows();
    // Work on the transpose so every column is a contiguous row.
    const DenseMatrix cols = columns.transpose();
    double largest = 0.0;
    for (std::size_t j = 0; j < cols.rows(); ++j) largest = std::max(largest, norm2(cols.row(j)));
    if (largest == 0.0) return DenseMatrix(n, 0);

    std::vector<Vector> kept;
    for (std::size_t j = 0; j < cols.rows(); ++j) {
        Vector v(cols.row(j).begin(), cols.row(j).end());
        for (int pass = 0; pass < 2; ++pass)
            for (const Vector& q : kept) kernels::axpy(-kernels::dot(q.data(), v.data(), n), q.data(), v.data(), n);
        const double norm = norm2(v);
        if (norm <= cfg.rank_tol * largest) continue;
        kernels::scal(1.0 / norm, v.data(), n);
        kept.push_back(std::move(v));
    }
    return DenseMatrix::from_columns(n, kept);
}

Vector singular_cosines(const DenseMatrix& qu, const DenseMatrix& qv, const ToleranceConfig& cfg) {
    if (qu.rows() != qv.rows())
        throw DimensionError("singular_cosines: bases live in R^" + std::to_string(qu.rows()) + " and R^" +
                             std::to_string(qv.rows()));
    const std::size_t count = std::min(qu.cols(), qv.cols());
    if (count == 0) return {};
    const DenseMatrix cross = transpose_times(qu, qv);
    // The smaller Gram matrix carries the same nonzero spectrum.
    const DenseMatrix gram = qu.cols() <= qv.cols() ? cross * cross.transpose() : transpose_times(cross, cross);
    const SymEigen eig = sym_eigen(gram, cfg);
    Vector cosines(count);
    for (std::size_t k = 0; k < count; ++k)
        cosines[k] = std::clamp(std::sqrt(std::max(eig.eigenvalues[k], 0.0)), 0.0, 1.0);
    return cosines;
}

double spectral_norm(const DenseMatrix& m, const ToleranceConfig& cfg) {
    if (m.empty()) return 0.0;
    const SymEigen eig = sym_eigen(transpose_times(m, m), cfg);
    return std::sqrt(std::max(eig.eigenvalues.front(), 0.0));
}

}  // namespace avgkit
