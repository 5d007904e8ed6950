#include "avgkit/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "avgkit/errors.hpp"
#include "avgkit/kernels.hpp"

namespace avgkit {

namespace {

void require_finite(std::span<const double> values) {
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError("matrix entries must be finite");
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols)
        throw DimensionError("entry count " + std::to_string(data_.size()) + " does not match " +
                             std::to_string(rows) + "x" + std::to_string(cols));
    require_finite(data_);
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("ragged initializer list");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    require_finite(data_);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
    DenseMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    require_finite(m.data_);
    return m;
}

DenseMatrix DenseMatrix::from_columns(std::size_t rows, const std::vector<Vector>& columns) {
    DenseMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
    require_finite(m.data_);
    return m;
}

Vector DenseMatrix::column(std::size_t j) const {
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

void DenseMatrix::set_column(std::size_t j, std::span<const double> values) {
    if (values.size() != rows_) throw DimensionError("column length does not match row count");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

DenseMatrix DenseMatrix::leading_columns(std::size_t count) const {
    count = std::min(count, cols_);
    DenseMatrix out(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_), count, out.row(i).begin());
    return out;
}

DenseMatrix DenseMatrix::symmetrized() const {
    if (!is_square()) throw DimensionError("symmetrized: matrix is not square");
    DenseMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) s(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
    return s;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
    require_same_shape(*this, other, "operator+");
    kernels::axpy(1.0, other.data_.data(), data_.data(), data_.size());
    return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
    require_same_shape(*this, other, "operator-");
    kernels::axpy(-1.0, other.data_.data(), data_.data(), data_.size());
    return *this;
}

DenseMatrix& DenseMatrix::operator*=(double scale) {
    kernels::scal(scale, data_.data(), data_.size());
    return *this;
}

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs += rhs; }
DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs -= rhs; }
DenseMatrix operator*(double scale, DenseMatrix m) { return m *= scale; }

DenseMatrix operator*(const DenseMatrix& lhs, const DenseMatrix& rhs) {
    if (lhs.cols() != rhs.rows())
        throw DimensionError("matrix product: inner dimensions " + std::to_string(lhs.cols()) + " and " +
                             std::to_string(rhs.rows()) + " differ");
    DenseMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        double* dst = out.row(i).data();
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const double a = lhs(i, k);
            if (a != 0.0) kernels::axpy(a, rhs.row(k).data(), dst, rhs.cols());
        }
    }
    return out;
}

Vector operator*(const DenseMatrix& m, std::span<const double> x) {
    if (m.cols() != x.size()) throw DimensionError("matrix-vector product: length mismatch");
    Vector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) out[i] = kernels::dot(m.row(i).data(), x.data(), x.size());
    return out;
}

DenseMatrix transpose_times(const DenseMatrix& lhs, const DenseMatrix& rhs) {
    if (lhs.rows() != rhs.rows()) throw DimensionError("transpose_times: row counts differ");
    DenseMatrix out(lhs.cols(), rhs.cols());
    for (std::size_t k = 0; k < lhs.rows(); ++k) {
        const double* src = rhs.row(k).data();
        for (std::size_t i = 0; i < lhs.cols(); ++i) {
            const double a = lhs(k, i);
            if (a != 0.0) kernels::axpy(a, src, out.row(i).data(), rhs.cols());
        }
    }
    return out;
}

double norm1(const DenseMatrix& m) {
    double best = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) sum += std::abs(m(i, j));
        best = std::max(best, sum);
    }
    return best;
}

double frobenius_norm(const DenseMatrix& m) { return norm2(m.data()); }

double max_abs(const DenseMatrix& m) {
    double best = 0.0;
    for (double v : m.data()) best = std::max(best, std::abs(v));
    return best;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double best = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) best = std::max(best, std::abs(a.data()[k] - b.data()[k]));
    return best;
}

double dot(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DimensionError("dot: length mismatch");
    return kernels::dot(x.data(), y.data(), x.size());
}

double norm2(std::span<const double> x) { return std::sqrt(kernels::dot(x.data(), x.data(), x.size())); }

}  // namespace avgkit
