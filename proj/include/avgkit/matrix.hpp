#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace avgkit {

using Vector = std::vector<double>;

/// Dense real matrix stored row-major. Entries are finite on construction.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static DenseMatrix diagonal(std::span<const double> diag);
    /// Matrix whose columns are the given vectors (all of length `rows`).
    static DenseMatrix from_columns(std::size_t rows, const std::vector<Vector>& columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    Vector column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const double> values);

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    DenseMatrix transpose() const;
    /// First `count` columns.
    DenseMatrix leading_columns(std::size_t count) const;
    /// (S + S^T) / 2; requires a square matrix.
    DenseMatrix symmetrized() const;

    DenseMatrix& operator+=(const DenseMatrix& other);
    DenseMatrix& operator-=(const DenseMatrix& other);
    DenseMatrix& operator*=(double scale);

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator*(double scale, DenseMatrix m);
DenseMatrix operator*(const DenseMatrix& lhs, const DenseMatrix& rhs);
Vector operator*(const DenseMatrix& m, std::span<const double> x);

/// lhs^T * rhs without forming the transpose.
DenseMatrix transpose_times(const DenseMatrix& lhs, const DenseMatrix& rhs);

/// Maximum absolute column sum.
double norm1(const DenseMatrix& m);
double frobenius_norm(const DenseMatrix& m);
double max_abs(const DenseMatrix& m);
/// max |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

}  // namespace avgkit
