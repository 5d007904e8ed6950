#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

// Data-parallel inner loops used by the eigensolver, Gram-Schmidt and the
// matrix products. Each kernel has a scalar reference implementation and
// optional SIMD variants; the best variant supported by the host CPU is
// picked once at first use.

namespace avgkit::kernels {

enum class Backend { Scalar, Avx2, Neon };

struct KernelTable {
    Backend backend;
    std::string_view name;
    /// sum_i x[i] * y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    /// y += a * x
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    /// (x, y) <- (c x - s y, s x + c y)
    void (*rot)(double* x, double* y, std::size_t n, double c, double s);
    /// x *= a
    void (*scal)(double a, double* x, std::size_t n);
};

/// Table for the given backend. Throws std::invalid_argument if the backend
/// was not compiled in or the CPU does not support it.
const KernelTable& table(Backend backend);

bool available(Backend backend) noexcept;

/// All backends usable on this host, scalar first.
std::vector<Backend> available_backends();

/// Table selected for this process. AVGKIT_SIMD=scalar forces the reference path.
const KernelTable& active();

inline double dot(const double* x, const double* y, std::size_t n) { return active().dot(x, y, n); }
inline void axpy(double a, const double* x, double* y, std::size_t n) { active().axpy(a, x, y, n); }
inline void rot(double* x, double* y, std::size_t n, double c, double s) { active().rot(x, y, n, c, s); }
inline void scal(double a, double* x, std::size_t n) { active().scal(a, x, n); }

namespace detail {
// Variant entry points, defined in per-ISA translation units.
double dot_scalar(const double* x, const double* y, std::size_t n);
void axpy_scalar(double a, const double* x, double* y, std::size_t n);
void rot_scalar(double* x, double* y, std::size_t n, double c, double s);
void scal_scalar(double a, double* x, std::size_t n);

double dot_avx2(const double* x, const double* y, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void rot_avx2(double* x, double* y, std::size_t n, double c, double s);
void scal_avx2(double a, double* x, std::size_t n);

double dot_neon(const double* x, const double* y, std::size_t n);
void axpy_neon(double a, const double* x, double* y, std::size_t n);
void rot_neon(double* x, double* y, std::size_t n, double c, double s);
void scal_neon(double a, double* x, std::size_t n);
}  // namespace detail

}  // namespace avgkit::kernels
