#include "avgkit/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace avgkit::kernels {

namespace detail {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += x[i] * y[i];
    return sum;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void rot_scalar(double* x, double* y, std::size_t n, double c, double s) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

void scal_scalar(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

}  // namespace detail

namespace {

constexpr KernelTable kScalar{Backend::Scalar, "scalar", detail::dot_scalar, detail::axpy_scalar,
                              detail::rot_scalar, detail::scal_scalar};

#if defined(AVGKIT_HAVE_AVX2)
constexpr KernelTable kAvx2{Backend::Avx2, "avx2", detail::dot_avx2, detail::axpy_avx2,
                            detail::rot_avx2, detail::scal_avx2};
#endif

#if defined(AVGKIT_HAVE_NEON)
constexpr KernelTable kNeon{Backend::Neon, "neon", detail::dot_neon, detail::axpy_neon,
                            detail::rot_neon, detail::scal_neon};
#endif

bool cpu_has_avx2() noexcept {
#if defined(AVGKIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const KernelTable& select() {
    if (const char* forced = std::getenv("AVGKIT_SIMD")) {
        const std::string name{forced};
        if (name == "scalar") return kScalar;
        if (name == "avx2" && available(Backend::Avx2)) return table(Backend::Avx2);
        if (name == "neon" && available(Backend::Neon)) return table(Backend::Neon);
    }
    if (available(Backend::Avx2)) return table(Backend::Avx2);
    if (available(Backend::Neon)) return table(Backend::Neon);
    return kScalar;
}

}  // namespace

bool available(Backend backend) noexcept {
    switch (backend) {
        case Backend::Scalar:
            return true;
        case Backend::Avx2:
            return cpu_has_avx2();
        case Backend::Neon:
#if defined(AVGKIT_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

std::vector<Backend> available_backends() {
    std::vector<Backend> out;
    for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon})
        if (available(b)) out.push_back(b);
    return out;
}

const KernelTable& table(Backend backend) {
    if (!available(backend)) throw std::invalid_argument("SIMD backend not available on this host");
    switch (backend) {
#if defined(AVGKIT_HAVE_AVX2)
        case Backend::Avx2:
            return kAvx2;
#endif
#if defined(AVGKIT_HAVE_NEON)
        case Backend::Neon:
            return kNeon;
#endif
        default:
            return kScalar;
    }
}

const KernelTable& active() {
    static const KernelTable& selected = select();
    return selected;
}

}  // namespace avgkit::kernels
