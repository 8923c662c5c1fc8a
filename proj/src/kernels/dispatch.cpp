#include "hv/kernels/stencil.hpp"

namespace hv::kernels {

namespace {

Backend detect() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2")) return Backend::Avx2;
#endif
    return Backend::Scalar;
}

Backend g_backend = detect();

}  // namespace

Backend detected_backend() {
    static const Backend b = detect();
    return b;
}

Backend active_backend() { return g_backend; }

void set_backend(Backend b) {
#if !defined(__x86_64__) && !defined(_M_X64)
    b = Backend::Scalar;
#endif
    g_backend = b;
}

std::string backend_name(Backend b) {
    return b == Backend::Avx2 ? "avx2" : "scalar";
}

void relax_color(double* a, const double* f, int n, int color, double omega) {
#if defined(__x86_64__) || defined(_M_X64)
    if (g_backend == Backend::Avx2)
        return detail::relax_color_avx2(a, f, n, color, omega);
#endif
    detail::relax_color_scalar(a, f, n, color, omega);
}

double residual_max(const double* a, const double* f, int n) {
#if defined(__x86_64__) || defined(_M_X64)
    if (g_backend == Backend::Avx2)
        return detail::residual_max_avx2(a, f, n);
#endif
    return detail::residual_max_scalar(a, f, n);
}

double striped_sum(const double* v, size_t len) {
#if defined(__x86_64__) || defined(_M_X64)
    if (g_backend == Backend::Avx2)
        return detail::striped_sum_avx2(v, len);
#endif
    return detail::striped_sum_scalar(v, len);
}

}  // namespace hv::kernels
