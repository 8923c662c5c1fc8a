#pragma once

#include <cstddef>
#include <string>

namespace hv::kernels {

/// Backend for the grid inner loops. Scalar is the reference; Avx2 must be
/// result-identical to it (the equivalence suite enforces bit-equality).
enum class Backend { Scalar, Avx2 };

/// Highest backend supported by this CPU, detected at load time.
Backend detected_backend();

Backend active_backend();
void set_backend(Backend b);
std::string backend_name(Backend b);

/// One checkerboard relaxation half-sweep on an n x n row-major grid:
/// for interior cells (i+j) % 2 == color,
///   a[ij] += omega * (0.25*(a[up]+a[down]+a[left]+a[right]) - f[ij] - a[ij]).
/// Cells of one color read only the other color, so the update order within
/// a half-sweep does not affect the result.
void relax_color(double* a, const double* f, int n, int color, double omega);

/// Max interior residual |0.25*sum4 - f - a|.
double residual_max(const double* a, const double* f, int n);

/// Sum of v[0..len) accumulated in four lanes striped by index mod 4 and
/// combined as (l0+l1)+(l2+l3); both backends produce identical bits.
double striped_sum(const double* v, size_t len);

namespace detail {
void relax_color_scalar(double* a, const double* f, int n, int color,
                        double omega);
double residual_max_scalar(const double* a, const double* f, int n);
double striped_sum_scalar(const double* v, size_t len);
#if defined(__x86_64__) || defined(_M_X64)
void relax_color_avx2(double* a, const double* f, int n, int color,
                      double omega);
double residual_max_avx2(const double* a, const double* f, int n);
double striped_sum_avx2(const double* v, size_t len);
#endif
}  // namespace detail

}  // namespace hv::kernels
