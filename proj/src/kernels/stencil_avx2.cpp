#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "hv/kernels/stencil.hpp"

namespace hv::kernels::detail {

// Lane arithmetic mirrors the scalar reference op-for-op (no FMA), so the
// two backends agree bit-for-bit.

void relax_color_avx2(double* a, const double* f, int n, int color,
                      double omega) {
    const __m256d vquarter = _mm256_set1_pd(0.25);
    const __m256d vomega = _mm256_set1_pd(omega);
    alignas(32) const double mask_even[4] = {-1.0, 0.0, -1.0, 0.0};
    alignas(32) const double mask_odd[4] = {0.0, -1.0, 0.0, -1.0};

    for (int i = 1; i < n - 1; ++i) {
        double* row = a + size_t(i) * n;
        const double* up = row + n;
        const double* down = row - n;
        const double* fr = f + size_t(i) * n;
        int j0 = 1 + ((i + 1 + color) & 1);
        // Lane activity for a vector starting at j=1: lane l is active iff
        // (1 + l) has the parity of j0, i.e. iff l parity == (j0 + 1) % 2.
        const __m256d mask = _mm256_load_pd((j0 == 1) ? mask_even : mask_odd);

        int j = 1;
        for (; j + 4 <= n - 1; j += 4) {
            __m256d old = _mm256_loadu_pd(row + j);
            __m256d sum = _mm256_add_pd(_mm256_loadu_pd(up + j),
                                        _mm256_loadu_pd(down + j));
            sum = _mm256_add_pd(sum, _mm256_loadu_pd(row + j - 1));
            sum = _mm256_add_pd(sum, _mm256_loadu_pd(row + j + 1));
            __m256d avg = _mm256_mul_pd(vquarter, sum);
            __m256d delta = _mm256_sub_pd(
                _mm256_sub_pd(avg, _mm256_loadu_pd(fr + j)), old);
            __m256d upd = _mm256_add_pd(old, _mm256_mul_pd(vomega, delta));
            _mm256_storeu_pd(row + j,
                             _mm256_blendv_pd(old, upd, mask));
        }
        int jt = j + ((j + i + color) & 1);
        for (; jt < n - 1; jt += 2) {
            double avg =
                0.25 * (up[jt] + down[jt] + row[jt - 1] + row[jt + 1]);
            row[jt] += omega * (avg - fr[jt] - row[jt]);
        }
    }
}

double residual_max_avx2(const double* a, const double* f, int n) {
    const __m256d vquarter = _mm256_set1_pd(0.25);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d vworst = _mm256_setzero_pd();
    double worst = 0.0;
    for (int i = 1; i < n - 1; ++i) {
        const double* row = a + size_t(i) * n;
        const double* up = row + n;
        const double* down = row - n;
        const double* fr = f + size_t(i) * n;
        int j = 1;
        for (; j + 4 <= n - 1; j += 4) {
            __m256d sum = _mm256_add_pd(_mm256_loadu_pd(up + j),
                                        _mm256_loadu_pd(down + j));
            sum = _mm256_add_pd(sum, _mm256_loadu_pd(row + j - 1));
            sum = _mm256_add_pd(sum, _mm256_loadu_pd(row + j + 1));
            __m256d avg = _mm256_mul_pd(vquarter, sum);
            __m256d r = _mm256_sub_pd(
                _mm256_sub_pd(avg, _mm256_loadu_pd(fr + j)),
                _mm256_loadu_pd(row + j));
            vworst = _mm256_max_pd(vworst, _mm256_andnot_pd(sign_mask, r));
        }
        for (; j < n - 1; ++j) {
            double avg = 0.25 * (up[j] + down[j] + row[j - 1] + row[j + 1]);
            double r = std::fabs(avg - fr[j] - row[j]);
            if (r > worst) worst = r;
        }
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vworst);
    for (double l : lanes)
        if (l > worst) worst = l;
    return worst;
}

double striped_sum_avx2(const double* v, size_t len) {
    __m256d vacc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= len; i += 4)
        vacc = _mm256_add_pd(vacc, _mm256_loadu_pd(v + i));
    alignas(32) double acc[4];
    _mm256_store_pd(acc, vacc);
    for (; i < len; ++i) acc[i & 3] += v[i];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

}  // namespace hv::kernels::detail

#endif
