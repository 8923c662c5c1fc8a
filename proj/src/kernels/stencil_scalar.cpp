#include "hv/kernels/stencil.hpp"

#include <cmath>

namespace hv::kernels::detail {

void relax_color_scalar(double* a, const double* f, int n, int color,
                        double omega) {
    for (int i = 1; i < n - 1; ++i) {
        double* row = a + size_t(i) * n;
        const double* up = row + n;
        const double* down = row - n;
        const double* fr = f + size_t(i) * n;
        int j0 = 1 + ((i + 1 + color) & 1);
        for (int j = j0; j < n - 1; j += 2) {
            double avg = 0.25 * (up[j] + down[j] + row[j - 1] + row[j + 1]);
            row[j] += omega * (avg - fr[j] - row[j]);
        }
    }
}

double residual_max_scalar(const double* a, const double* f, int n) {
    double worst = 0.0;
    for (int i = 1; i < n - 1; ++i) {
        const double* row = a + size_t(i) * n;
        const double* up = row + n;
        const double* down = row - n;
        const double* fr = f + size_t(i) * n;
        for (int j = 1; j < n - 1; ++j) {
            double avg = 0.25 * (up[j] + down[j] + row[j - 1] + row[j + 1]);
            double r = std::fabs(avg - fr[j] - row[j]);
            if (r > worst) worst = r;
        }
    }
    return worst;
}

double striped_sum_scalar(const double* v, size_t len) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        acc[0] += v[i];
        acc[1] += v[i + 1];
        acc[2] += v[i + 2];
        acc[3] += v[i + 3];
    }
    for (; i < len; ++i) acc[i & 3] += v[i];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

}  // namespace hv::kernels::detail
