#include "hv/potential_kernel.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "hv/kernels/stencil.hpp"

namespace hv {

namespace {
constexpr double pi = std::numbers::pi;
}

double kernel_lambda() { return (2.0 * euler_gamma + std::log(8.0)) / pi; }

double kernel_asymptotic(Vertex v) {
    if (v == origin)
        throw std::domain_error("kernel_asymptotic: undefined at the origin");
    double r2 = double(norm2(v));
    double r = std::sqrt(r2);
    double theta = std::atan2(double(v.y), double(v.x));
    return (2.0 / pi) * std::log(r) + kernel_lambda() -
           std::cos(4.0 * theta) / (6.0 * pi * r2);
}

KernelSolveError::KernelSolveError(double res, int iters)
    : std::runtime_error("kernel relaxation did not reach tolerance; "
                         "final residual " +
                         std::to_string(res) + " after " +
                         std::to_string(iters) + " sweeps"),
      residual(res), iterations(iters) {}

KernelTable build_kernel(int radius, double tol, int pad) {
    if (radius < 8)
        throw std::invalid_argument("build_kernel: radius must be >= 8");
    if (pad < 1) throw std::invalid_argument("build_kernel: pad must be >= 1");
    if (tol <= 0.0) throw std::invalid_argument("build_kernel: tol <= 0");

    const int whalf = radius + 2 + pad;
    const int n = 2 * whalf + 1;
    std::vector<double> a(size_t(n) * n), f(size_t(n) * n, 0.0);

    // Asymptotic values everywhere: exact data on the frame, a good initial
    // guess inside.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Vertex v{j - whalf, i - whalf};
            a[size_t(i) * n + j] = (v == origin) ? 0.0 : kernel_asymptotic(v);
        }
    }
    f[size_t(whalf) * n + whalf] = 1.0;

    const double omega = 2.0 / (1.0 + std::sin(pi / n));
    const int max_sweeps = 200000;
    const int check_every = 16;
    double res = std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < max_sweeps; ++it) {
        kernels::relax_color(a.data(), f.data(), n, 0, omega);
        kernels::relax_color(a.data(), f.data(), n, 1, omega);
        if (it % check_every == 0) {
            res = kernels::residual_max(a.data(), f.data(), n);
            if (res <= tol) break;
        }
    }
    if (res > tol) throw KernelSolveError(res, it);

    // Normalize a(0,0) = 0 exactly; a uniform shift leaves every interior
    // residual unchanged.
    const double shift = a[size_t(whalf) * n + whalf];

    KernelTable table;
    table.radius_ = radius;
    table.tol_ = tol;
    table.grid_ = Grid<double>(radius + 2);
    for (int y = -(radius + 2); y <= radius + 2; ++y)
        for (int x = -(radius + 2); x <= radius + 2; ++x)
            table.grid_(x, y) =
                a[size_t(y + whalf) * n + (x + whalf)] - shift;
    return table;
}

double KernelTable::measured_residual() const {
    double worst = 0.0;
    const int h = grid_.half();
    for (int y = -h + 1; y < h; ++y) {
        for (int x = -h + 1; x < h; ++x) {
            double avg = 0.25 * (grid_(x + 1, y) + grid_(x - 1, y) +
                                 grid_(x, y + 1) + grid_(x, y - 1));
            double defect = (x == 0 && y == 0) ? 1.0 : 0.0;
            double r = std::fabs(avg - defect - grid_(x, y));
            if (r > worst) worst = r;
        }
    }
    return worst;
}

void dump_kernel_csv(const KernelTable& table, std::ostream& out) {
    out << "# schema=hv.kernel.v1\n";
    out << "x,y,a\n";
    const int h = table.window_half();
    char buf[64];
    for (int y = -h; y <= h; ++y) {
        for (int x = -h; x <= h; ++x) {
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", x, y,
                          table.at(x, y));
            out << buf;
        }
    }
}

WeightField::WeightField(const KernelTable& table)
    : fh_(table.window_half() - 1), fv_(table.window_half() - 1) {
    const int h = fh_.half();
    for (int y = -h; y <= h; ++y) {
        for (int x = -h; x <= h; ++x) {
            double c = table.at(x, y);
            fh_(x, y) =
                (table.at(x, y + 1) + table.at(x, y - 1) - 2.0 * c) / 4.0;
            fv_(x, y) =
                (table.at(x + 1, y) + table.at(x - 1, y) - 2.0 * c) / 4.0;
        }
    }
}

double WeightField::ball_sum(double r) const {
    const double rr = r + 1.0;
    if (rr > fh_.half() + 1)
        throw std::out_of_range("WeightField::ball_sum: B_{r+1} exceeds window");
    std::vector<double> terms;
    const int cap = int(std::ceil(rr));
    terms.reserve(size_t(2 * cap + 1) * (2 * cap + 1));
    for (int y = -cap; y <= cap; ++y)
        for (int x = -cap; x <= cap; ++x)
            if (double(x) * x + double(y) * y < rr * rr)
                terms.push_back(weight_max(Vertex{x, y}));
    return kernels::striped_sum(terms.data(), terms.size());
}

double WeightField::iud_sum(double r) const {
    const double rr = r + 1.0;
    if (rr > fh_.half() + 1)
        throw std::out_of_range("WeightField::iud_sum: B_{r+1} exceeds window");
    std::vector<double> terms;
    const int cap = int(std::ceil(rr));
    terms.reserve(size_t(2 * cap + 1) * (2 * cap + 1));
    for (int y = -cap; y <= cap; ++y)
        for (int x = -cap; x <= cap; ++x)
            if (double(x) * x + double(y) * y < rr * rr)
                terms.push_back(0.5 * (fh_(x, y) + fv_(x, y)));
    return kernels::striped_sum(terms.data(), terms.size());
}

}  // namespace hv
