#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "hv/lattice.hpp"

namespace hv {

/// Euler-Mascheroni constant, 20 digits.
inline constexpr double euler_gamma = 0.57721566490153286061;

/// The constant term of the potential-kernel expansion, (2*gamma + ln 8)/pi.
double kernel_lambda();

/// Four-term expansion (2/pi) ln|v| + lambda - cos(4 arg v)/(6 pi |v|^2).
/// Throws std::domain_error at the origin.
double kernel_asymptotic(Vertex v);

/// Raised when the relaxation solver fails to reach the requested residual.
class KernelSolveError : public std::runtime_error {
  public:
    KernelSolveError(double residual, int iterations);
    double residual;
    int iterations;
};

/// Exact values of the lattice potential kernel a(x) on the square window
/// |x|_inf <= radius + 2, with a certified interior residual.
///
/// Values solve  a(x) = -1{x=o} + (1/4) sum_{y ~ x} a(y)  with the far
/// boundary pinned to the asymptotic expansion, then are shifted so that
/// a(0,0) = 0 exactly (the shift preserves every residual).
class KernelTable {
  public:
    int radius() const { return radius_; }
    int window_half() const { return grid_.half(); }
    double tol() const { return tol_; }

    bool contains(Vertex v) const { return grid_.contains(v); }
    double at(Vertex v) const {
        if (!grid_.contains(v))
            throw std::out_of_range("KernelTable: vertex outside window");
        return grid_(v);
    }
    double at(int x, int y) const { return at(Vertex{x, y}); }

    const Grid<double>& grid() const { return grid_; }

    /// Max |a + 1{x=o} - avg4| over the stored window's interior.
    double measured_residual() const;

    friend KernelTable build_kernel(int radius, double tol, int pad);

  private:
    int radius_ = 0;
    double tol_ = 0.0;
    Grid<double> grid_;
};

/// Solves the kernel system on |x|_inf <= radius + 2 + pad by checkerboard
/// relaxation; requires radius >= 8. Throws KernelSolveError on
/// non-convergence within the iteration cap.
KernelTable build_kernel(int radius, double tol = 1e-10, int pad = 3);

/// CSV dump (x,y,a) of the table window.
void dump_kernel_csv(const KernelTable& table, std::ostream& out);

/// The weight functions f_H, f_V as second differences of the kernel,
/// precomputed on the window |x|_inf <= radius + 1.
class WeightField {
  public:
    explicit WeightField(const KernelTable& table);

    int half() const { return fh_.half(); }
    bool contains(Vertex v) const { return fh_.contains(v); }

    double weight_h(Vertex v) const {
        check(v);
        return fh_(v);
    }
    double weight_v(Vertex v) const {
        check(v);
        return fv_(v);
    }
    /// f(x) = max{|f_H(x)|, |f_V(x)|}.
    double weight_max(Vertex v) const {
        check(v);
        double h = std::fabs(fh_(v)), w = std::fabs(fv_(v));
        return h > w ? h : w;
    }
    double weight(Vertex v, Label l) const {
        check(v);
        return l == Label::H ? fh_(v) : fv_(v);
    }

    /// sum_{x in B_{r+1}} f(x).
    double ball_sum(double r) const;
    /// sum_{x in B_{r+1}} (f_H(x)+f_V(x))/2; equals 1/2 up to residuals.
    double iud_sum(double r) const;

  private:
    void check(Vertex v) const {
        if (!fh_.contains(v))
            throw std::out_of_range("WeightField: vertex outside window");
    }
    Grid<double> fh_;
    Grid<double> fv_;
};

}  // namespace hv
