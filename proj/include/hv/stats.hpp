#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace hv {

/// Welford running mean/variance accumulator.
class RunningStat {
  public:
    void add(double x) {
        ++n_;
        double d = x - mean_;
        mean_ += d / double(n_);
        m2_ += d * (x - mean_);
    }
    int64_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / double(n_ - 1) : 0.0; }
    double stderror() const {
        return n_ > 0 ? std::sqrt(variance() / double(n_)) : 0.0;
    }

  private:
    int64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// 95% Wilson score interval for a binomial proportion.
inline Interval wilson_ci(int64_t successes, int64_t trials, double z = 1.96) {
    if (trials <= 0) return {0.0, 1.0};
    double n = double(trials);
    double p = double(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half =
        z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {center - half, center + half};
}

inline double binomial_se(int64_t successes, int64_t trials) {
    if (trials <= 0) return 0.0;
    double p = double(successes) / double(trials);
    return std::sqrt(p * (1.0 - p) / double(trials));
}

/// Chi-square upper quantile via the Wilson-Hilferty cube approximation.
/// Accurate to a few percent for df >= 1, which is all the tests need.
inline double chi_square_quantile(int df, double z_upper) {
    double d = double(df);
    double c = 1.0 - 2.0 / (9.0 * d) + z_upper * std::sqrt(2.0 / (9.0 * d));
    return d * c * c * c;
}

/// z-value for the two-sided 4-sigma convention used by the property tests.
inline constexpr double four_sigma_z = 4.0;

}  // namespace hv
