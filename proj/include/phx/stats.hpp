#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace phx {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t n = 0;
};

/// Ordinary least squares of y against x.
inline LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    LinearFit f;
    f.n = std::min(x.size(), y.size());
    if (f.n < 2) return f;
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < f.n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / f.n, my = sy / f.n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < f.n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx > 0.0) {
        f.slope = sxy / sxx;
        f.intercept = my - f.slope * mx;
        f.r2 = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    } else {
        f.intercept = my;
        f.r2 = (syy > 0.0) ? 0.0 : 1.0;
    }
    return f;
}

/// Least-squares slope of a line through the origin.
inline double fit_through_origin(std::span<const double> x, std::span<const double> y) {
    double sxy = 0, sxx = 0;
    const std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
        sxy += x[i] * y[i];
        sxx += x[i] * x[i];
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t n = 0;
};

inline MeanStderr mean_stderr(std::span<const double> v) {
    MeanStderr m;
    m.n = v.size();
    if (m.n == 0) return m;
    double s = 0;
    for (double x : v) s += x;
    m.mean = s / m.n;
    if (m.n < 2) return m;
    double ss = 0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.stderr_ = std::sqrt(ss / (m.n - 1) / m.n);
    return m;
}

/// Standard error of the mean of an autocorrelated series, estimated from
/// non-overlapping block means.
inline double blocked_stderr(std::span<const double> v, std::size_t block) {
    if (block < 1) block = 1;
    const std::size_t nb = v.size() / block;
    if (nb < 2) return mean_stderr(v).stderr_;
    double sum = 0;
    std::vector<double> means(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        double s = 0;
        for (std::size_t i = 0; i < block; ++i) s += v[b * block + i];
        means[b] = s / block;
        sum += means[b];
    }
    const double mean = sum / nb;
    double ss = 0;
    for (double m : means) ss += (m - mean) * (m - mean);
    return std::sqrt(ss / (nb - 1) / nb);
}

/// Compensated (Kahan) accumulator for long deterministic sums.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace phx
