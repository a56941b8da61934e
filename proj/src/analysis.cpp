#include "phx/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "phx/errors.hpp"
#include "phx/stats.hpp"

namespace phx {

namespace {

// Inverse box size; eps must be 1/integer.
int grid_size_from_eps(double eps) {
    if (!(eps > 0.0) || eps > 1.0)
        throw ArgumentError("box counting: eps must lie in (0, 1], got " + std::to_string(eps));
    const double m = 1.0 / eps;
    const double mr = std::round(m);
    if (std::abs(m - mr) > 1e-9 * mr)
        throw ArgumentError("box counting: eps must be of the form 1/integer, got " +
                            std::to_string(eps));
    return static_cast<int>(mr);
}

}  // namespace

BoxCountResult information_dimension(std::span<const Vec2> points,
                                     const std::vector<double>& eps_values) {
    if (points.size() < 1000)
        throw ArgumentError("box counting: need at least 1000 points, got " +
                            std::to_string(points.size()));
    if (eps_values.empty())
        throw ArgumentError("box counting: empty eps list");

    BoxCountResult res;
    const double n_points = static_cast<double>(points.size());
    for (double eps : eps_values) {
        const int m = grid_size_from_eps(eps);
        std::vector<std::uint32_t> counts(static_cast<std::size_t>(m) * m, 0u);
        for (const Vec2& p : points) {
            const Vec2 w = wrap_unit(p);
            int ix = static_cast<int>((w.x + 0.5) * m);
            int iy = static_cast<int>((w.y + 0.5) * m);
            ix = std::clamp(ix, 0, m - 1);
            iy = std::clamp(iy, 0, m - 1);
            ++counts[static_cast<std::size_t>(iy) * m + ix];
        }
        double info = 0.0;
        for (std::uint32_t c : counts) {
            if (c == 0) continue;
            const double mu = c / n_points;
            info += mu * std::log(mu);
        }
        res.eps_values.push_back(eps);
        res.info_values.push_back(info);
    }

    // Fit over scales with expected occupancy >= 10 points per box.
    std::vector<double> lx, ly;
    double fit_lo = 1.0, fit_hi = 0.0;
    for (std::size_t i = 0; i < res.eps_values.size(); ++i) {
        const double eps = res.eps_values[i];
        if (n_points * eps * eps < 10.0) continue;
        lx.push_back(std::log(eps));
        ly.push_back(res.info_values[i]);
        fit_lo = std::min(fit_lo, eps);
        fit_hi = std::max(fit_hi, eps);
    }
    if (lx.size() < 3)
        throw DataError("box counting: fewer than 3 usable scales above the occupancy floor");

    const LinearFit fit = linear_fit(lx, ly);
    res.fit_range = {fit_lo, fit_hi};
    res.r2 = fit.r2;
    res.d1 = fit.slope;
    if (res.d1 < 0.0 || res.d1 > 2.0) {
        res.clamped = true;
        res.d1 = std::clamp(res.d1, 0.0, 2.0);
    }
    return res;
}

LyapunovSummary lyapunov_summary(std::span<const TangentBundle> bundles) {
    if (bundles.empty())
        throw ArgumentError("lyapunov summary: no bundles");
    std::vector<double> l1, l2, al, sp;
    for (const TangentBundle& b : bundles) {
        if (!(b.elapsed > 0.0))
            throw ArgumentError("lyapunov summary: bundle with elapsed <= 0");
        double a = b.log_sum1 / b.elapsed;
        double c = b.log_sum2 / b.elapsed;
        if (a < c) std::swap(a, c);
        l1.push_back(a);
        l2.push_back(c);
        al.push_back(a + c);
        sp.push_back(a - c);
    }
    const MeanStderr m1 = mean_stderr(l1), m2 = mean_stderr(l2);
    const MeanStderr ma = mean_stderr(al), ms = mean_stderr(sp);
    LyapunovSummary s;
    s.lambda1 = m1.mean;
    s.lambda1_se = m1.stderr_;
    s.lambda2 = m2.mean;
    s.lambda2_se = m2.stderr_;
    s.alpha = ma.mean;
    s.alpha_se = ma.stderr_;
    s.split = ms.mean;
    s.split_se = ms.stderr_;
    s.n_bundles = bundles.size();
    return s;
}

double kaplan_yorke(double lambda1, double lambda2) {
    if (lambda1 < lambda2)
        throw ArgumentError("kaplan_yorke: requires lambda1 >= lambda2");
    if (lambda1 <= 0.0) return 0.0;                 // point attractor
    if (lambda1 + lambda2 >= 0.0) return 2.0;       // no net contraction
    return 1.0 + lambda1 / std::abs(lambda2);
}

DiffusivityFit effective_diffusivity(std::span<const double> t, std::span<const double> msd) {
    if (t.size() != msd.size())
        throw ArgumentError("effective diffusivity: t and msd length mismatch");
    if (t.size() < 8)
        throw DataError("effective diffusivity: series too short (" +
                        std::to_string(t.size()) + " samples)");

    const double t_end = t.back();
    const double t_mid = 0.5 * t_end;
    std::vector<double> wt, wm;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] >= t_mid) {
            wt.push_back(t[i]);
            wm.push_back(msd[i]);
        }
    }
    if (wt.size() < 4)
        throw DataError("effective diffusivity: fewer than 4 samples in the fit window");

    DiffusivityFit fit;
    fit.window = {wt.front(), wt.back()};

    bool all_zero = true;
    for (double m : wm)
        if (m != 0.0) all_zero = false;
    if (all_zero) {
        fit.d_f = 0.0;
        fit.diffusive = true;
        fit.slope_r2 = 1.0;
        return fit;
    }

    const LinearFit lin = linear_fit(wt, wm);
    fit.slope_r2 = lin.r2;
    fit.d_f = std::max(0.0, lin.slope / 4.0);

    // Log-log slope over the window decides whether growth is linear.
    std::vector<double> lt, lm;
    for (std::size_t i = 0; i < wt.size(); ++i) {
        if (wt[i] > 0.0 && wm[i] > 0.0) {
            lt.push_back(std::log(wt[i]));
            lm.push_back(std::log(wm[i]));
        }
    }
    if (lt.size() >= 4) {
        const LinearFit ll = linear_fit(lt, lm);
        fit.diffusive = std::abs(ll.slope - 1.0) <= 0.1;
    }
    return fit;
}

double light_gain(std::span<const double> ensemble_phi_series, double spatial_mean_phi) {
    if (ensemble_phi_series.empty())
        throw ArgumentError("light gain: empty series");
    double s = 0.0;
    for (double v : ensemble_phi_series) s += v;
    return s / static_cast<double>(ensemble_phi_series.size()) - spatial_mean_phi;
}

double disc_area_in_unit_square(double r) {
    if (r <= 0.0) return 0.0;
    const double r_corner = 0.5 * std::numbers::sqrt2;
    if (r >= r_corner) return 1.0;
    const double full = std::numbers::pi * r * r;
    if (r <= 0.5) return full;
    // Four circular segments protrude past the sides.
    const double seg = r * r * std::acos(0.5 / r) - 0.5 * std::sqrt(r * r - 0.25);
    return full - 4.0 * seg;
}

RadialProfile radial_bins(int n_bins) {
    if (n_bins < 8)
        throw ArgumentError("radial profile: need n_bins >= 8, got " + std::to_string(n_bins));
    RadialProfile p;
    const double r_max = 0.5 * std::numbers::sqrt2;
    for (int b = 0; b < n_bins; ++b) {
        const double lo = r_max * b / n_bins;
        const double hi = r_max * (b + 1) / n_bins;
        p.r_lo.push_back(lo);
        p.r_hi.push_back(hi);
        p.r_mid.push_back(0.5 * (lo + hi));
        p.area.push_back(disc_area_in_unit_square(hi) - disc_area_in_unit_square(lo));
    }
    p.value.assign(n_bins, 0.0);
    return p;
}

RadialProfile radial_density(std::span<const Vec2> points, int n_bins) {
    RadialProfile p = radial_bins(n_bins);
    if (points.empty()) return p;
    const double r_max = 0.5 * std::numbers::sqrt2;
    std::vector<std::size_t> counts(n_bins, 0);
    for (const Vec2& q : points) {
        const double r = norm(wrap_unit(q));
        int b = static_cast<int>(r / r_max * n_bins);
        b = std::clamp(b, 0, n_bins - 1);
        ++counts[b];
    }
    for (int b = 0; b < n_bins; ++b)
        p.value[b] = counts[b] / (static_cast<double>(points.size()) * p.area[b]);
    return p;
}

}  // namespace phx
