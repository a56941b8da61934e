#pragma once

#include <span>
#include <utility>
#include <vector>

#include "phx/dynamics.hpp"
#include "phx/math2d.hpp"

namespace phx {

/// Box-counting estimate of the information dimension.
struct BoxCountResult {
    std::vector<double> eps_values;   ///< box sizes actually evaluated
    std::vector<double> info_values;  ///< I(eps) = sum_i mu_i ln mu_i  (<= 0)
    double d1 = 0.0;                  ///< fitted slope of I vs ln eps, clamped to [0, 2]
    std::pair<double, double> fit_range{0.0, 0.0};  ///< (eps_min, eps_max) used by the fit
    double r2 = 0.0;
    bool clamped = false;  ///< raw fit left [0, 2]
};

/// I(eps) for a box grid of size eps = 1/m covering the unit torus; d1 is the
/// least-squares slope over the scales where the expected occupancy per box is
/// at least 10 points. Requires >= 1000 points and >= 3 usable scales.
BoxCountResult information_dimension(std::span<const Vec2> points,
                                     const std::vector<double>& eps_values);

/// Benettin summary across tangent bundles.
struct LyapunovSummary {
    double lambda1 = 0.0, lambda1_se = 0.0;
    double lambda2 = 0.0, lambda2_se = 0.0;
    double alpha = 0.0, alpha_se = 0.0;    ///< lambda1 + lambda2
    double split = 0.0, split_se = 0.0;    ///< lambda1 - lambda2
    std::size_t n_bundles = 0;
};
LyapunovSummary lyapunov_summary(std::span<const TangentBundle> bundles);

/// Kaplan-Yorke dimension for a 2D system: 0 for a point attractor
/// (lambda1 <= 0), 2 when volumes do not contract, else 1 + lambda1/|lambda2|.
double kaplan_yorke(double lambda1, double lambda2);

/// Effective diffusivity from an MSD series: slope/4 over the last half,
/// flagged non-diffusive when the log-log slope leaves 1 +- 0.1.
struct DiffusivityFit {
    double d_f = 0.0;
    std::pair<double, double> window{0.0, 0.0};
    double slope_r2 = 0.0;
    bool diffusive = false;
};
DiffusivityFit effective_diffusivity(std::span<const double> t, std::span<const double> msd);

/// Time average of the ensemble-mean illumination minus the spatial mean.
double light_gain(std::span<const double> ensemble_phi_series, double spatial_mean_phi);

/// Radial annulus geometry shared by measured and predicted profiles: uniform
/// edges on [0, sqrt(2)/2] with exact annulus-within-square areas.
struct RadialProfile {
    std::vector<double> r_lo, r_hi, r_mid;
    std::vector<double> area;   ///< exact area of the annulus clipped to the square
    std::vector<double> value;  ///< density per unit area
};

/// Exact area of the disc of radius r (centered) clipped to the unit square.
double disc_area_in_unit_square(double r);

/// Annulus edges and exact areas for n_bins bins (n_bins >= 8).
RadialProfile radial_bins(int n_bins);

/// Per-annulus particle fraction divided by exact annulus area; integrates to
/// one over the domain by construction.
RadialProfile radial_density(std::span<const Vec2> points, int n_bins);

}  // namespace phx
