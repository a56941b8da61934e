#pragma once

#include "phx/math2d.hpp"

namespace phx {

/// Localized Gaussian illumination field, periodicized on the unit torus by
/// summing over (2*image_radius + 1)^2 periodic images.
struct LightParams {
    double amplitude = 1.0;   ///< peak intensity
    double decay = 8.0;       ///< exponent coefficient c in exp(-c |r|^2)
    Vec2 center{0.0, 0.0};
    int image_radius = 1;     ///< number of image shells in the periodic sum

    void validate() const;  // throws ConfigError
};

/// Field value. The evaluation point is wrapped into the primary cell first,
/// so the result is exactly periodic; the residual error against the infinite
/// image sum is bounded by 4*amplitude*exp(-decay*(image_radius + 1/2)^2).
double phi(const LightParams& p, Vec2 r);

/// Exact analytic gradient of the image sum.
Vec2 grad_phi(const LightParams& p, Vec2 r);

/// Exact analytic Hessian of the image sum.
Mat2 hessian_phi(const LightParams& p, Vec2 r);

/// Trace of the Hessian.
double laplacian_phi(const LightParams& p, Vec2 r);

}  // namespace phx
