#include "phx/light.hpp"

#include <cmath>
#include <string>

#include "phx/errors.hpp"

namespace phx {

void LightParams::validate() const {
    if (!(amplitude > 0.0))
        throw ConfigError("light: amplitude must be > 0, got " + std::to_string(amplitude));
    if (!(decay > 0.0))
        throw ConfigError("light: decay must be > 0, got " + std::to_string(decay));
    if (image_radius < 0)
        throw ConfigError("light: image_radius must be >= 0, got " + std::to_string(image_radius));
}

namespace {

// Shared loop over periodic images of the wrapped offset r - center.
template <class Fn>
void for_each_image(const LightParams& p, Vec2 r, Fn&& fn) {
    const Vec2 d0 = wrap_unit(r - p.center);
    for (int mx = -p.image_radius; mx <= p.image_radius; ++mx) {
        for (int my = -p.image_radius; my <= p.image_radius; ++my) {
            const Vec2 d{d0.x - mx, d0.y - my};
            const double g = p.amplitude * std::exp(-p.decay * norm2(d));
            fn(d, g);
        }
    }
}

}  // namespace

double phi(const LightParams& p, Vec2 r) {
    double sum = 0.0;
    for_each_image(p, r, [&](Vec2, double g) { sum += g; });
    return sum;
}

Vec2 grad_phi(const LightParams& p, Vec2 r) {
    Vec2 sum{};
    for_each_image(p, r, [&](Vec2 d, double g) {
        sum += (-2.0 * p.decay * g) * d;
    });
    return sum;
}

Mat2 hessian_phi(const LightParams& p, Vec2 r) {
    Mat2 sum{};
    const double c = p.decay;
    for_each_image(p, r, [&](Vec2 d, double g) {
        sum.a00 += g * (4.0 * c * c * d.x * d.x - 2.0 * c);
        sum.a01 += g * (4.0 * c * c * d.x * d.y);
        sum.a11 += g * (4.0 * c * c * d.y * d.y - 2.0 * c);
    });
    sum.a10 = sum.a01;
    return sum;
}

double laplacian_phi(const LightParams& p, Vec2 r) {
    double sum = 0.0;
    const double c = p.decay;
    for_each_image(p, r, [&](Vec2 d, double g) {
        sum += g * (4.0 * c * c * norm2(d) - 4.0 * c);
    });
    return sum;
}

}  // namespace phx
