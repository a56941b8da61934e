#pragma once

#include <cstddef>
#include <vector>

#include "phx/flow.hpp"
#include "phx/light.hpp"
#include "phx/math2d.hpp"
#include "phx/rng.hpp"

namespace phx {

/// Particle integrator settings.
struct IntegratorConfig {
    double dt = 5e-3;
    double chi = 0.0;        ///< phototactic coefficient
    int renorm_every = 10;   ///< steps between tangent renormalizations

    void validate() const;  // throws ConfigError
};

/// Torus-wrapped particle positions plus absolute unwrapped positions for
/// dispersion measurement.
class ParticleEnsemble {
public:
    ParticleEnsemble() = default;
    static ParticleEnsemble uniform(std::size_t n, RngStream& rng);
    static ParticleEnsemble from_positions(std::vector<Vec2> positions);

    std::size_t size() const { return pos_.size(); }
    const std::vector<Vec2>& positions() const { return pos_; }
    const std::vector<Vec2>& unwrapped() const { return unwrapped_; }
    const std::vector<Vec2>& initial() const { return initial_; }

    /// Mean square of the unwrapped displacement from the initial positions.
    double mean_square_displacement() const;

    void apply_increments(const std::vector<Vec2>& delta);

private:
    std::vector<Vec2> pos_;        // wrapped into [-1/2, 1/2)^2
    std::vector<Vec2> unwrapped_;  // absolute, never wrapped
    std::vector<Vec2> initial_;
};

/// Two tangent vectors (columns of m) carried along one trajectory, with the
/// accumulated log-stretch totals of the Benettin scheme.
struct TangentBundle {
    Mat2 m = Mat2::identity();
    double log_sum1 = 0.0;
    double log_sum2 = 0.0;
    double elapsed = 0.0;
};

/// Gram-Schmidt renormalization: the first vector's norm and the second
/// vector's orthogonal residual norm are logged into the bundle's sums.
void renormalize(TangentBundle& b);  // throws IntegrationError when degenerate

/// Field snapshots bracketing one step: t, t + dt/2, t + dt. Any type with
/// velocity(Vec2) and sample(Vec2) works as Field, so tests can substitute
/// analytic flows for the grid-backed one.
template <class Field>
struct Staged {
    const Field* f0 = nullptr;
    const Field* f1 = nullptr;
    const Field* f2 = nullptr;
    double dt = 0.0;
};

/// Trivial field: no flow. Useful for pure-phototaxis runs and tests.
struct ZeroField {
    Vec2 velocity(Vec2) const { return {}; }
    VelocitySample sample(Vec2) const { return {}; }
};

namespace detail {

template <class Field>
inline Vec2 drift(const Field& f, const LightParams& light, double chi, Vec2 r) {
    Vec2 v = f.velocity(r);
    if (chi != 0.0) v += chi * grad_phi(light, r);
    return v;
}

template <class Field>
inline Mat2 jacobian(const Field& f, const LightParams& light, double chi, Vec2 r) {
    Mat2 j = f.sample(r).grad;
    if (chi != 0.0) j += chi * hessian_phi(light, r);
    return j;
}

}  // namespace detail

/// One RK4 increment of dr/dt = v_f(r, t) + chi * grad(phi), with the three
/// staged field snapshots shared across stages.
template <class Field>
Vec2 rk4_increment(const Staged<Field>& s, const LightParams& light, double chi, Vec2 r) {
    const double dt = s.dt;
    const Vec2 k1 = detail::drift(*s.f0, light, chi, r);
    const Vec2 k2 = detail::drift(*s.f1, light, chi, r + (0.5 * dt) * k1);
    const Vec2 k3 = detail::drift(*s.f1, light, chi, r + (0.5 * dt) * k2);
    const Vec2 k4 = detail::drift(*s.f2, light, chi, r + dt * k3);
    return (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Joint RK4 step of a carrier trajectory and its tangent matrix, using the
/// same stage points for dM/dt = J(r, t) M. Optionally accumulates the
/// RK4-consistent integral of the drift divergence chi * laplacian(phi) along
/// the trajectory (the tangent-determinant identity diagnostic). The carrier
/// position is wrapped on return; elapsed time is not tracked here.
template <class Field>
void rk4_step_tangent(const Staged<Field>& s, const LightParams& light, double chi,
                      Vec2& r, Mat2& m, double* div_integral = nullptr) {
    const double dt = s.dt;
    const Vec2 r1 = r;
    const Vec2 k1 = detail::drift(*s.f0, light, chi, r1);
    const Vec2 r2 = r1 + (0.5 * dt) * k1;
    const Vec2 k2 = detail::drift(*s.f1, light, chi, r2);
    const Vec2 r3 = r1 + (0.5 * dt) * k2;
    const Vec2 k3 = detail::drift(*s.f1, light, chi, r3);
    const Vec2 r4 = r1 + dt * k3;
    const Vec2 k4 = detail::drift(*s.f2, light, chi, r4);

    const Mat2 j1 = detail::jacobian(*s.f0, light, chi, r1);
    const Mat2 j2 = detail::jacobian(*s.f1, light, chi, r2);
    const Mat2 j3 = detail::jacobian(*s.f1, light, chi, r3);
    const Mat2 j4 = detail::jacobian(*s.f2, light, chi, r4);

    const Mat2 m1 = j1 * m;
    const Mat2 m2 = j2 * (m + (0.5 * dt) * m1);
    const Mat2 m3 = j3 * (m + (0.5 * dt) * m2);
    const Mat2 m4 = j4 * (m + dt * m3);

    r = wrap_unit(r1 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    m += (dt / 6.0) * (m1 + 2.0 * m2 + 2.0 * m3 + m4);

    if (div_integral != nullptr && chi != 0.0) {
        const double d1 = chi * laplacian_phi(light, r1);
        const double d2 = chi * laplacian_phi(light, r2);
        const double d3 = chi * laplacian_phi(light, r3);
        const double d4 = chi * laplacian_phi(light, r4);
        *div_integral += (dt / 6.0) * (d1 + 2.0 * d2 + 2.0 * d3 + d4);
    }
}

/// Advances one tangent bundle with its carrier; elapsed accumulates dt.
template <class Field>
void step_tangent(TangentBundle& b, Vec2& r, const Staged<Field>& s,
                  const LightParams& light, const IntegratorConfig& cfg,
                  double* div_integral = nullptr) {
    rk4_step_tangent(s, light, cfg.chi, r, b.m, div_integral);
    b.elapsed += s.dt;
}

/// One RK4 step of every particle against the staged snapshots. Data-parallel
/// over particles; per-particle results never depend on thread count.
void step_ensemble(ParticleEnsemble& ens, const Staged<SampledFlowField>& staged,
                   const LightParams& light, const IntegratorConfig& cfg);

/// Drives a spectral flow state together with the three staged grid-sampled
/// snapshots that one RK4 step consumes. The OU advance of the field is
/// exact, so all time-discretization error lives in the particle ODE.
class Stepper {
public:
    Stepper(SpectralFlowState state, LightParams light, IntegratorConfig cfg);

    /// Advance the field from t to t + dt (two exact OU half-steps) and make
    /// the staged snapshots current. Single-writer; call once per step.
    void advance_fields(RngStream& rng);

    const Staged<SampledFlowField>& staged() const { return staged_; }
    const SpectralFlowState& flow() const { return state_; }
    const LightParams& light() const { return light_; }
    const IntegratorConfig& config() const { return cfg_; }
    double time() const { return state_.time(); }

    void step(ParticleEnsemble& ens) const { step_ensemble(ens, staged_, light_, cfg_); }
    void step(TangentBundle& b, Vec2& r, double* div_integral = nullptr) const {
        step_tangent(b, r, staged_, light_, cfg_, div_integral);
    }

private:
    SpectralFlowState state_;
    LightParams light_;
    IntegratorConfig cfg_;
    SampledFlowField fields_[3];
    int slot_[3] = {0, 1, 2};  // staged index -> fields_ buffer
    Staged<SampledFlowField> staged_;
};

/// Mean-square displacement time series of a passive ensemble (chi must be 0;
/// the periodic field extends the flow over the whole plane, so unwrapped
/// coordinates disperse freely).
struct MsdSeries {
    std::vector<double> t;
    std::vector<double> msd;
};
MsdSeries run_passive_dispersion(std::size_t n_particles, SpectralFlowState state,
                                 double duration, const IntegratorConfig& cfg,
                                 RngStream& flow_rng, RngStream& init_rng,
                                 double sample_every);

}  // namespace phx
