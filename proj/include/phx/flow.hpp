#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "phx/bspline.hpp"
#include "phx/math2d.hpp"
#include "phx/rng.hpp"

namespace phx {

/// Parameters of the synthetic turbulent stream function.
struct FlowParams {
    double nu = 0.01;          ///< mode relaxation coefficient; rate = nu*k^2
    double k0 = 3.0 * std::numbers::pi;  ///< spectrum peak scale (2pi/k0 = 2/3 box)
    int n_max = 8;             ///< integer mode cutoff, |n_x|,|n_y| <= n_max
    double target_msv = 0.5;   ///< spatial-mean |v|^2 in expectation
    int grid_n = 64;           ///< sampling resolution of the grid backend
    std::uint64_t seed = 1;

    void validate() const;  // throws ConfigError
};

/// Velocity and its spatial gradient at one point.
struct VelocitySample {
    Vec2 v;
    Mat2 grad;  // [[du/dx, du/dy], [dv/dx, dv/dy]], trace exactly 0
};

/// Shell-averaged kinetic-energy spectrum over uniform wavenumber bins
/// covering [0, sqrt(2)*2*pi*n_max].
struct EnergySpectrum {
    std::vector<double> k_center;
    std::vector<double> e_mean;   ///< mean modal kinetic energy in the bin
    std::vector<int> mode_count;
};

/// Fourier representation of the stream function: one independent OU process
/// per conjugate mode pair, with stationary variance shaped to the Kraichnan
/// spectrum sigma_k^2 = A * k * exp(-k^2/k0^2) and relaxation rate nu*k^2.
/// Only one representative of each +-k pair is stored; the conjugate partner
/// is implied by the reality of the stream function.
class SpectralFlowState {
public:
    /// Draw every retained mode from its stationary complex Gaussian.
    static SpectralFlowState stationary(const FlowParams& params, RngStream& rng);

    /// State with an empty mode set: velocity identically zero, advance is a
    /// no-op. Stands in for parameter choices that retain no modes.
    static SpectralFlowState zero(const FlowParams& params);

    /// Build a state from explicit mode amplitudes (testing and diagnostics).
    /// Each entry sets the representative of the +-(nx, ny) pair to amp; a
    /// non-representative index is conjugate-flipped first.
    struct ModeSpec {
        int nx, ny;
        std::complex<double> amp;
        double sigma2 = 0.0;
    };
    static SpectralFlowState from_modes(const FlowParams& params,
                                        const std::vector<ModeSpec>& modes);

    /// Exact OU transition over dt >= 0 for every mode; Hermitian symmetry
    /// is preserved because only pair representatives are stored.
    void advance(double dt, RngStream& rng);

    /// Reference backend: direct truncated Fourier sum with analytic
    /// derivatives. Periodic in r; trace of the gradient is exactly zero.
    VelocitySample sample_direct(Vec2 r) const;

    /// Spatial-mean |v|^2 from the Parseval relation over the coefficients.
    double mean_square_velocity() const;

    /// Shell-averaged kinetic-energy spectrum; n_bins >= 2.
    EnergySpectrum energy_spectrum(int n_bins) const;

    const FlowParams& params() const { return params_; }
    double time() const { return time_; }
    std::size_t mode_pairs() const { return modes_.size(); }

    struct Mode {
        int nx, ny;                 // representative: nx > 0, or nx == 0 && ny > 0
        double kx, ky, k2;          // wavevector 2*pi*(nx, ny) and |k|^2
        double sigma2;              // stationary variance of the amplitude
        double rate;                // nu * k^2
        std::complex<double> amp;   // psi_hat for the representative
    };
    const std::vector<Mode>& modes() const { return modes_; }

private:
    SpectralFlowState() = default;

    FlowParams params_;
    std::vector<Mode> modes_;
    double time_ = 0.0;

    friend class SampledFlowField;
};

/// Grid backend: the five scalar fields needed for velocity and its gradient
/// (u, v, psi_xx, psi_xy, psi_yy) synthesized on a grid_n^2 lattice by inverse
/// discrete Fourier transform and interpolated with periodic bicubic
/// B-splines. The Jacobian is assembled as [[psi_xy, psi_yy], [-psi_xx,
/// -psi_xy]], so its trace vanishes identically.
class SampledFlowField {
public:
    SampledFlowField() = default;
    explicit SampledFlowField(const SpectralFlowState& state) { build(state); }

    /// Re-synthesize from a state, reusing grid storage.
    void build(const SpectralFlowState& state);

    Vec2 velocity(Vec2 r) const;
    VelocitySample sample(Vec2 r) const;

    double time() const { return time_; }
    int grid_n() const { return u_.size(); }

private:
    BsplineGrid u_, v_, sxx_, sxy_, syy_;
    double time_ = 0.0;
};

}  // namespace phx
