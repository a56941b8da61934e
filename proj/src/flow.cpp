#include "phx/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "phx/errors.hpp"

namespace phx {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_representative(int nx, int ny) {
    return nx > 0 || (nx == 0 && ny > 0);
}
}  // namespace

void FlowParams::validate() const {
    if (!(nu > 0.0))
        throw ConfigError("flow: nu must be > 0, got " + std::to_string(nu));
    if (!(k0 > 0.0))
        throw ConfigError("flow: k0 must be > 0, got " + std::to_string(k0));
    if (n_max < 1)
        throw ConfigError("flow: n_max must be >= 1, got " + std::to_string(n_max));
    if (grid_n < 4 * n_max)
        throw ConfigError("flow: grid_n must be >= 4*n_max for anti-aliased sampling, got " +
                          std::to_string(grid_n) + " < " + std::to_string(4 * n_max));
    if (!(target_msv > 0.0))
        throw ConfigError("flow: target_msv must be > 0, got " + std::to_string(target_msv));
}

SpectralFlowState SpectralFlowState::stationary(const FlowParams& params, RngStream& rng) {
    params.validate();
    SpectralFlowState st;
    st.params_ = params;
    st.modes_.reserve(static_cast<std::size_t>(params.n_max) * (2 * params.n_max + 1) +
                      params.n_max);

    // Spectrum shape k * exp(-k^2/k0^2); amplitude A fixed by the discrete
    // Parseval sum so that E[sum_k k^2 sigma_k^2] = target_msv.
    double mass = 0.0;
    for (int nx = 0; nx <= params.n_max; ++nx) {
        for (int ny = -params.n_max; ny <= params.n_max; ++ny) {
            if (!is_representative(nx, ny)) continue;
            Mode m;
            m.nx = nx;
            m.ny = ny;
            m.kx = kTwoPi * nx;
            m.ky = kTwoPi * ny;
            m.k2 = m.kx * m.kx + m.ky * m.ky;
            const double k = std::sqrt(m.k2);
            m.sigma2 = k * std::exp(-m.k2 / (params.k0 * params.k0));
            m.rate = params.nu * m.k2;
            mass += 2.0 * m.k2 * m.sigma2;  // both members of the pair
            st.modes_.push_back(m);
        }
    }
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw ConfigError("flow: retained spectrum mass vanished (k0 too small for the mode set)");

    const double amp_scale = params.target_msv / mass;
    for (Mode& m : st.modes_) {
        m.sigma2 *= amp_scale;
        const double s = std::sqrt(0.5 * m.sigma2);
        m.amp = {s * rng.normal(), s * rng.normal()};
    }
    return st;
}

SpectralFlowState SpectralFlowState::zero(const FlowParams& params) {
    params.validate();
    SpectralFlowState st;
    st.params_ = params;
    return st;
}

SpectralFlowState SpectralFlowState::from_modes(const FlowParams& params,
                                                const std::vector<ModeSpec>& specs) {
    params.validate();
    SpectralFlowState st;
    st.params_ = params;
    for (const ModeSpec& sp : specs) {
        int nx = sp.nx, ny = sp.ny;
        std::complex<double> amp = sp.amp;
        if (nx == 0 && ny == 0)
            throw ArgumentError("flow: the zero mode is excluded");
        if (!is_representative(nx, ny)) {
            nx = -nx;
            ny = -ny;
            amp = std::conj(amp);
        }
        Mode m;
        m.nx = nx;
        m.ny = ny;
        m.kx = kTwoPi * nx;
        m.ky = kTwoPi * ny;
        m.k2 = m.kx * m.kx + m.ky * m.ky;
        m.sigma2 = sp.sigma2;
        m.rate = params.nu * m.k2;
        m.amp = amp;
        st.modes_.push_back(m);
    }
    return st;
}

void SpectralFlowState::advance(double dt, RngStream& rng) {
    if (dt < 0.0)
        throw ArgumentError("flow: advance requires dt >= 0, got " + std::to_string(dt));
    if (dt == 0.0) return;
    for (Mode& m : modes_) {
        const double decay = std::exp(-m.rate * dt);
        const double s = std::sqrt(0.5 * m.sigma2 * (1.0 - decay * decay));
        m.amp = m.amp * decay + std::complex<double>{s * rng.normal(), s * rng.normal()};
    }
    time_ += dt;
}

VelocitySample SpectralFlowState::sample_direct(Vec2 r) const {
    double u = 0.0, v = 0.0;
    double g_xy = 0.0, g_yy = 0.0, g_xx = 0.0;  // psi second derivatives
    for (const Mode& m : modes_) {
        const double ph = m.kx * r.x + m.ky * r.y;
        const double re = m.amp.real() * std::cos(ph) - m.amp.imag() * std::sin(ph);
        const double im = m.amp.real() * std::sin(ph) + m.amp.imag() * std::cos(ph);
        u -= 2.0 * m.ky * im;       // d(psi)/dy of the conjugate pair
        v += 2.0 * m.kx * im;       // -d(psi)/dx
        g_xy -= 2.0 * m.kx * m.ky * re;
        g_yy -= 2.0 * m.ky * m.ky * re;
        g_xx -= 2.0 * m.kx * m.kx * re;
    }
    VelocitySample s;
    s.v = {u, v};
    s.grad.a00 = g_xy;
    s.grad.a01 = g_yy;
    s.grad.a10 = -g_xx;
    s.grad.a11 = -g_xy;  // trace vanishes identically
    return s;
}

double SpectralFlowState::mean_square_velocity() const {
    double sum = 0.0;
    for (const Mode& m : modes_) sum += 2.0 * m.k2 * std::norm(m.amp);
    return sum;
}

EnergySpectrum SpectralFlowState::energy_spectrum(int n_bins) const {
    if (n_bins < 2)
        throw ArgumentError("flow: energy_spectrum needs n_bins >= 2, got " +
                            std::to_string(n_bins));
    EnergySpectrum sp;
    const double k_max = kTwoPi * params_.n_max * std::numbers::sqrt2;
    const double dk = k_max / n_bins;
    sp.k_center.resize(n_bins);
    sp.e_mean.assign(n_bins, 0.0);
    sp.mode_count.assign(n_bins, 0);
    for (int b = 0; b < n_bins; ++b) sp.k_center[b] = (b + 0.5) * dk;
    for (const Mode& m : modes_) {
        const double k = std::sqrt(m.k2);
        const int b = std::min(static_cast<int>(k / dk), n_bins - 1);
        sp.e_mean[b] += 2.0 * 0.5 * m.k2 * std::norm(m.amp);  // both pair members
        sp.mode_count[b] += 2;
    }
    for (int b = 0; b < n_bins; ++b)
        if (sp.mode_count[b] > 0) sp.e_mean[b] /= sp.mode_count[b];
    return sp;
}

// ---------------------------------------------------------------------------
// Grid backend
// ---------------------------------------------------------------------------

void SampledFlowField::build(const SpectralFlowState& state) {
    const FlowParams& p = state.params_;
    const int N = p.grid_n;
    time_ = state.time_;

    BsplineGrid* grids[5] = {&u_, &v_, &sxx_, &sxy_, &syy_};
    for (BsplineGrid* g : grids) g->reset(N);

    const int nm = p.n_max;
    const int dim = 2 * nm + 1;
    const auto idx = [nm, dim](int nx, int ny) {
        return static_cast<std::size_t>(nx + nm) * dim + (ny + nm);
    };

    // Cubic B-spline DFT response; dividing the mode weights by it turns the
    // synthesized node values directly into spline coefficients.
    const auto bsp = [N](int n) { return (2.0 + std::cos(kTwoPi * n / N)) / 3.0; };

    std::vector<std::complex<double>> w[5];
    for (auto& wf : w) wf.assign(static_cast<std::size_t>(dim) * dim, {0.0, 0.0});

    for (const auto& m : state.modes_) {
        // Node phase: grid point i maps to x = -1/2 + i/N.
        const double phase = ((m.nx + m.ny) & 1) ? -1.0 : 1.0;
        const std::complex<double> base =
            m.amp * (phase / (bsp(m.nx) * bsp(m.ny)));
        const std::complex<double> iu{0.0, 1.0};
        const std::complex<double> f[5] = {
            iu * m.ky * base,        // u = psi_y
            -iu * m.kx * base,       // v = -psi_x
            -m.kx * m.kx * base,     // psi_xx
            -m.kx * m.ky * base,     // psi_xy
            -m.ky * m.ky * base,     // psi_yy
        };
        for (int fi = 0; fi < 5; ++fi) {
            w[fi][idx(m.nx, m.ny)] = f[fi];
            w[fi][idx(-m.nx, -m.ny)] = std::conj(f[fi]);
        }
    }

    // omega(n, i) = exp(2*pi*i*n*i/N) for n in [0, nm]
    std::vector<std::complex<double>> omega(static_cast<std::size_t>(nm + 1) * N);
    for (int n = 0; n <= nm; ++n)
        for (int i = 0; i < N; ++i)
            omega[static_cast<std::size_t>(n) * N + i] =
                std::polar(1.0, kTwoPi * n * i / N);

    // Pass 1: partial sums over ny. Hermitian symmetry of the weights gives
    // T(-nx, j) = conj(T(nx, j)), so only nx >= 0 is materialized.
    std::vector<std::complex<double>> t[5];
    for (auto& tf : t) tf.assign(static_cast<std::size_t>(nm + 1) * N, {0.0, 0.0});
    for (int nx = 0; nx <= nm; ++nx) {
        for (int ny = -nm; ny <= nm; ++ny) {
            std::complex<double> wv[5];
            bool any = false;
            for (int fi = 0; fi < 5; ++fi) {
                wv[fi] = w[fi][idx(nx, ny)];
                any = any || (wv[fi] != std::complex<double>{0.0, 0.0});
            }
            if (!any) continue;
            const int na = std::abs(ny);
            const std::complex<double>* om = &omega[static_cast<std::size_t>(na) * N];
            for (int j = 0; j < N; ++j) {
                const std::complex<double> e = (ny >= 0) ? om[j] : std::conj(om[j]);
                for (int fi = 0; fi < 5; ++fi)
                    t[fi][static_cast<std::size_t>(nx) * N + j] += wv[fi] * e;
            }
        }
    }

    // Pass 2: real node values; the nx = 0 column is real, each nx > 0 column
    // pairs with its conjugate.
    for (int fi = 0; fi < 5; ++fi) {
        BsplineGrid& g = *grids[fi];
        const auto& tf = t[fi];
        for (int j = 0; j < N; ++j) {
            for (int i = 0; i < N; ++i) {
                double acc = tf[j].real();  // nx = 0 row
                for (int nx = 1; nx <= nm; ++nx) {
                    const std::complex<double> tv = tf[static_cast<std::size_t>(nx) * N + j];
                    const std::complex<double> e = omega[static_cast<std::size_t>(nx) * N + i];
                    acc += 2.0 * (tv.real() * e.real() - tv.imag() * e.imag());
                }
                g.set(i, j, acc);
            }
        }
        g.finish_padding();
    }
}

Vec2 SampledFlowField::velocity(Vec2 r) const {
    const BicubicStencil st(r, u_.size());
    return {u_.eval(st), v_.eval(st)};
}

VelocitySample SampledFlowField::sample(Vec2 r) const {
    const BicubicStencil st(r, u_.size());
    VelocitySample s;
    s.v = {u_.eval(st), v_.eval(st)};
    const double xx = sxx_.eval(st);
    const double xy = sxy_.eval(st);
    const double yy = syy_.eval(st);
    s.grad = {xy, yy, -xx, -xy};
    return s;
}

}  // namespace phx
