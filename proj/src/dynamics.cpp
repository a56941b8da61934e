#include "phx/dynamics.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "phx/errors.hpp"

namespace phx {

void IntegratorConfig::validate() const {
    if (!(dt > 0.0))
        throw ConfigError("integration: dt must be > 0, got " + std::to_string(dt));
    if (chi < 0.0)
        throw ConfigError("integration: chi must be >= 0, got " + std::to_string(chi));
    if (renorm_every < 1)
        throw ConfigError("integration: renorm_every must be >= 1, got " +
                          std::to_string(renorm_every));
}

ParticleEnsemble ParticleEnsemble::uniform(std::size_t n, RngStream& rng) {
    std::vector<Vec2> pos(n);
    for (Vec2& p : pos) p = {rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
    return from_positions(std::move(pos));
}

ParticleEnsemble ParticleEnsemble::from_positions(std::vector<Vec2> positions) {
    ParticleEnsemble e;
    for (Vec2& p : positions) p = wrap_unit(p);
    e.pos_ = positions;
    e.unwrapped_ = positions;
    e.initial_ = std::move(positions);
    return e;
}

double ParticleEnsemble::mean_square_displacement() const {
    if (pos_.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < pos_.size(); ++i)
        sum += norm2(unwrapped_[i] - initial_[i]);
    return sum / static_cast<double>(pos_.size());
}

void ParticleEnsemble::apply_increments(const std::vector<Vec2>& delta) {
    for (std::size_t i = 0; i < pos_.size(); ++i) {
        unwrapped_[i] += delta[i];
        pos_[i] = wrap_unit(pos_[i] + delta[i]);
    }
}

void renormalize(TangentBundle& b) {
    const Vec2 v1{b.m.a00, b.m.a10};
    const Vec2 v2{b.m.a01, b.m.a11};
    const double n1 = norm(v1);
    if (!(n1 > 1e-300) || !std::isfinite(n1))
        throw IntegrationError("tangent renormalization: first vector degenerate");
    const Vec2 e1 = (1.0 / n1) * v1;
    const Vec2 res = v2 - dot(v2, e1) * e1;
    const double n2 = norm(res);
    if (!(n2 > 1e-12 * norm(v2)) || !std::isfinite(n2))
        throw IntegrationError(
            "tangent renormalization: vectors collinear (dt too large or extreme chi)");
    const Vec2 e2 = (1.0 / n2) * res;
    b.m = {e1.x, e2.x, e1.y, e2.y};
    b.log_sum1 += std::log(n1);
    b.log_sum2 += std::log(n2);
}

void step_ensemble(ParticleEnsemble& ens, const Staged<SampledFlowField>& staged,
                   const LightParams& light, const IntegratorConfig& cfg) {
    const std::size_t n = ens.size();
    const std::vector<Vec2>& pos = ens.positions();
    std::vector<Vec2> delta(n);
    long bad = -1;
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        const Vec2 d = rk4_increment(staged, light, cfg.chi, pos[i]);
        if (!std::isfinite(d.x) || !std::isfinite(d.y)) {
#pragma omp critical
            bad = i;
        } else {
            delta[i] = d;
        }
    }
    if (bad >= 0)
        throw IntegrationError("integration diverged at particle index " + std::to_string(bad));
    ens.apply_increments(delta);
}

Stepper::Stepper(SpectralFlowState state, LightParams light, IntegratorConfig cfg)
    : state_(std::move(state)), light_(light), cfg_(cfg) {
    light_.validate();
    cfg_.validate();
    fields_[slot_[2]].build(state_);  // field at the initial time
    staged_ = {&fields_[slot_[0]], &fields_[slot_[1]], &fields_[slot_[2]], cfg_.dt};
}

void Stepper::advance_fields(RngStream& rng) {
    // Previous end-of-step snapshot becomes the start of this step.
    std::swap(slot_[0], slot_[2]);
    state_.advance(0.5 * cfg_.dt, rng);
    fields_[slot_[1]].build(state_);
    state_.advance(0.5 * cfg_.dt, rng);
    fields_[slot_[2]].build(state_);
    staged_ = {&fields_[slot_[0]], &fields_[slot_[1]], &fields_[slot_[2]], cfg_.dt};
}

MsdSeries run_passive_dispersion(std::size_t n_particles, SpectralFlowState state,
                                 double duration, const IntegratorConfig& cfg,
                                 RngStream& flow_rng, RngStream& init_rng,
                                 double sample_every) {
    if (cfg.chi != 0.0)
        throw ArgumentError("passive dispersion requires chi = 0, got " +
                            std::to_string(cfg.chi));
    cfg.validate();
    if (!(sample_every > 0.0))
        throw ArgumentError("passive dispersion: sample_every must be > 0");

    ParticleEnsemble ens = ParticleEnsemble::uniform(n_particles, init_rng);
    Stepper stepper(std::move(state), LightParams{}, cfg);

    MsdSeries series;
    series.t.push_back(0.0);
    series.msd.push_back(0.0);
    const long n_steps = std::lround(duration / cfg.dt);
    const long stride = std::max(1L, std::lround(sample_every / cfg.dt));
    for (long s = 1; s <= n_steps; ++s) {
        stepper.advance_fields(flow_rng);
        stepper.step(ens);
        if (s % stride == 0 || s == n_steps) {
            series.t.push_back(s * cfg.dt);
            series.msd.push_back(ens.mean_square_displacement());
        }
    }
    return series;
}

}  // namespace phx
