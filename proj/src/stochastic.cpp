#include "qgs/stochastic.hpp"

#include <atomic>
#include <cmath>

#include "qgs/errors.hpp"
#include "qgs/parallel.hpp"
#include "qgs/philox.hpp"

namespace qgs {

SteadyDrift::SteadyDrift(const VelocityField& u, double coeff_cutoff) {
    harmonic_ = u.harmonic();
    u.stream().for_each_mode([&](int k1, int k2, const Complex& c) {
        if (!in_half_lattice(k1, k2) || (k1 == 0 && k2 == 0)) return;
        if (std::abs(c) <= coeff_cutoff) return;
        modes_.push_back({static_cast<double>(k1), static_cast<double>(k2), 2.0 * c.real(),
                          2.0 * c.imag()});
    });
}

Vec2 SteadyDrift::eval(double, Vec2 theta) const {
    // Pair +-k contribution of psi: 2 Re[c e^{i k.theta}] gives the velocity
    // (k2, -k1) * 2(Re c sin + Im c cos)(k.theta).
    double u1 = harmonic_.x1, u2 = harmonic_.x2;
    for (const Mode& m : modes_) {
        double ph = m.k1 * theta.x1 + m.k2 * theta.x2;
        double w = m.two_re * std::sin(ph) + m.two_im * std::cos(ph);
        u1 += m.k2 * w;
        u2 -= m.k1 * w;
    }
    return {u1, u2};
}

DriftSeries::DriftSeries(std::vector<VelocityField> snapshots, double t0, double dt_snap)
    : t0_(t0), dt_(dt_snap) {
    if (snapshots.empty()) throw ConfigError("drift series: no snapshots");
    fields_.reserve(snapshots.size());
    for (const auto& s : snapshots) fields_.emplace_back(s);
}

Vec2 DriftSeries::eval(double t, Vec2 theta) const {
    double s = (t - t0_) / dt_;
    if (s <= 0.0 || fields_.size() == 1) return fields_.front().eval(t, theta);
    size_t i = static_cast<size_t>(s);
    if (i + 1 >= fields_.size()) return fields_.back().eval(t, theta);
    double w = s - static_cast<double>(i);
    Vec2 lo = fields_[i].eval(t, theta), hi = fields_[i + 1].eval(t, theta);
    return {(1.0 - w) * lo.x1 + w * hi.x1, (1.0 - w) * lo.x2 + w * hi.x2};
}

ParticleEnsemble ParticleEnsemble::uniform_random(int n_particles, uint64_t seed) {
    if (n_particles <= 0) throw ConfigError("ensemble: particle count must be positive");
    ParticleEnsemble e;
    e.master_seed = seed;
    e.positions.resize(n_particles);
    e.phases.assign(n_particles, 0.0);
    for (int i = 0; i < n_particles; ++i) {
        // Dedicated counter plane (step = ~0) so init draws never collide
        // with per-step noise draws.
        auto u = philox_uniform2(seed, static_cast<uint32_t>(i), 0xFFFFFFFFu, 0u, 0u);
        e.positions[i] = {kTwoPi * u[0], kTwoPi * u[1]};
    }
    return e;
}

std::vector<Vec2> ParticleEnsemble::wrapped_positions() const {
    std::vector<Vec2> out(positions.size());
    for (size_t i = 0; i < positions.size(); ++i)
        out[i] = {wrap_angle(positions[i].x1), wrap_angle(positions[i].x2)};
    return out;
}

namespace {

struct NoiseDirection {
    double k1, k2, lambda;
};

// Stratonovich increment of the noise part at theta, with the A/B pair of
// each lattice direction sharing one (cos, sin) evaluation.
struct NoiseTable {
    std::vector<NoiseDirection> kolmogorov;  // empty for TwoFields
    double two_field_amp = 0.0;              // sqrt(2 nu)
    int fields_per_dir = 2;

    int field_count() const {
        return kolmogorov.empty() ? 2 : static_cast<int>(kolmogorov.size()) * 2;
    }
};

NoiseTable make_table(const NoiseSpec& spec) {
    NoiseTable t;
    switch (spec.kind) {
        case NoiseSpec::Kind::None:
            break;
        case NoiseSpec::Kind::Kolmogorov:
            for (const WaveIndex& k : half_lattice(spec.m))
                t.kolmogorov.push_back({static_cast<double>(k.k1),
                                        static_cast<double>(k.k2), lambda_decay(k, spec.r)});
            break;
        case NoiseSpec::Kind::TwoFields:
            t.two_field_amp = std::sqrt(2.0 * spec.nu);
            break;
    }
    return t;
}

Vec2 noise_increment(const NoiseTable& t, Vec2 theta, const double* dw) {
    if (t.two_field_amp != 0.0) return {t.two_field_amp * dw[0], t.two_field_amp * dw[1]};
    double d1 = 0.0, d2 = 0.0;
    size_t j = 0;
    for (const NoiseDirection& d : t.kolmogorov) {
        double ph = d.k1 * theta.x1 + d.k2 * theta.x2;
        // A_k = lambda cos(k.theta) (k2, -k1);  B_k = lambda sin(k.theta) (k2, -k1)
        double w = d.lambda * (std::cos(ph) * dw[j] + std::sin(ph) * dw[j + 1]);
        d1 += d.k2 * w;
        d2 -= d.k1 * w;
        j += 2;
    }
    return {d1, d2};
}

}  // namespace

void simulate(const NoiseSpec& noise, const DriftField& drift, double a,
              ParticleEnsemble& ensemble, double dt, int steps, const SimOptions& opt,
              const StepObserver& observer) {
    if (dt <= 0.0) throw ConfigError("simulate: dt must be positive");
    if (steps < 0) throw ConfigError("simulate: negative step count");
    const NoiseTable table = make_table(noise);
    const int n_fields = noise.kind == NoiseSpec::Kind::None ? 0 : table.field_count();
    const double sqdt = std::sqrt(dt);
    const int np = ensemble.size();
    const bool heun = opt.scheme == SimOptions::Scheme::Heun;

    if (observer) {
        auto wrapped = ensemble.wrapped_positions();
        observer(0, 0.0, wrapped, ensemble.phases);
    }

    std::vector<double> dw(static_cast<size_t>(np) * std::max(n_fields, 1));

    for (int s = 0; s < steps; ++s) {
        const double t = dt * s;
        // Draw every increment for this step up front; the pair of draws for
        // fields (2j, 2j+1) of particle p depends only on (seed, p, s, j).
        // Fields always come in pairs (A_k/B_k, or the two constant fields).
        if (n_fields > 0) {
            parallel_chunks(np, opt.threads, [&](int begin, int end, int) {
                for (int p = begin; p < end; ++p)
                    for (int f = 0; f < n_fields; f += 2) {
                        auto z = philox_normal2(ensemble.master_seed,
                                                static_cast<uint32_t>(p),
                                                static_cast<uint32_t>(s),
                                                static_cast<uint32_t>(f / 2));
                        dw[static_cast<size_t>(p) * n_fields + f] = sqdt * z[0];
                        dw[static_cast<size_t>(p) * n_fields + f + 1] = sqdt * z[1];
                    }
            });
        }

        std::atomic<bool> bad{false};
        parallel_chunks(np, opt.threads, [&](int begin, int end, int) {
            for (int p = begin; p < end; ++p) {
                const double* w = &dw[static_cast<size_t>(p) * std::max(n_fields, 1)];
                Vec2 th = ensemble.positions[p];
                Vec2 inc0 = n_fields > 0 ? noise_increment(table, th, w) : Vec2{};
                Vec2 u0 = drift.eval(t, th);
                Vec2 pred{th.x1 + inc0.x1 + u0.x1 * dt, th.x2 + inc0.x2 + u0.x2 * dt};
                if (!heun) {
                    ensemble.positions[p] = pred;
                } else {
                    Vec2 inc1 = n_fields > 0 ? noise_increment(table, pred, w) : Vec2{};
                    Vec2 u1 = drift.eval(t + dt, pred);
                    ensemble.positions[p] = {
                        th.x1 + 0.5 * (inc0.x1 + inc1.x1) + 0.5 * (u0.x1 + u1.x1) * dt,
                        th.x2 + 0.5 * (inc0.x2 + inc1.x2) + 0.5 * (u0.x2 + u1.x2) * dt};
                }
                if (!std::isfinite(ensemble.positions[p].x1) ||
                    !std::isfinite(ensemble.positions[p].x2))
                    bad.store(true, std::memory_order_relaxed);
                ensemble.phases[p] += a * dt;
            }
        });
        if (bad.load()) throw NumericalError("simulate: non-finite particle position");

        if (observer && ((s + 1) % opt.record_every == 0 || s + 1 == steps)) {
            auto wrapped = ensemble.wrapped_positions();
            observer(s + 1, dt * (s + 1), wrapped, ensemble.phases);
        }
    }
}

DriftEstimator::DriftEstimator(int bins) : bins_(bins) {
    if (bins < 1) throw ConfigError("drift estimator: bins must be >= 1");
    size_t nb = static_cast<size_t>(bins) * bins;
    stats_.resize(nb);
    sum1_.assign(nb, 0.0);
    sum2_.assign(nb, 0.0);
    sumsq1_.assign(nb, 0.0);
    sumsq2_.assign(nb, 0.0);
    counts_.assign(nb, 0);
}

Vec2 DriftEstimator::bin_center(int i1, int i2) const {
    double w = kTwoPi / bins_;
    return {(i1 + 0.5) * w, (i2 + 0.5) * w};
}

void DriftEstimator::add_window(std::span<const Vec2> before, std::span<const Vec2> after,
                                double eps) {
    if (before.size() != after.size())
        throw ConfigError("drift estimator: window snapshots differ in size");
    const double w = kTwoPi / bins_;
    for (size_t p = 0; p < before.size(); ++p) {
        // Minimal-image displacement: each component mapped to (-pi, pi].
        auto unwrap = [](double d) {
            d = std::fmod(d, kTwoPi);
            if (d > kTwoPi / 2) d -= kTwoPi;
            if (d <= -kTwoPi / 2) d += kTwoPi;
            return d;
        };
        double d1 = unwrap(after[p].x1 - before[p].x1) / eps;
        double d2 = unwrap(after[p].x2 - before[p].x2) / eps;
        int b1 = std::min(bins_ - 1, static_cast<int>(wrap_angle(before[p].x1) / w));
        int b2 = std::min(bins_ - 1, static_cast<int>(wrap_angle(before[p].x2) / w));
        size_t b = static_cast<size_t>(b1) * bins_ + b2;
        sum1_[b] += d1;
        sum2_[b] += d2;
        sumsq1_[b] += d1 * d1;
        sumsq2_[b] += d2 * d2;
        counts_[b] += 1;
    }
    finalized_ = false;
}

StepObserver DriftEstimator::observer() {
    return [this](int, double t, std::span<const Vec2> pos, std::span<const double>) {
        if (have_prev_) {
            add_window(prev_, pos, t - prev_t_);
        }
        prev_.assign(pos.begin(), pos.end());
        prev_t_ = t;
        have_prev_ = true;
    };
}

void DriftEstimator::finalize() {
    if (finalized_) return;
    for (size_t b = 0; b < stats_.size(); ++b) {
        BinStats& s = stats_[b];
        s.count = counts_[b];
        if (s.count == 0) continue;  // flagged missing, never zero-filled
        double n = static_cast<double>(s.count);
        s.mean1 = sum1_[b] / n;
        s.mean2 = sum2_[b] / n;
        if (s.count > 1) {
            double var1 = std::max(0.0, (sumsq1_[b] - n * s.mean1 * s.mean1) / (n - 1.0));
            double var2 = std::max(0.0, (sumsq2_[b] - n * s.mean2 * s.mean2) / (n - 1.0));
            s.se1 = std::sqrt(var1 / n);
            s.se2 = std::sqrt(var2 / n);
        }
    }
    finalized_ = true;
}

DriftEstimator::Comparison DriftEstimator::compare(const DriftField& drift,
                                                   double t_ref) const {
    Comparison c;
    double num1 = 0.0, num2 = 0.0, den1 = 0.0, den2 = 0.0;
    long within = 0, total = 0;
    for (int i1 = 0; i1 < bins_; ++i1) {
        for (int i2 = 0; i2 < bins_; ++i2) {
            const BinStats& s = bin(i1, i2);
            if (s.missing() || s.se1 == 0.0 || s.se2 == 0.0) continue;
            Vec2 ref = drift.eval(t_ref, bin_center(i1, i2));
            double z1 = (s.mean1 - ref.x1) / s.se1;
            double z2 = (s.mean2 - ref.x2) / s.se2;
            c.max_abs_z = std::max({c.max_abs_z, std::abs(z1), std::abs(z2)});
            within += (std::abs(z1) <= 3.0) + (std::abs(z2) <= 3.0);
            total += 2;
            num1 += (s.mean1 - ref.x1) / (s.se1 * s.se1);
            den1 += 1.0 / (s.se1 * s.se1);
            num2 += (s.mean2 - ref.x2) / (s.se2 * s.se2);
            den2 += 1.0 / (s.se2 * s.se2);
            ++c.nonempty_bins;
        }
    }
    if (den1 > 0) c.pooled_z1 = (num1 / den1) / std::sqrt(1.0 / den1);
    if (den2 > 0) c.pooled_z2 = (num2 / den2) / std::sqrt(1.0 / den2);
    if (total > 0) c.frac_within_3se = static_cast<double>(within) / total;
    return c;
}

double phase_rate_estimate(std::span<const double> phases_before,
                           std::span<const double> phases_after, double eps) {
    if (phases_before.size() != phases_after.size() || phases_before.empty())
        throw ConfigError("phase rate estimate: bad snapshots");
    double acc = 0.0;
    for (size_t i = 0; i < phases_before.size(); ++i)
        acc += (phases_after[i] - phases_before[i]) / eps;
    return acc / static_cast<double>(phases_before.size());
}

double action_estimate(const std::vector<VelocityField>& drift_samples, double dt, double a) {
    if (drift_samples.size() < 2) throw ConfigError("action estimate: need >= 2 samples");
    double acc = 0.0;
    for (size_t i = 0; i < drift_samples.size(); ++i) {
        double integrand = l2_inner(drift_samples[i], drift_samples[i]) + a * a;
        double w = (i == 0 || i + 1 == drift_samples.size()) ? 0.5 : 1.0;
        acc += w * integrand;
    }
    return 0.5 * acc * dt;
}

double occupancy_chi_square(std::span<const Vec2> positions, int bins) {
    std::vector<long> occ(static_cast<size_t>(bins) * bins, 0);
    const double w = kTwoPi / bins;
    for (const Vec2& p : positions) {
        int b1 = std::min(bins - 1, static_cast<int>(wrap_angle(p.x1) / w));
        int b2 = std::min(bins - 1, static_cast<int>(wrap_angle(p.x2) / w));
        occ[static_cast<size_t>(b1) * bins + b2] += 1;
    }
    double expected = static_cast<double>(positions.size()) / (bins * bins);
    double chi2 = 0.0;
    for (long c : occ) {
        double d = static_cast<double>(c) - expected;
        chi2 += d * d / expected;
    }
    return chi2;
}

}  // namespace qgs
