#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "qgs/qgs_solver.hpp"
#include "qgs/velocity_field.hpp"

namespace qgs {

/// Drift field evaluated at particle positions.  Implementations are
/// read-only during a simulation step and safe to share across threads.
class DriftField {
  public:
    virtual ~DriftField() = default;
    virtual Vec2 eval(double t, Vec2 theta) const = 0;
};

class ZeroDrift final : public DriftField {
  public:
    Vec2 eval(double, Vec2) const override { return {0.0, 0.0}; }
};

/// Steady band-limited drift, evaluated by direct mode summation (exact;
/// intended for drifts with at most a few thousand active modes).
class SteadyDrift final : public DriftField {
  public:
    explicit SteadyDrift(const VelocityField& u, double coeff_cutoff = 1e-15);
    Vec2 eval(double, Vec2 theta) const override;
    size_t active_modes() const { return modes_.size(); }

  private:
    struct Mode {
        double k1, k2, two_re, two_im;
    };
    std::vector<Mode> modes_;
    Vec2 harmonic_;
};

/// Piecewise-linear-in-time sequence of steady snapshots.
class DriftSeries final : public DriftField {
  public:
    DriftSeries(std::vector<VelocityField> snapshots, double t0, double dt_snap);
    Vec2 eval(double t, Vec2 theta) const override;

  private:
    std::vector<SteadyDrift> fields_;
    double t0_, dt_;
};

struct ParticleEnsemble {
    std::vector<Vec2> positions;  // unwrapped; wrap with wrapped_positions()
    std::vector<double> phases;   // central S^1 coordinate per member
    uint64_t master_seed = 0;

    int size() const { return static_cast<int>(positions.size()); }
    static ParticleEnsemble uniform_random(int n_particles, uint64_t seed);
    std::vector<Vec2> wrapped_positions() const;
};

inline double wrap_angle(double x) {
    double y = std::fmod(x, kTwoPi);
    return y < 0 ? y + kTwoPi : y;
}

struct SimOptions {
    enum class Scheme { Heun, EulerMaruyama } scheme = Scheme::Heun;
    int record_every = 1;  // observer cadence in steps
    int threads = 0;       // 0 = library default (QGS_THREADS / hardware)
};

/// Called after step `step_index` (and once at step 0 before any stepping).
using StepObserver =
    std::function<void(int step_index, double t, std::span<const Vec2> positions,
                       std::span<const double> phases)>;

/// March the Stratonovich particle SDE
///   dtheta = sum_i H_i(theta) o dW^i + u(t, theta) dt,     dc = a dt,
/// with Heun predictor-corrector (the noise fields satisfy nabla_H H = 0, so
/// the Ito drift needs no correction and Euler-Maruyama is offered as the
/// cross-check scheme).  Brownian increments come from the counter-based
/// generator keyed by (seed, particle, step, field): results are independent
/// of thread count and particle evaluation order.
void simulate(const NoiseSpec& noise, const DriftField& drift, double a,
              ParticleEnsemble& ensemble, double dt, int steps, const SimOptions& opt = {},
              const StepObserver& observer = {});

/// Binned conditional-expectation estimate of the drift: displacements over
/// a window epsilon, minimal-image unwrapped, averaged per spatial bin of
/// the departure position.
struct BinStats {
    long count = 0;
    double mean1 = 0.0, mean2 = 0.0;
    double se1 = 0.0, se2 = 0.0;  // standard errors
    bool missing() const { return count == 0; }
};

class DriftEstimator {
  public:
    explicit DriftEstimator(int bins = 16);

    /// Feed one recording window [t, t+eps).
    void add_window(std::span<const Vec2> before, std::span<const Vec2> after, double eps);
    /// Observer adapter: call on every record; windows are consecutive records.
    StepObserver observer();

    int bins() const { return bins_; }
    const BinStats& bin(int i1, int i2) const { return stats_[i1 * bins_ + i2]; }
    Vec2 bin_center(int i1, int i2) const;
    /// Finalize means / standard errors (idempotent).
    void finalize();

    /// Pooled projection of (estimate - reference drift) in units of its
    /// standard error, plus per-bin z statistics against the reference.
    struct Comparison {
        double pooled_z1 = 0.0, pooled_z2 = 0.0;
        double max_abs_z = 0.0;
        double frac_within_3se = 1.0;
        long nonempty_bins = 0;
    };
    Comparison compare(const DriftField& drift, double t_ref) const;

  private:
    int bins_;
    std::vector<BinStats> stats_;
    std::vector<double> sum1_, sum2_, sumsq1_, sumsq2_;
    std::vector<long> counts_;
    std::vector<Vec2> prev_;
    double prev_t_ = 0.0;
    bool have_prev_ = false;
    bool finalized_ = false;
};

/// Rate estimate of the central phase from recorded phases (equals a).
double phase_rate_estimate(std::span<const double> phases_before,
                           std::span<const double> phases_after, double eps);

/// Reduced stochastic action J = 1/2 int_0^tau (<<u,u>> + a^2) dt for a
/// given drift, by trapezoid quadrature with spacing dt over [0, tau].
double action_estimate(const std::vector<VelocityField>& drift_samples, double dt, double a);

/// Chi-square statistic of the occupancy of bins x bins cells (uniformity
/// diagnostic; 255-dof 1% critical value is 310.457 for bins = 16).
double occupancy_chi_square(std::span<const Vec2> positions, int bins);

}  // namespace qgs
