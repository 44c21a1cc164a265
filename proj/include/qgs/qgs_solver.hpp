#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qgs/extension.hpp"

namespace qgs {

enum class SigmaMode { None, Constant, Spectral };

/// Noise attached to the abstract equation: it fixes both the viscosity
/// K(u) and the zeroth-order damping sum.
struct NoiseSpec {
    enum class Kind { None, Kolmogorov, TwoFields } kind = Kind::None;
    int m = 0;        // Kolmogorov: half-lattice extent |k|_1 <= m
    double r = 3.0;   // Kolmogorov: spectral decay exponent
    double nu = 0.0;  // TwoFields: H1 = (sqrt(2 nu), 0), H2 = (0, sqrt(2 nu))
};

struct SolverConfig {
    int n = 64;
    double dt = 1e-3;
    int steps = 0;
    double beta = 1.0;
    double a = 1.0;  // central coordinate, constant along the flow
    double nu = 0.0;
    SigmaMode sigma_mode = SigmaMode::None;
    double sigma = 0.0;  // Constant mode
    int m = 0;           // Spectral mode
    double r = 3.0;      // Spectral mode
    bool dealias = true;
};

struct Diagnostics {
    double energy = 0.0;
    double enstrophy = 0.0;
    double max_vorticity = 0.0;
};

struct SolverState {
    double t = 0.0;
    SpectralField psi;
    Diagnostics diagnostics;
};

/// d/dt q for q = Delta psi:
///   -{psi, q} - a beta d1 psi + nu Delta q - sigma_op(q),
/// the sigma term being a constant sigma or the half-lattice damping
/// multiplier conjugated onto the vorticity, per config.
SpectralField vorticity_rhs(const SpectralField& psi, const SolverConfig& cfg);

Diagnostics compute_diagnostics(const SpectralField& psi);

/// Pseudo-spectral integrator for the stream-function form.  The linear
/// symbol (Rossby phase i a beta k1/|k|^2, decay nu |k|^2 + sigma(k)) is
/// integrated exactly per mode; the bracket goes through an integrating
/// factor RK4 stage loop.  A single-mode state is therefore advanced
/// exactly up to round-off.
class VorticitySolver {
  public:
    VorticitySolver(SolverConfig cfg, SpectralField psi0, double t0 = 0.0);

    const SolverState& state() const { return state_; }
    const SolverConfig& config() const { return cfg_; }

    /// Advance one dt.  Throws NumericalError on NaN/Inf.
    void step();
    bool cfl_warning() const { return cfl_warning_; }

  private:
    SpectralField nonlinear(const SpectralField& q) const;

    SolverConfig cfg_;
    SolverState state_;
    std::vector<Complex> exp_half_, exp_full_;  // per-mode linear propagators
    bool cfl_warning_ = false;
};

/// One pure step (convenience wrapper around VorticitySolver).
SolverState step(const SolverState& s, const SolverConfig& cfg);

/// Abstract right-hand side on the extension:
///   du/dt = -ad*_u u - a T u + K(u) + (1/2) sum_k omega(u,H_k) T H_k,
///   da/dt = 0,
/// with K and the damping sum fixed by the noise model.  The central
/// component of the result is always zero.  The aT orientation is the one
/// under which this agrees with vorticity_rhs (alpha = -beta theta_2).
ExtendedElement euler_arnold_rhs(const ExtendedElement& u_hat, const NoiseSpec& noise,
                                 const SolverConfig& cfg);

/// RK4 march of the abstract equation; used for the formulation
/// equivalence checks against VorticitySolver.
class EulerArnoldSolver {
  public:
    EulerArnoldSolver(SolverConfig cfg, NoiseSpec noise, ExtendedElement u0, double t0 = 0.0);
    const ExtendedElement& element() const { return u_; }
    double time() const { return t_; }
    void step();

  private:
    SolverConfig cfg_;
    NoiseSpec noise_;
    ExtendedElement u_;
    double t_ = 0.0;
};

/// Admissible variation direction: v_hat(t) = envelope(t) * base with
/// envelope(0) = envelope(tau) = 0.
struct TestDirection {
    ExtendedElement base;
    std::function<double(double)> envelope;
    std::function<double(double)> envelope_dot;
};

TestDirection sine_squared_direction(ExtendedElement base, double tau);

/// First variation of the stochastic kinetic energy along v_hat, by
/// time quadrature over the sampled trajectory (uniform spacing dt):
///   integral of << v_hat' + ad-hat_{v_hat} u_hat + (nu Delta v + S v / 2, 0),
///   u_hat >> dt,
/// in the same alpha-orientation as euler_arnold_rhs.  Vanishes (to
/// discretization error) iff the trajectory solves the modified equation.
/// Throws if the envelope does not vanish at the endpoints.
double variational_residual(const std::vector<ExtendedElement>& u_traj, double dt,
                            const TestDirection& v_hat, const NoiseSpec& noise,
                            const SolverConfig& cfg);

/// Diagnostic pressure: solves Delta p = -div((u.grad) u); output only,
/// the solver itself never forms p.
SpectralField pressure_diagnostic(const VelocityField& u);

}  // namespace qgs
