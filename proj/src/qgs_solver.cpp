#include "qgs/qgs_solver.hpp"

#include <cmath>

#include "qgs/errors.hpp"

namespace qgs {

namespace {

double sigma_of_mode(int k1, int k2, const SolverConfig& cfg) {
    switch (cfg.sigma_mode) {
        case SigmaMode::None:
            return 0.0;
        case SigmaMode::Constant:
            return cfg.sigma;
        case SigmaMode::Spectral:
            // -D(k)/2 >= 0: the damping sum enters the equation as +S(u)/2.
            return -0.5 * damping_multiplier({k1, k2}, cfg.m, cfg.r, CocycleParams{cfg.beta});
    }
    return 0.0;
}

Complex linear_symbol(int k1, int k2, const SolverConfig& cfg) {
    int k2sq = k1 * k1 + k2 * k2;
    if (k2sq == 0) return {0.0, 0.0};
    double phase = cfg.a * cfg.beta * k1 / static_cast<double>(k2sq);
    double decay = cfg.nu * k2sq + sigma_of_mode(k1, k2, cfg);
    return {-decay, phase};
}

}  // namespace

SpectralField vorticity_rhs(const SpectralField& psi, const SolverConfig& cfg) {
    if (std::abs(psi.mean()) > 1e-12)
        throw ConfigError("vorticity_rhs: stream function must be zero-mean");
    SpectralField q = psi.laplacian();
    SpectralField rhs = -1.0 * poisson_bracket(psi, q, cfg.dealias);
    rhs.for_each_mode([&](int k1, int k2, Complex& c) {
        // -a beta d1 psi, nu Delta q, -sigma(k) q, all diagonal.
        const Complex& ps = psi.at(k1, k2);
        const Complex& qq = q.at(k1, k2);
        c += -cfg.a * cfg.beta * Complex(0.0, k1) * ps -
             (cfg.nu * (k1 * k1 + k2 * k2) + sigma_of_mode(k1, k2, cfg)) * qq;
    });
    return rhs;
}

Diagnostics compute_diagnostics(const SpectralField& psi) {
    Diagnostics d;
    double e = 0.0, z = 0.0;
    psi.for_each_mode([&](int k1, int k2, const Complex& c) {
        double k2sq = k1 * k1 + k2 * k2;
        double p2 = std::norm(c);
        e += k2sq * p2;
        z += k2sq * k2sq * p2;
    });
    d.energy = 0.5 * kDomainArea * e;
    d.enstrophy = 0.5 * kDomainArea * z;
    Grid q = psi.laplacian().to_grid();
    for (size_t i = 0; i < q.size(); ++i)
        d.max_vorticity = std::max(d.max_vorticity, std::abs(q.data()[i]));
    return d;
}

VorticitySolver::VorticitySolver(SolverConfig cfg, SpectralField psi0, double t0)
    : cfg_(cfg) {
    if (psi0.resolution() != cfg.n)
        throw ConfigError("solver: initial stream resolution differs from config n");
    psi0.zero_mean();
    if (cfg.dealias) psi0.dealias();
    state_.t = t0;
    state_.psi = std::move(psi0);
    state_.diagnostics = compute_diagnostics(state_.psi);

    const int n = cfg_.n;
    exp_half_.assign(static_cast<size_t>(n) * n, Complex(1, 0));
    exp_full_.assign(static_cast<size_t>(n) * n, Complex(1, 0));
    SpectralField layout(n);
    size_t idx = 0;
    layout.for_each_mode([&](int k1, int k2, const Complex&) {
        Complex L = linear_symbol(k1, k2, cfg_);
        exp_half_[idx] = std::exp(0.5 * cfg_.dt * L);
        exp_full_[idx] = std::exp(cfg_.dt * L);
        ++idx;
    });
}

SpectralField VorticitySolver::nonlinear(const SpectralField& q) const {
    if (!q.finite()) throw NumericalError("blow-up or instability: non-finite spectrum");
    // The zero mode of the bracket vanishes analytically; pin it so stages
    // stay in the zero-mean space.
    SpectralField qz = q;
    qz.zero_mean();
    SpectralField psi = qz.inv_laplacian();
    SpectralField out = -1.0 * poisson_bracket(psi, qz, cfg_.dealias);
    out.zero_mean();
    return out;
}

void VorticitySolver::step() {
    const double h = cfg_.dt;
    const int n = cfg_.n;
    SpectralField q = state_.psi.laplacian();

    {  // CFL-style warning: dt * max|u| * (n/2) < 1
        auto [u1, u2] = VelocityField(state_.psi).velocity_grids();
        double umax = 0.0;
        for (size_t i = 0; i < u1.size(); ++i)
            umax = std::max(umax, std::hypot(u1.data()[i], u2.data()[i]));
        if (h * umax * (n / 2) >= 1.0) cfl_warning_ = true;
    }

    auto apply = [&](const std::vector<Complex>& e, const SpectralField& f) {
        SpectralField out = f;
        size_t idx = 0;
        out.for_each_mode([&](int, int, Complex& c) { c *= e[idx++]; });
        return out;
    };

    // Integrating-factor RK4.
    SpectralField k1 = nonlinear(q);
    SpectralField k2 = nonlinear(apply(exp_half_, q + 0.5 * h * k1));
    SpectralField k3 = nonlinear(apply(exp_half_, q) + 0.5 * h * k2);
    SpectralField k4 = nonlinear(apply(exp_full_, q) + h * apply(exp_half_, k3));
    SpectralField qn = apply(exp_full_, q) +
                       (h / 6.0) * (apply(exp_full_, k1) + 2.0 * apply(exp_half_, k2) +
                                    2.0 * apply(exp_half_, k3) + k4);

    if (!qn.finite()) throw NumericalError("blow-up or instability: non-finite spectrum");
    state_.psi = qn.inv_laplacian();
    if (cfg_.dealias) state_.psi.dealias();
    state_.t += h;
    state_.diagnostics = compute_diagnostics(state_.psi);
}

SolverState step(const SolverState& s, const SolverConfig& cfg) {
    VorticitySolver solver(cfg, s.psi, s.t);
    solver.step();
    return solver.state();
}

ExtendedElement euler_arnold_rhs(const ExtendedElement& u_hat, const NoiseSpec& noise,
                                 const SolverConfig& cfg) {
    CocycleParams p{cfg.beta};
    VelocityField rhs = -1.0 * coadjoint_velocity(u_hat.u, u_hat.u);
    if (cfg.a != 0.0 && cfg.beta != 0.0) rhs -= cfg.a * t_operator(u_hat.u, p);

    switch (noise.kind) {
        case NoiseSpec::Kind::None:
            break;
        case NoiseSpec::Kind::Kolmogorov: {
            double nu = viscosity_coefficient(noise.m, noise.r);
            SpectralField g(cfg.n);
            u_hat.u.stream().for_each_mode([&](int k1, int k2, const Complex& c) {
                double k2sq = k1 * k1 + k2 * k2;
                double d = 0.5 * damping_multiplier({k1, k2}, noise.m, noise.r, p);
                g.at(k1, k2) = (-nu * k2sq + d) * c;
            });
            rhs += VelocityField(std::move(g));
            break;
        }
        case NoiseSpec::Kind::TwoFields: {
            SpectralField g(cfg.n);
            u_hat.u.stream().for_each_mode([&](int k1, int k2, const Complex& c) {
                g.at(k1, k2) = -noise.nu * (k1 * k1 + k2 * k2) * c;
            });
            rhs += VelocityField(std::move(g));
            break;
        }
    }
    return {std::move(rhs), 0.0};
}

EulerArnoldSolver::EulerArnoldSolver(SolverConfig cfg, NoiseSpec noise, ExtendedElement u0,
                                     double t0)
    : cfg_(cfg), noise_(noise), u_(std::move(u0)), t_(t0) {
    if (u_.u.resolution() != cfg.n)
        throw ConfigError("euler-arnold solver: resolution differs from config n");
    if (cfg_.dealias) u_.u.stream().dealias();
}

void EulerArnoldSolver::step() {
    const double h = cfg_.dt;
    auto rhs = [&](const ExtendedElement& x) { return euler_arnold_rhs(x, noise_, cfg_); };
    ExtendedElement k1 = rhs(u_);
    ExtendedElement k2 = rhs({u_.u + 0.5 * h * k1.u, u_.a});
    ExtendedElement k3 = rhs({u_.u + 0.5 * h * k2.u, u_.a});
    ExtendedElement k4 = rhs({u_.u + h * k3.u, u_.a});
    u_.u += (h / 6.0) * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
    if (!u_.u.stream().finite())
        throw NumericalError("blow-up or instability: non-finite spectrum");
    t_ += h;
}

TestDirection sine_squared_direction(ExtendedElement base, double tau) {
    const double w = kTwoPi / (2.0 * tau);  // pi / tau
    return {std::move(base),
            [w](double t) { double s = std::sin(w * t); return s * s; },
            [w, tau](double t) { return (kTwoPi / (2.0 * tau)) * std::sin(2.0 * w * t); }};
}

double variational_residual(const std::vector<ExtendedElement>& u_traj, double dt,
                            const TestDirection& v_hat, const NoiseSpec& noise,
                            const SolverConfig& cfg) {
    if (u_traj.size() < 2) throw ConfigError("variational_residual: trajectory too short");
    const double tau = dt * static_cast<double>(u_traj.size() - 1);
    if (std::abs(v_hat.envelope(0.0)) > 1e-12 || std::abs(v_hat.envelope(tau)) > 1e-12)
        throw ConfigError("variational_residual: test direction must vanish at t = 0 and tau");

    CocycleParams p{cfg.beta};
    const VelocityField& V = v_hat.base.u;
    const double b = v_hat.base.a;

    // nu Delta V + S(V)/2 once; the envelope scales it per sample.
    VelocityField dissV(cfg.n);
    double nu = 0.0;
    switch (noise.kind) {
        case NoiseSpec::Kind::None:
            break;
        case NoiseSpec::Kind::Kolmogorov:
            nu = viscosity_coefficient(noise.m, noise.r);
            break;
        case NoiseSpec::Kind::TwoFields:
            nu = noise.nu;
            break;
    }
    {
        SpectralField g(cfg.n);
        V.stream().for_each_mode([&](int k1, int k2, const Complex& c) {
            double d = noise.kind == NoiseSpec::Kind::Kolmogorov
                           ? 0.5 * damping_multiplier({k1, k2}, noise.m, noise.r, p)
                           : 0.0;
            g.at(k1, k2) = (-nu * (k1 * k1 + k2 * k2) + d) * c;
        });
        dissV = VelocityField(std::move(g));
    }

    double acc = 0.0;
    for (size_t i = 0; i < u_traj.size(); ++i) {
        double t = dt * static_cast<double>(i);
        double s = v_hat.envelope(t);
        double sd = v_hat.envelope_dot(t);
        const ExtendedElement& uh = u_traj[i];

        // g-part: s' V - s [V, u] + s (nu Delta V + S V / 2); central: s' b + s omega(V, u)
        // (alpha = -beta theta_2 orientation flips the cocycle sign of ad-hat).
        VelocityField g = sd * V + s * dissV;
        if (s != 0.0) g -= s * velocity_bracket(V, uh.u);
        double central = sd * b + s * roger_cocycle(V, uh.u, p);
        double integrand = l2_inner(g, uh.u) + central * uh.a;

        double w = (i == 0 || i + 1 == u_traj.size()) ? 0.5 : 1.0;  // trapezoid
        acc += w * integrand;
    }
    return acc * dt;
}

SpectralField pressure_diagnostic(const VelocityField& u) {
    auto [u1, u2] = u.velocity_grids();
    const SpectralField& psi = u.stream();
    SpectralField y1 = -1.0 * psi.derivative(2);
    SpectralField y2 = psi.derivative(1);
    Grid d1u1 = y1.derivative(1).to_grid(), d2u1 = y1.derivative(2).to_grid();
    Grid d1u2 = y2.derivative(1).to_grid(), d2u2 = y2.derivative(2).to_grid();
    const int n = u.resolution();
    Grid a1(n), a2(n);
    for (size_t i = 0; i < a1.size(); ++i) {
        a1.data()[i] = u1.data()[i] * d1u1.data()[i] + u2.data()[i] * d2u1.data()[i];
        a2.data()[i] = u1.data()[i] * d1u2.data()[i] + u2.data()[i] * d2u2.data()[i];
    }
    SpectralField f1 = SpectralField::from_grid(a1);
    SpectralField f2 = SpectralField::from_grid(a2);
    SpectralField div = f1.derivative(1) + f2.derivative(2);
    div.zero_mean();
    return (-1.0 * div).inv_laplacian();
}

}  // namespace qgs
