#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qgs/config.hpp"
#include "qgs/errors.hpp"
#include "qgs/qgs_solver.hpp"
#include "qgs/stochastic.hpp"

using namespace qgs;

namespace {

SpectralField single_mode(int n, int k1, int k2, double eps) {
    SpectralField psi(n);
    psi.at(k1, k2) = Complex(0.5 * eps, 0.0);
    psi.at(-k1, -k2) = Complex(0.5 * eps, 0.0);
    return psi;
}

double max_grid_abs(const SpectralField& f) {
    Grid g = f.to_grid();
    double m = 0.0;
    for (size_t i = 0; i < g.size(); ++i) m = std::max(m, std::abs(g.data()[i]));
    return m;
}

}  // namespace

TEST_CASE("vorticity rhs of a single mode is the beta term alone") {
    const int n = 64;
    SolverConfig cfg;
    cfg.n = n;
    cfg.beta = 1.0;
    cfg.a = 1.0;
    SpectralField psi = single_mode(n, 1, 2, 1e-3);
    SpectralField rhs = vorticity_rhs(psi, cfg);
    SpectralField expect = -1.0 * psi.derivative(1);  // -a beta d1 psi
    CHECK((rhs - expect).max_abs_coeff() < 1e-16);

    CHECK(vorticity_rhs(SpectralField(n), cfg).max_abs_coeff() == 0.0);

    SpectralField with_mean = psi;
    with_mean.set_mean(0.2);
    CHECK_THROWS_AS((void)vorticity_rhs(with_mean, cfg), ConfigError);
}

TEST_CASE("vorticity rhs equals the term-by-term sum of the public operators") {
    const int n = 64;
    SolverConfig cfg;
    cfg.n = n;
    cfg.beta = 0.9;
    cfg.a = 1.3;
    cfg.nu = 2e-3;
    cfg.sigma_mode = SigmaMode::Spectral;
    cfg.m = 2;
    cfg.r = 3.0;
    SpectralField psi = single_mode(n, 1, 2, 0.4);
    psi += single_mode(n, 2, -1, 0.3);
    psi += single_mode(n, 0, 1, 0.2);

    SpectralField q = psi.laplacian();
    SpectralField oracle = -1.0 * poisson_bracket(psi, q);
    oracle -= (cfg.a * cfg.beta) * psi.derivative(1);
    oracle += cfg.nu * q.laplacian();
    // drag: -sigma(k) q with sigma(k) = -D(k)/2
    SpectralField drag(n);
    q.for_each_mode([&](int k1, int k2, const Complex& c) {
        drag.at(k1, k2) =
            0.5 * damping_multiplier({k1, k2}, cfg.m, cfg.r, CocycleParams{cfg.beta}) * c;
    });
    oracle += drag;

    SpectralField rhs = vorticity_rhs(psi, cfg);
    CHECK((rhs - oracle).max_abs_coeff() < 1e-12);

    // constant-sigma flavor
    cfg.sigma_mode = SigmaMode::Constant;
    cfg.sigma = 0.7;
    SpectralField oracle2 = -1.0 * poisson_bracket(psi, q);
    oracle2 -= (cfg.a * cfg.beta) * psi.derivative(1);
    oracle2 += cfg.nu * q.laplacian();
    oracle2 -= cfg.sigma * q;
    CHECK((vorticity_rhs(psi, cfg) - oracle2).max_abs_coeff() < 1e-12);
}

TEST_CASE("Rossby wave is advanced exactly: phase -beta k1/|k|^2, dissipative envelope") {
    const int n = 64, k1 = 1, k2 = 2;
    const double eps = 1e-3;
    SolverConfig cfg;
    cfg.n = n;
    cfg.dt = 1e-3;
    cfg.beta = 1.0;
    cfg.a = 1.0;

    SUBCASE("inviscid: travelling wave to 1e-6 at t = 1") {
        VorticitySolver solver(cfg, single_mode(n, k1, k2, eps));
        for (int s = 0; s < 1000; ++s) solver.step();
        const double t = 1.0, k2sq = k1 * k1 + k2 * k2;
        const double omega_r = -cfg.beta * k1 / k2sq;
        CHECK(omega_r == doctest::Approx(-0.2));
        Grid got = solver.state().psi.to_grid();
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double t1 = kTwoPi * i / n, t2 = kTwoPi * j / n;
                double want = eps * std::cos(k1 * t1 + k2 * t2 - omega_r * t);
                worst = std::max(worst, std::abs(got(i, j) - want));
            }
        CHECK(worst < 1e-6);
    }

    SUBCASE("viscous + friction: amplitude envelope, phase untouched") {
        cfg.nu = 1e-3;
        cfg.sigma_mode = SigmaMode::Constant;
        cfg.sigma = 1e-3;
        VorticitySolver solver(cfg, single_mode(n, k1, k2, eps));
        for (int s = 0; s < 1000; ++s) solver.step();
        const double t = 1.0, k2sq = k1 * k1 + k2 * k2;
        Complex c = solver.state().psi.at(k1, k2);
        double amp = 2.0 * std::abs(c);
        double want = eps * std::exp(-(cfg.nu * k2sq + cfg.sigma) * t);
        CHECK(std::abs(amp - want) < 1e-6 * eps);
        double phase = std::atan2(-c.imag(), c.real());
        CHECK(std::abs(phase - (-cfg.beta * k1 / k2sq) * t) < 1e-9);
    }
}

TEST_CASE("inviscid invariants over 1e3 steps") {
    const int n = 64;
    SolverConfig cfg;
    cfg.n = n;
    cfg.dt = 1e-3;
    cfg.a = 1.0;
    cfg.nu = 0.0;

    SpectralField psi0 = single_mode(n, 1, 2, 0.05);
    psi0 += single_mode(n, 2, -1, 0.04);
    psi0 += single_mode(n, 3, 1, 0.02);

    SUBCASE("energy with beta on") {
        cfg.beta = 1.7;
        VorticitySolver solver(cfg, psi0);
        double e0 = solver.state().diagnostics.energy;
        for (int s = 0; s < 1000; ++s) solver.step();
        CHECK(std::abs(solver.state().diagnostics.energy - e0) / e0 < 1e-8);
    }
    SUBCASE("energy and enstrophy with beta = 0") {
        cfg.beta = 0.0;
        VorticitySolver solver(cfg, psi0);
        double e0 = solver.state().diagnostics.energy;
        double z0 = solver.state().diagnostics.enstrophy;
        for (int s = 0; s < 1000; ++s) solver.step();
        CHECK(std::abs(solver.state().diagnostics.energy - e0) / e0 < 1e-8);
        CHECK(std::abs(solver.state().diagnostics.enstrophy - z0) / z0 < 1e-8);
    }
}

TEST_CASE("self-convergence of the time stepper is at least second order") {
    const int n = 64;
    SolverConfig base;
    base.n = n;
    base.beta = 1.0;
    base.a = 1.0;
    base.nu = 1e-3;
    base.sigma_mode = SigmaMode::Constant;
    base.sigma = 5e-4;
    SpectralField psi0 = single_mode(n, 1, 2, 0.9);
    psi0 += single_mode(n, 3, 1, 0.6);  // distinct |k|^2 keeps the bracket active

    const double t_end = 0.2;
    auto terminal = [&](double dt) {
        SolverConfig cfg = base;
        cfg.dt = dt;
        VorticitySolver solver(cfg, psi0);
        int steps = static_cast<int>(std::llround(t_end / dt));
        for (int s = 0; s < steps; ++s) solver.step();
        return solver.state().psi;
    };
    SpectralField ref = terminal(5e-4);
    double e1 = (terminal(8e-3) - ref).max_abs_coeff();
    double e2 = (terminal(4e-3) - ref).max_abs_coeff();
    CHECK(e1 / e2 >= 3.5);  // the integrating-factor RK4 actually lands near 16
}

TEST_CASE("blow-up raises a numerical error") {
    const int n = 32;
    SolverConfig cfg;
    cfg.n = n;
    cfg.dt = 50.0;
    cfg.beta = 0.0;
    cfg.a = 0.0;
    SpectralField psi0 = single_mode(n, 1, 2, 5.0);
    psi0 += single_mode(n, 3, -2, 4.0);
    VorticitySolver solver(cfg, psi0);
    CHECK_THROWS_AS(
        [&] {
            for (int s = 0; s < 200; ++s) solver.step();
        }(),
        NumericalError);
    CHECK(solver.cfl_warning());
}

TEST_CASE("step() free function advances a state by dt") {
    const int n = 32;
    SolverConfig cfg;
    cfg.n = n;
    cfg.dt = 1e-3;
    SolverState s0;
    s0.t = 0.5;
    s0.psi = single_mode(n, 1, 1, 0.1);
    SolverState s1 = step(s0, cfg);
    CHECK(s1.t == doctest::Approx(0.501));
    CHECK(s1.diagnostics.energy > 0.0);
}

TEST_CASE("abstract Euler-Arnold right-hand side") {
    const int n = 64;
    SolverConfig cfg;
    cfg.n = n;
    cfg.beta = 1.0;
    cfg.a = 1.0;
    cfg.m = 2;
    cfg.r = 3.0;
    cfg.nu = viscosity_coefficient(2, 3.0);
    cfg.sigma_mode = SigmaMode::Spectral;
    NoiseSpec noise{NoiseSpec::Kind::Kolmogorov, 2, 3.0, 0.0};

    SUBCASE("central component is always zero") {
        ExtendedElement u{VelocityField(random_stream(n, 6, 0.5, 77)), 1.0};
        CHECK(euler_arnold_rhs(u, noise, cfg).a == 0.0);
    }

    SUBCASE("noise off and a = 0 reduces to -ad*_u u") {
        SolverConfig c2 = cfg;
        c2.a = 0.0;
        c2.nu = 0.0;
        c2.sigma_mode = SigmaMode::None;
        VelocityField u(random_stream(n, 8, 0.7, 78));
        ExtendedElement rhs = euler_arnold_rhs({u, 0.0}, NoiseSpec{}, c2);
        VelocityField expect = -1.0 * coadjoint_velocity(u, u);
        VelocityField diff = rhs.u - expect;
        CHECK(std::sqrt(l2_inner(diff, diff)) < 1e-14);
    }

    SUBCASE("matches the vorticity form under grad_perp") {
        for (uint64_t seed : {5u, 6u}) {
            SpectralField psi = random_stream(n, 10, 0.5, seed);
            ExtendedElement u{VelocityField(psi), cfg.a};
            SpectralField lhs = euler_arnold_rhs(u, noise, cfg).u.stream().laplacian();
            SpectralField want = vorticity_rhs(psi, cfg);
            CHECK(max_grid_abs(lhs - want) < 1e-8);
        }
        // single Rossby mode with the Kolmogorov closure
        SpectralField psi = single_mode(n, 1, 2, 1e-3);
        ExtendedElement u{VelocityField(psi), cfg.a};
        SpectralField lhs = euler_arnold_rhs(u, noise, cfg).u.stream().laplacian();
        CHECK(max_grid_abs(lhs - vorticity_rhs(psi, cfg)) < 1e-12);
    }
}

TEST_CASE("variational residual detects solutions and non-solutions") {
    const int n = 64;
    SolverConfig cfg;
    cfg.n = n;
    cfg.dt = 1e-3;
    cfg.beta = 1.0;
    cfg.a = 1.0;
    cfg.m = 2;
    cfg.r = 3.0;
    cfg.nu = viscosity_coefficient(2, 3.0);
    cfg.sigma_mode = SigmaMode::Spectral;
    NoiseSpec noise{NoiseSpec::Kind::Kolmogorov, 2, 3.0, 0.0};

    const double tau = 0.3;
    const int steps = static_cast<int>(tau / cfg.dt);
    VorticitySolver solver(cfg, single_mode(n, 1, 2, 0.05));
    std::vector<ExtendedElement> traj;
    traj.reserve(steps + 1);
    traj.push_back({VelocityField(solver.state().psi), cfg.a});
    for (int s = 0; s < steps; ++s) {
        solver.step();
        traj.push_back({VelocityField(solver.state().psi), cfg.a});
    }

    auto unit_direction = [&](uint64_t seed, double b) {
        ExtendedElement base{VelocityField(random_stream(n, 4, 1.0, seed)), b};
        double norm = std::sqrt(ext_inner(base, base));
        base.u *= 1.0 / norm;
        base.a /= norm;
        return sine_squared_direction(base, tau);
    };

    SUBCASE("zero direction gives zero") {
        TestDirection v = sine_squared_direction({VelocityField(n), 0.0}, tau);
        CHECK(variational_residual(traj, cfg.dt, v, noise, cfg) == 0.0);
    }

    SUBCASE("solver trajectories are critical, perturbed ones are not") {
        double worst = 0.0;
        for (int d = 0; d < 10; ++d)
            worst = std::max(worst, std::abs(variational_residual(
                                        traj, cfg.dt, unit_direction(40 + d, 0.1 * d), noise,
                                        cfg)));
        CHECK(worst < 1e-5);

        std::vector<ExtendedElement> bad = traj;
        SpectralField bump = single_mode(n, 0, 1, 0.1);
        for (auto& e : bad) {
            SpectralField s = e.u.stream();
            s += bump;
            e.u = VelocityField(s);
        }
        double detect = 0.0;
        for (int d = 0; d < 10; ++d)
            detect = std::max(detect, std::abs(variational_residual(
                                          bad, cfg.dt, unit_direction(40 + d, 0.1 * d),
                                          noise, cfg)));
        // aligned direction for good measure
        ExtendedElement aligned{VelocityField(bump), 0.0};
        aligned.u *= 1.0 / std::sqrt(ext_inner(aligned, aligned));
        detect = std::max(detect,
                          std::abs(variational_residual(
                              bad, cfg.dt, sine_squared_direction(aligned, tau), noise, cfg)));
        CHECK(detect > 1e-3);
    }

    SUBCASE("non-vanishing envelopes are rejected") {
        TestDirection v{{VelocityField(random_stream(n, 3, 1.0, 99)), 0.0},
                        [](double) { return 1.0; },
                        [](double) { return 0.0; }};
        CHECK_THROWS_AS((void)variational_residual(traj, cfg.dt, v, noise, cfg),
                        ConfigError);
    }
}

TEST_CASE("action criticality: dJ/deps along admissible variations is the residual") {
    const int n = 64;
    NoiseSpec noise{NoiseSpec::Kind::Kolmogorov, 2, 3.0, 0.0};
    SolverConfig cfg;
    cfg.n = n;
    cfg.dt = 1e-3;
    cfg.beta = 1.0;
    cfg.a = 1.0;
    cfg.m = 2;
    cfg.r = 3.0;
    cfg.nu = viscosity_coefficient(2, 3.0);
    cfg.sigma_mode = SigmaMode::Spectral;
    CocycleParams p{cfg.beta};

    const double tau = 0.2;
    const int steps = static_cast<int>(tau / cfg.dt);
    VorticitySolver solver(cfg, single_mode(n, 1, 2, 0.05));
    std::vector<ExtendedElement> traj{{VelocityField(solver.state().psi), cfg.a}};
    for (int s = 0; s < steps; ++s) {
        solver.step();
        traj.push_back({VelocityField(solver.state().psi), cfg.a});
    }

    ExtendedElement base{VelocityField(random_stream(n, 3, 1.0, 314)), 0.5};
    TestDirection v = sine_squared_direction(base, tau);

    // Variation of the reduced velocity along v-hat, per sample.
    auto dissip = [&](const VelocityField& V) {
        SpectralField g(n);
        V.stream().for_each_mode([&](int k1, int k2, const Complex& c) {
            double d = 0.5 * damping_multiplier({k1, k2}, noise.m, noise.r, p);
            g.at(k1, k2) = (-cfg.nu * (k1 * k1 + k2 * k2) + d) * c;
        });
        return VelocityField(std::move(g));
    };
    VelocityField dV = dissip(base.u);
    std::vector<VelocityField> du(traj.size(), VelocityField(n));
    std::vector<double> da(traj.size(), 0.0);
    for (size_t i = 0; i < traj.size(); ++i) {
        double t = cfg.dt * static_cast<double>(i);
        double s = v.envelope(t), sd = v.envelope_dot(t);
        du[i] = sd * base.u + s * dV - s * velocity_bracket(base.u, traj[i].u);
        da[i] = sd * base.a + s * roger_cocycle(base.u, traj[i].u, p);
    }

    auto action_of = [&](double eps) {
        double acc = 0.0;
        for (size_t i = 0; i < traj.size(); ++i) {
            VelocityField u = traj[i].u + eps * du[i];
            double a = traj[i].a + eps * da[i];
            double w = (i == 0 || i + 1 == traj.size()) ? 0.5 : 1.0;
            acc += w * (l2_inner(u, u) + a * a);
        }
        return 0.5 * acc * cfg.dt;
    };

    // at eps = 0 the in-test quadrature is exactly action_estimate
    std::vector<VelocityField> u_samples;
    for (const auto& e : traj) u_samples.push_back(e.u);
    CHECK(action_of(0.0) ==
          doctest::Approx(action_estimate(u_samples, cfg.dt, cfg.a)).epsilon(1e-14));

    const double eps = 1e-4;
    double fd = (action_of(eps) - action_of(-eps)) / (2.0 * eps);
    double res = variational_residual(traj, cfg.dt, v, noise, cfg);
    CHECK(std::abs(fd - res) < 1e-10);   // same first variation, same quadrature
    CHECK(std::abs(fd) < 1e-5);          // critical point: J changes at O(eps^2) only
    double curvature = (action_of(eps) + action_of(-eps) - 2.0 * action_of(0.0)) / (eps * eps);
    CHECK(std::abs(action_of(eps) - action_of(0.0)) <
          eps * 1e-5 + eps * eps * (std::abs(curvature) + 1.0));
}

TEST_CASE("pressure diagnostic reproduces the Taylor-Green pressure") {
    const int n = 64;
    // u = (sin t1 cos t2, -cos t1 sin t2) = grad_perp(-sin t1 sin t2):
    // Delta p = -div((u.grad) u) gives p = (cos 2t1 + cos 2t2)/4.
    SpectralField psi = SpectralField::from_grid(sample_grid(
        n, [](double t1, double t2) { return -std::sin(t1) * std::sin(t2); }));
    SpectralField p = pressure_diagnostic(VelocityField(psi));
    Grid got = p.to_grid();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double t1 = kTwoPi * i / n, t2 = kTwoPi * j / n;
            double want = 0.25 * (std::cos(2 * t1) + std::cos(2 * t2));
            worst = std::max(worst, std::abs(got(i, j) - want));
        }
    CHECK(worst < 1e-12);
}
