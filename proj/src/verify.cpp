#include "qgs/verify.hpp"

#include <cmath>
#include <ostream>

#include "qgs/config.hpp"
#include "qgs/extension.hpp"
#include "qgs/one_form.hpp"
#include "qgs/qgs_solver.hpp"
#include "qgs/stochastic.hpp"

namespace qgs {

namespace {

VelocityField random_velocity(int n, int kmax, uint64_t seed, double norm = 1.0) {
    return VelocityField(random_stream(n, kmax, norm, seed));
}

double grid_quadrature_inner(const VelocityField& u, const VelocityField& v) {
    auto [u1, u2] = u.velocity_grids();
    auto [v1, v2] = v.velocity_grids();
    double sum = 0.0, comp = 0.0;
    for (size_t i = 0; i < u1.size(); ++i) {
        double term = u1.data()[i] * v1.data()[i] + u2.data()[i] * v2.data()[i] - comp;
        double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    int n = u.resolution();
    return sum * (kTwoPi / n) * (kTwoPi / n);
}

/// T via the projection route P_e(psi alpha#) = P_e((0, beta psi)): independent
/// of the diagonal multiplier used by t_operator.
VelocityField t_via_projection(const VelocityField& u, CocycleParams p) {
    Grid psi = u.stream().to_grid();
    Grid z(u.resolution());
    Grid v2(u.resolution());
    for (size_t i = 0; i < psi.size(); ++i) v2.data()[i] = p.beta * psi.data()[i];
    return leray_project(z, v2);
}

CheckResult max_check(std::string name, double value, double tol, std::string note = "") {
    return {std::move(name), value < tol, value, tol, std::move(note)};
}

}  // namespace

std::vector<CheckResult> verify_cocycle(int n, int pairs, uint64_t seed) {
    std::vector<CheckResult> out;
    CocycleParams p{1.0};
    const int kmax = 10;

    double antisym = 0.0, paths = 0.0, self = 0.0;
    for (int i = 0; i < pairs; ++i) {
        VelocityField u = random_velocity(n, kmax, seed + 2 * i);
        VelocityField v = random_velocity(n, kmax, seed + 2 * i + 1);
        double quv = roger_cocycle_quadrature(u, v, p);
        double qvu = roger_cocycle_quadrature(v, u, p);
        antisym = std::max(antisym, std::abs(quv + qvu));
        paths = std::max(paths, std::abs(quv - roger_cocycle(u, v, p)));
        self = std::max(self, std::abs(roger_cocycle_quadrature(u, u, p)));
    }
    out.push_back(max_check("antisymmetry omega(u,v) = -omega(v,u)", antisym, 1e-12));
    out.push_back(max_check("quadrature vs spectral evaluation", paths, 1e-10));
    out.push_back(max_check("omega(u,u) = 0", self, 1e-12));

    double cocycle_id = 0.0;
    for (int i = 0; i < pairs; ++i) {
        VelocityField u = random_velocity(n, kmax, seed + 1000 + 3 * i);
        VelocityField v = random_velocity(n, kmax, seed + 1001 + 3 * i);
        VelocityField w = random_velocity(n, kmax, seed + 1002 + 3 * i);
        double r = roger_cocycle(velocity_bracket(u, v), w, p) +
                   roger_cocycle(velocity_bracket(v, w), u, p) +
                   roger_cocycle(velocity_bracket(w, u), v, p);
        cocycle_id = std::max(cocycle_id, std::abs(r));
    }
    out.push_back(max_check("cocycle identity on Hamiltonian triples", cocycle_id, 1e-9));

    // Harmonic conventions: omega vanishes whenever either slot is constant.
    VelocityField harm(SpectralField(n), {0.7, -0.3});
    VelocityField xf = random_velocity(n, kmax, seed + 5000);
    double harm_res = std::max({std::abs(roger_cocycle(harm, xf, p)),
                                std::abs(roger_cocycle(xf, harm, p)),
                                std::abs(roger_cocycle(harm, harm, p))});
    out.push_back(max_check("harmonic directions are omega-null", harm_res, 1e-14));
    return out;
}

std::vector<CheckResult> verify_lemma(int n, int pairs, uint64_t seed) {
    std::vector<CheckResult> out;
    CocycleParams p{1.0};
    const int kmax = 10;

    double adjoint = 0.0;
    for (int i = 0; i < pairs; ++i) {
        VelocityField u = random_velocity(n, kmax, seed + 2 * i);
        VelocityField v = random_velocity(n, kmax, seed + 2 * i + 1);
        double lhs = l2_inner(t_operator(u, p), v);
        double rhs = roger_cocycle_quadrature(u, v, p);
        adjoint = std::max(adjoint, std::abs(lhs - rhs));
    }
    out.push_back(max_check("operator-T adjoint identity <<Tu,v>> = omega(u,v)",
                            adjoint, 1e-10));

    // Lemma structure: T swaps the A/B pair with opposite-sign coefficients.
    const double r = 3.0;
    std::vector<WaveIndex> ks = {{1, 0}, {1, 2}, {2, 1}, {0, 3}, {3, -1}};
    double cross = 0.0, coeff_err = 0.0, negation = 0.0;
    for (const WaveIndex& k : ks) {
        VelocityField A = basis_field({BasisKind::A, k, r}, n);
        VelocityField B = basis_field({BasisKind::B, k, r}, n);
        VelocityField TA = t_via_projection(A, p);
        VelocityField TB = t_via_projection(B, p);
        double nb = grid_quadrature_inner(B, B);
        double na = grid_quadrature_inner(A, A);
        double ca = grid_quadrature_inner(TA, B) / nb;  // TA on B
        double cb = grid_quadrature_inner(TB, A) / na;  // TB on A
        double expect = p.beta * k.k1 / static_cast<double>(k.l2sq());
        coeff_err = std::max(coeff_err, std::abs(ca - expect));
        negation = std::max(negation, std::abs(ca + cb));
        // Cross-projections onto every other basis direction in the window.
        for (const WaveIndex& j : half_lattice(4)) {
            VelocityField Aj = basis_field({BasisKind::A, j, r}, n);
            VelocityField Bj = basis_field({BasisKind::B, j, r}, n);
            double pa = grid_quadrature_inner(TA, Aj);
            double pb = (j == k) ? 0.0 : grid_quadrature_inner(TA, Bj);
            cross = std::max({cross, std::abs(pa), std::abs(pb)});
        }
    }
    out.push_back(max_check("T A_k lies on B_k (cross-projections)", cross, 1e-10));
    out.push_back(max_check("coefficient of T A_k equals beta k1/|k|^2", coeff_err, 1e-10));
    out.push_back(max_check("T B_k coefficient is the negation", negation, 1e-10));

    // The damping sum: quadrature-assembled oracle vs the closed multiplier.
    const int m = 3;
    double oracle_err = 0.0;
    for (const WaveIndex& k : half_lattice(m)) {
        for (BasisKind kind : {BasisKind::A, BasisKind::B}) {
            VelocityField u = basis_field({kind, k, r}, n);
            VelocityField s_oracle(n);
            for (const WaveIndex& j : half_lattice(m)) {
                VelocityField Aj = basis_field({BasisKind::A, j, r}, n);
                VelocityField Bj = basis_field({BasisKind::B, j, r}, n);
                s_oracle += roger_cocycle_quadrature(u, Aj, p) * t_via_projection(Aj, p);
                s_oracle += roger_cocycle_quadrature(u, Bj, p) * t_via_projection(Bj, p);
            }
            double d_oracle = grid_quadrature_inner(s_oracle, u) / grid_quadrature_inner(u, u);
            oracle_err = std::max(oracle_err,
                                  std::abs(d_oracle - damping_multiplier(k, m, r, p)));
        }
    }
    out.push_back(
        max_check("damping multipliers D(k) match the quadrature oracle", oracle_err, 1e-10,
                  "D(k) = -beta^2 (N/2) lambda^2 k1^2/|k|^2 on the half-lattice"));

    // Diagonality, symmetry, negative semi-definiteness on random fields
    // (|k|_inf <= 1 keeps every mode inside the |k|_1 <= m band).
    double sym = 0.0, diag = 0.0;
    double most_positive = -1.0;
    for (int i = 0; i < 20; ++i) {
        VelocityField u = random_velocity(n, 1, seed + 9000 + 2 * i);
        VelocityField v = random_velocity(n, 1, seed + 9001 + 2 * i);
        VelocityField Su = damping_sum(u, m, r, p);
        VelocityField Sv = damping_sum(v, m, r, p);
        sym = std::max(sym, std::abs(l2_inner(Su, v) - l2_inner(u, Sv)));
        most_positive = std::max(most_positive, l2_inner(Su, u));
        // Diagonal: S(u) has no modes u lacks, and per-mode ratios equal D(k).
        Su.stream().for_each_mode([&](int k1, int k2, const Complex& c) {
            Complex cu = u.stream().at(k1, k2);
            Complex expect = damping_multiplier({k1, k2}, m, r, p) * cu;
            diag = std::max(diag, std::abs(c - expect));
        });
    }
    out.push_back(max_check("damping sum symmetric", sym, 1e-9));
    out.push_back(max_check("damping sum Fourier-diagonal", diag, 1e-12));
    out.push_back({"damping sum negative semi-definite", most_positive <= 1e-12,
                   most_positive, 1e-12, "max <<Su,u>> over random fields"});
    return out;
}

std::vector<CheckResult> verify_generator(int mc_particles, uint64_t seed) {
    std::vector<CheckResult> out;
    const int n = 64, m = 4;
    const double r = 3.0;
    const double nu = viscosity_coefficient(m, r);

    // Grid identity on 10 test functions.
    std::vector<SpectralField> fs;
    auto single = [&](int k1, int k2, bool cosine) {
        SpectralField f(n);
        f.at(k1, k2) = cosine ? Complex(0.5, 0) : Complex(0, -0.5);
        f.at(-k1, -k2) = cosine ? Complex(0.5, 0) : Complex(0, 0.5);
        return f;
    };
    fs.push_back(single(1, 0, true));
    fs.push_back(single(0, 1, false));
    fs.push_back(single(1, 1, true));
    fs.push_back(single(2, -1, false));
    fs.push_back(single(0, 3, true));
    fs.push_back(single(3, 2, false));
    for (int i = 0; i < 4; ++i) fs.push_back(random_stream(n, 8, 1.0, seed + i));

    double grid_err = 0.0;
    for (const SpectralField& f : fs) {
        SpectralField sum(n);
        for (const WaveIndex& k : half_lattice(m)) {
            for (BasisKind kind : {BasisKind::A, BasisKind::B}) {
                VelocityField H = basis_field({kind, k, r}, n);
                auto [h1, h2] = H.velocity_grids();
                // H.grad f, twice, spectrally exact in between.
                Grid f1 = f.derivative(1).to_grid(), f2 = f.derivative(2).to_grid();
                Grid g(n);
                for (size_t i = 0; i < g.size(); ++i)
                    g.data()[i] = h1.data()[i] * f1.data()[i] + h2.data()[i] * f2.data()[i];
                SpectralField G = SpectralField::from_grid(g);
                Grid g1 = G.derivative(1).to_grid(), g2 = G.derivative(2).to_grid();
                SpectralField hhf(n);
                Grid acc(n);
                for (size_t i = 0; i < acc.size(); ++i)
                    acc.data()[i] = h1.data()[i] * g1.data()[i] + h2.data()[i] * g2.data()[i];
                sum += SpectralField::from_grid(acc);
            }
        }
        Grid lhs = sum.to_grid();
        Grid rhs = f.laplacian().to_grid();
        for (size_t i = 0; i < lhs.size(); ++i)
            grid_err = std::max(grid_err,
                                std::abs(lhs.data()[i] - 2.0 * nu * rhs.data()[i]));
    }
    out.push_back(max_check("grid identity sum A_kA_kf + B_kB_kf = 2 nu Delta f",
                            grid_err, 1e-10, "|k|_1 <= 4, r = 3, 10 test functions"));

    // Monte Carlo generator, both noise models, started from fixed points.
    auto mc_generator = [&](const NoiseSpec& spec, double nu_expected, const char* label) {
        const double t_end = 0.01, dt = 1e-3;
        std::vector<Vec2> starts = {{0.3, 1.1}, {2.0, 4.4}, {5.5, 0.2}};
        double worst_z = 0.0;
        for (size_t si = 0; si < starts.size(); ++si) {
            ParticleEnsemble e;
            e.master_seed = seed + 100 + si;
            e.positions.assign(mc_particles, starts[si]);
            e.phases.assign(mc_particles, 0.0);
            ZeroDrift drift;
            simulate(spec, drift, 0.0, e, dt, static_cast<int>(t_end / dt));
            double mean = 0.0, sq = 0.0;
            for (const Vec2& pth : e.positions) {
                double f = std::cos(pth.x1);
                mean += f;
                sq += f * f;
            }
            mean /= mc_particles;
            double var = std::max(0.0, sq / mc_particles - mean * mean);
            double se = std::sqrt(var / mc_particles);
            double f0 = std::cos(starts[si].x1);
            double expect = f0 - t_end * nu_expected * f0;  // nu Delta f, Delta cos = -cos
            worst_z = std::max(worst_z, std::abs(mean - expect) / se);
        }
        out.push_back(max_check(std::string("MC generator matches nu Delta f (") + label + ")",
                                worst_z, 3.0, "|z| over 3 start points"));
    };
    mc_generator({NoiseSpec::Kind::Kolmogorov, m, r, 0.0}, nu, "kolmogorov");
    mc_generator({NoiseSpec::Kind::TwoFields, 0, 3.0, 0.25}, 0.25, "two_fields");

    // Heun vs Euler-Maruyama with the same increments: paired first-moment
    // difference and variance difference within Monte Carlo error.
    {
        const int np = std::max(mc_particles / 5, 1000);
        NoiseSpec spec{NoiseSpec::Kind::Kolmogorov, 2, r, 0.0};
        SimOptions heun, em;
        em.scheme = SimOptions::Scheme::EulerMaruyama;
        ParticleEnsemble e1 = ParticleEnsemble::uniform_random(np, seed + 777);
        ParticleEnsemble e2 = e1;
        ZeroDrift drift;
        simulate(spec, drift, 0.0, e1, 2e-3, 100, heun);
        simulate(spec, drift, 0.0, e2, 2e-3, 100, em);
        double dmean = 0.0, dsq = 0.0;
        double m1 = 0.0, m2 = 0.0, v1 = 0.0, v2 = 0.0;
        for (int i = 0; i < np; ++i) {
            double d1 = e1.positions[i].x1 - e2.positions[i].x1;
            dmean += d1;
            dsq += d1 * d1;
        }
        dmean /= np;
        double dse = std::sqrt(std::max(dsq / np - dmean * dmean, 1e-30) / np);
        for (int i = 0; i < np; ++i) {
            m1 += e1.positions[i].x1;
            m2 += e2.positions[i].x1;
        }
        m1 /= np;
        m2 /= np;
        for (int i = 0; i < np; ++i) {
            v1 += (e1.positions[i].x1 - m1) * (e1.positions[i].x1 - m1);
            v2 += (e2.positions[i].x1 - m2) * (e2.positions[i].x1 - m2);
        }
        v1 /= np - 1;
        v2 /= np - 1;
        double var_se = std::sqrt(2.0 / (np - 1)) * std::max(v1, v2);
        out.push_back(max_check("Heun vs Euler-Maruyama first moment (paired)",
                                std::abs(dmean) / dse, 3.0, "z of paired difference"));
        out.push_back(max_check("Heun vs Euler-Maruyama second moment",
                                std::abs(v1 - v2) / var_se, 3.0, "z of variance difference"));
    }

    // Two-field displacement variance = 2 nu t.
    {
        const double nu2 = 0.1, t_end = 0.5, dt = 5e-3;
        const int np = std::min(mc_particles, 10000);
        ParticleEnsemble e = ParticleEnsemble::uniform_random(np, seed + 999);
        std::vector<Vec2> start = e.positions;
        ZeroDrift drift;
        simulate({NoiseSpec::Kind::TwoFields, 0, 3.0, nu2}, drift, 0.0, e, dt,
                 static_cast<int>(t_end / dt));
        double v = 0.0;
        for (int i = 0; i < np; ++i) {
            double d1 = e.positions[i].x1 - start[i].x1;
            double d2 = e.positions[i].x2 - start[i].x2;
            v += d1 * d1 + d2 * d2;
        }
        v /= 2.0 * np;  // per component
        double rel = std::abs(v - 2.0 * nu2 * t_end) / (2.0 * nu2 * t_end);
        out.push_back(max_check("two-field displacement variance = 2 nu t", rel, 0.05,
                                "relative error, 1e4 particles"));
    }
    return out;
}

std::vector<CheckResult> verify_formulation(uint64_t seed) {
    std::vector<CheckResult> out;
    const int n = 64;

    // Pointwise right-hand-side agreement, Kolmogorov and two-field closures.
    auto pointwise = [&](const NoiseSpec& noise, SolverConfig cfg, const char* label) {
        SpectralField psi = random_stream(n, 10, 0.5, seed + 1);
        ExtendedElement uh{VelocityField(psi), cfg.a};
        ExtendedElement rhs = euler_arnold_rhs(uh, noise, cfg);
        SpectralField lhs = rhs.u.stream().laplacian();
        SpectralField ref = vorticity_rhs(psi, cfg);
        Grid dg = (lhs - ref).to_grid();
        double err = 0.0;
        for (size_t i = 0; i < dg.size(); ++i) err = std::max(err, std::abs(dg.data()[i]));
        out.push_back(max_check(std::string("pointwise rhs equivalence (") + label + ")",
                                err, 1e-8));
        out.push_back(max_check(std::string("central component of abstract rhs (") + label +
                                    ")",
                                std::abs(rhs.a), 1e-15));
    };
    {
        SolverConfig cfg;
        cfg.n = n;
        cfg.beta = 1.0;
        cfg.a = 1.0;
        cfg.m = 2;
        cfg.r = 3.0;
        cfg.nu = viscosity_coefficient(2, 3.0);
        cfg.sigma_mode = SigmaMode::Spectral;
        pointwise({NoiseSpec::Kind::Kolmogorov, 2, 3.0, 0.0}, cfg, "kolmogorov");
    }
    {
        SolverConfig cfg;
        cfg.n = n;
        cfg.beta = 1.0;
        cfg.a = 1.0;
        cfg.nu = 2e-3;
        cfg.sigma_mode = SigmaMode::None;
        pointwise({NoiseSpec::Kind::TwoFields, 0, 3.0, 2e-3}, cfg, "two_fields");
    }

    // Rossby wave: exact phase and dissipative envelope.
    {
        SolverConfig cfg;
        cfg.n = n;
        cfg.dt = 1e-3;
        cfg.beta = 1.0;
        cfg.a = 1.0;
        cfg.nu = 1e-3;
        cfg.sigma_mode = SigmaMode::Constant;
        cfg.sigma = 1e-3;
        const int k1 = 1, k2 = 2;
        const double eps = 1e-3;
        SpectralField psi0(n);
        psi0.at(k1, k2) = Complex(0.5 * eps, 0.0);
        psi0.at(-k1, -k2) = Complex(0.5 * eps, 0.0);
        VorticitySolver solver(cfg, psi0);
        const int steps = 1000;
        for (int s = 0; s < steps; ++s) solver.step();
        const double t = cfg.dt * steps;
        const double k2sq = k1 * k1 + k2 * k2;
        const double omega_r = -cfg.beta * k1 / k2sq;
        Complex c = solver.state().psi.at(k1, k2);
        // psi(t) = eps * exp(-(nu|k|^2 + sigma) t) cos(k.theta - omega_r t)
        double decay = std::exp(-(cfg.nu * k2sq + cfg.sigma) * t);
        Complex expect = 0.5 * eps * decay * std::exp(Complex(0.0, -omega_r * t));
        double phase_meas = std::atan2(-c.imag(), c.real());  // since coeff ~ e^{-i w t}
        double phase_expect = std::fmod(omega_r * t, kTwoPi);
        double phase_err = std::abs(std::remainder(phase_meas - phase_expect, kTwoPi)) /
                           std::abs(omega_r * t);
        out.push_back(max_check("Rossby phase speed (relative)", phase_err, 1e-5,
                                "k=(1,2), dt=1e-3, t=1"));
        double env_err = std::abs(std::abs(c) - 0.5 * eps * decay) / (0.5 * eps);
        out.push_back(max_check("Rossby amplitude envelope exp(-(nu|k|^2+sigma)t)",
                                env_err, 1e-6));
        out.push_back(max_check("Rossby solution field error", std::abs(c - expect), 1e-8,
                                "mode coefficient vs analytic"));
    }

    // Inviscid conservation over 1e3 steps.
    {
        SolverConfig cfg;
        cfg.n = n;
        cfg.dt = 1e-3;
        cfg.beta = 0.8;
        cfg.a = 1.0;
        cfg.nu = 0.0;
        cfg.sigma_mode = SigmaMode::None;
        SpectralField psi0 = random_stream(n, 6, 0.4, seed + 7);
        VorticitySolver solver(cfg, psi0);
        double e0 = solver.state().diagnostics.energy;
        for (int s = 0; s < 1000; ++s) solver.step();
        double drift = std::abs(solver.state().diagnostics.energy - e0) / e0;
        out.push_back(max_check("inviscid energy drift over 1e3 steps (beta = 0.8)",
                                drift, 1e-8, "relative"));

        cfg.beta = 0.0;
        VorticitySolver s2(cfg, psi0);
        double z0 = s2.state().diagnostics.enstrophy;
        e0 = s2.state().diagnostics.energy;
        for (int s = 0; s < 1000; ++s) s2.step();
        double zdrift = std::abs(s2.state().diagnostics.enstrophy - z0) / z0;
        double edrift = std::abs(s2.state().diagnostics.energy - e0) / e0;
        out.push_back(max_check("inviscid enstrophy drift over 1e3 steps (beta = 0)",
                                std::max(zdrift, edrift), 1e-8, "relative"));
    }

    // Marched trajectories of the two formulations agree at second order.
    {
        NoiseSpec noise{NoiseSpec::Kind::Kolmogorov, 2, 3.0, 0.0};
        SolverConfig cfg;
        cfg.n = n;
        cfg.beta = 1.0;
        cfg.a = 1.0;
        cfg.m = 2;
        cfg.r = 3.0;
        cfg.nu = viscosity_coefficient(2, 3.0);
        cfg.sigma_mode = SigmaMode::Spectral;
        SpectralField psi0 = random_stream(n, 6, 0.3, seed + 13);
        const double t_end = 0.2;
        auto run_diff = [&](double dt) {
            SolverConfig c = cfg;
            c.dt = dt;
            int steps = static_cast<int>(std::llround(t_end / dt));
            VorticitySolver vs(c, psi0);
            EulerArnoldSolver es(c, noise, {VelocityField(psi0), c.a});
            for (int s = 0; s < steps; ++s) {
                vs.step();
                es.step();
            }
            SpectralField d = vs.state().psi - es.element().u.stream();
            return d.max_abs_coeff();
        };
        double e1 = run_diff(2e-3);
        double e2 = run_diff(1e-3);
        bool ok = e2 < std::max(e1 / 3.5, 1e-13) && e1 < 1e-6;
        out.push_back({"trajectory agreement is O(dt^2) or better", ok, e1 == 0 ? 0 : e1 / std::max(e2, 1e-300),
                       3.5, "error ratio when halving dt"});
    }

    // Two-field closure carries no zeroth-order damping.
    {
        NoiseSpec noise{NoiseSpec::Kind::TwoFields, 0, 3.0, 1e-3};
        SolverConfig cfg;
        cfg.n = n;
        cfg.dt = 1e-3;
        cfg.beta = 1.0;
        cfg.a = 1.0;
        cfg.nu = noise.nu;
        cfg.sigma_mode = SigmaMode::None;
        const int k1 = 1, k2 = 2;
        const double k2sq = k1 * k1 + k2 * k2;
        SpectralField psi0(n);
        psi0.at(k1, k2) = Complex(5e-4, 0.0);
        psi0.at(-k1, -k2) = Complex(5e-4, 0.0);
        EulerArnoldSolver es(cfg, noise, {VelocityField(psi0), cfg.a});
        const int steps = 1000;
        for (int s = 0; s < steps; ++s) es.step();
        double t = cfg.dt * steps;
        double amp = std::abs(es.element().u.stream().at(k1, k2));
        double expect = 5e-4 * std::exp(-cfg.nu * k2sq * t);
        double rel = std::abs(amp - expect) / expect;
        out.push_back(max_check("two-field model: decay rate nu |k|^2 alone (no sigma)",
                                rel, 1e-6, "sigma term absent"));
    }
    return out;
}

std::vector<CheckResult> verify_integrability(uint64_t seed) {
    std::vector<CheckResult> out;
    const int n = 64;
    const double alpha = 1.0 / kTwoPi;

    auto mode = [&](int k1, int k2, bool cosine) {
        SpectralField f(n);
        f.at(k1, k2) = cosine ? Complex(0.5, 0) : Complex(0, -0.5);
        f.at(-k1, -k2) = cosine ? Complex(0.5, 0) : Complex(0, 0.5);
        return f;
    };
    auto family = standard_gamma_family(n, seed);
    auto checks = check_cohomologous(family, alpha, 0.0);
    double worst = 0.0, worst_s = 0.0;
    bool all_pass = true;
    for (const auto& c : checks) {
        worst = std::max(worst, c.abs_diff);
        worst_s = std::max(worst_s, c.s_independence);
        all_pass = all_pass && c.pass;
    }
    out.push_back({"integral criterion int_N gamma = int alpha ^ gamma", all_pass, worst,
                   1e-10, "7 closed families, alpha coefficient 1/(2 pi)"});
    out.push_back(max_check("h(s) independent of the section height s", worst_s, 1e-10));

    // The two constant step values read straight off the families.
    double step1 = std::abs(integrate_over_N(family[0].second, 0.0) - kTwoPi);
    double step2 = std::abs(integrate_over_N(family[1].second, 0.0));
    out.push_back(max_check("int_N theta1 = 2 pi", step1, 1e-10));
    out.push_back(max_check("int_N theta2 = 0", step2, 1e-10));

    // Non-closed forms are rejected with the right residual.
    {
        OneForm bad{mode(0, 1, false), SpectralField(n), 0.0, 0.0};  // sin(theta2) theta1
        auto res = check_cohomologous({{"sin(theta2)theta1", bad}}, alpha, 0.0);
        double expect = std::sqrt(kDomainArea / 2.0);  // L2 norm of cos(theta2)
        double dev = std::abs(res[0].closed_residual - expect);
        bool ok = res[0].rejected && dev < 1e-10;
        out.push_back({"non-closed gamma rejected with residual ||cos(theta2)||", ok, dev,
                       1e-10, "deviation from sqrt(N/2)"});
    }

    // Adding an exact form changes neither integral.
    {
        SpectralField phi = random_stream(n, 8, 1.3, seed + 2);
        OneForm base{mode(2, 0, true), mode(0, 2, false), 0.4, -0.2};
        OneForm shifted{base.f + phi.derivative(1), base.g + phi.derivative(2), base.c1,
                        base.c2};
        double d_line =
            std::abs(integrate_over_N(base, 0.0) - integrate_over_N(shifted, 0.0));
        double d_wedge =
            std::abs(wedge_integral(alpha, base) - wedge_integral(alpha, shifted));
        out.push_back(max_check("exactness insensitivity of both integrals",
                                std::max(d_line, d_wedge), 1e-10));
    }
    return out;
}

bool print_checks(std::ostream& os, const std::vector<CheckResult>& checks) {
    bool all = true;
    for (const CheckResult& c : checks) {
        all = all && c.pass;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3g", c.value);
        os << (c.pass ? "  [ok]   " : "  [FAIL] ") << c.name << "  (value " << buf
           << ", tol ";
        std::snprintf(buf, sizeof buf, "%.3g", c.tol);
        os << buf << ")";
        if (!c.note.empty()) os << "  -- " << c.note;
        os << "\n";
    }
    return all;
}

}  // namespace qgs
