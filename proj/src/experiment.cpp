#include "qgs/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "qgs/errors.hpp"
#include "qgs/one_form.hpp"
#include "qgs/snapshot.hpp"
#include "qgs/stochastic.hpp"
#include "qgs/verify.hpp"

namespace qgs {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ExperimentConfig apply_overrides(ExperimentConfig cfg, const RunOverrides& ov) {
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.out_dir) cfg.out_dir = *ov.out_dir;
    return cfg;
}

void write_resolved(const ExperimentConfig& cfg) {
    std::ofstream os(std::filesystem::path(cfg.out_dir) / "resolved.cfg");
    os << resolved_config(cfg);
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg0, const RunOverrides& ov) {
    try {
        ExperimentConfig cfg = apply_overrides(cfg0, ov);
        std::filesystem::create_directories(cfg.out_dir);
        write_resolved(cfg);

        VorticitySolver solver(cfg.solver, cfg.initial_stream());
        std::ofstream diag(std::filesystem::path(cfg.out_dir) / "diagnostics.csv");
        diag << "t,energy,enstrophy,max_vorticity\n";
        auto emit = [&]() {
            const SolverState& s = solver.state();
            diag << fmt17(s.t) << ',' << fmt17(s.diagnostics.energy) << ','
                 << fmt17(s.diagnostics.enstrophy) << ','
                 << fmt17(s.diagnostics.max_vorticity) << "\n";
        };
        auto snap = [&](int step) {
            char name[64];
            std::snprintf(name, sizeof name, "snapshot_%06d.spec", step);
            write_snapshot_file(std::filesystem::path(cfg.out_dir) / name,
                                solver.state().psi, {0.0, 0.0}, solver.state().t);
        };
        emit();
        snap(0);
        for (int s = 1; s <= cfg.solver.steps; ++s) {
            solver.step();
            emit();
            if (cfg.snapshot_every > 0 && s % cfg.snapshot_every == 0) snap(s);
        }
        if (cfg.solver.steps > 0) snap(cfg.solver.steps);
        if (solver.cfl_warning() && !ov.quiet)
            std::cerr << "warning: dt * max|u| * (n/2) >= 1, time step may be too large\n";
        if (!ov.quiet)
            std::cout << "run complete: t = " << solver.state().t
                      << ", energy = " << solver.state().diagnostics.energy << "\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

int run_simulation(const ExperimentConfig& cfg0, const RunOverrides& ov) {
    try {
        ExperimentConfig cfg = apply_overrides(cfg0, ov);
        if (cfg.particles <= 0) throw ConfigError("ensemble.particles must be positive");
        if (cfg.noise.kind == NoiseSpec::Kind::None && cfg.init_type ==
                ExperimentConfig::InitType::Rossby && cfg.init_eps == 0.0)
            throw ConfigError("simulation has neither noise nor drift");
        std::filesystem::create_directories(cfg.out_dir);
        write_resolved(cfg);

        SpectralField psi = cfg.initial_stream();
        SteadyDrift drift{VelocityField(psi)};
        ParticleEnsemble ensemble =
            ParticleEnsemble::uniform_random(cfg.particles, cfg.seed);
        std::vector<Vec2> start = ensemble.positions;

        std::ofstream paths(std::filesystem::path(cfg.out_dir) / "paths.csv");
        paths << "particle_id,t,theta1,theta2,phase\n";
        const int path_particles = std::min(cfg.particles, 64);  // trajectory sample

        DriftEstimator estimator(16);
        StepObserver est_obs = estimator.observer();
        std::vector<double> phase0;
        double t_last = 0.0;
        StepObserver observer = [&](int step, double t, std::span<const Vec2> pos,
                                    std::span<const double> phases) {
            est_obs(step, t, pos, phases);
            if (step == 0) phase0.assign(phases.begin(), phases.end());
            t_last = t;
            for (int p = 0; p < path_particles; ++p)
                paths << p << ',' << fmt17(t) << ',' << fmt17(pos[p].x1) << ','
                      << fmt17(pos[p].x2) << ',' << fmt17(phases[p]) << "\n";
        };

        simulate(cfg.noise, drift, cfg.solver.a, ensemble, cfg.solver.dt, cfg.solver.steps,
                 {}, observer);

        estimator.finalize();
        std::ofstream est(std::filesystem::path(cfg.out_dir) / "drift_estimate.csv");
        est << "bin_i,bin_j,theta1,theta2,count,u1_est,u1_se,u2_est,u2_se,u1_ref,u2_ref\n";
        for (int i = 0; i < estimator.bins(); ++i) {
            for (int j = 0; j < estimator.bins(); ++j) {
                const BinStats& b = estimator.bin(i, j);
                Vec2 c = estimator.bin_center(i, j);
                Vec2 ref = drift.eval(0.0, c);
                est << i << ',' << j << ',' << fmt17(c.x1) << ',' << fmt17(c.x2) << ','
                    << b.count << ',';
                if (b.missing())
                    est << "missing,missing,missing,missing,";
                else
                    est << fmt17(b.mean1) << ',' << fmt17(b.se1) << ',' << fmt17(b.mean2)
                        << ',' << fmt17(b.se2) << ',';
                est << fmt17(ref.x1) << ',' << fmt17(ref.x2) << "\n";
            }
        }

        std::ofstream summary(std::filesystem::path(cfg.out_dir) / "summary.csv");
        double phase_rate = t_last > 0
                                ? phase_rate_estimate(phase0, ensemble.phases, t_last)
                                : 0.0;
        double e0 = l2_inner(VelocityField(psi), VelocityField(psi));
        double action = 0.5 * t_last * (e0 + cfg.solver.a * cfg.solver.a);
        // per-component displacement variance (positions are unwrapped)
        double m1 = 0, m2 = 0, v1 = 0, v2 = 0;
        for (int p = 0; p < ensemble.size(); ++p) {
            m1 += ensemble.positions[p].x1 - start[p].x1;
            m2 += ensemble.positions[p].x2 - start[p].x2;
        }
        m1 /= ensemble.size();
        m2 /= ensemble.size();
        for (int p = 0; p < ensemble.size(); ++p) {
            double d1 = ensemble.positions[p].x1 - start[p].x1 - m1;
            double d2 = ensemble.positions[p].x2 - start[p].x2 - m2;
            v1 += d1 * d1;
            v2 += d2 * d2;
        }
        if (ensemble.size() > 1) {
            v1 /= ensemble.size() - 1;
            v2 /= ensemble.size() - 1;
        }
        summary << "tau,phase_rate,action,disp_var1,disp_var2\n";
        summary << fmt17(t_last) << ',' << fmt17(phase_rate) << ',' << fmt17(action) << ','
                << fmt17(v1) << ',' << fmt17(v2) << "\n";

        if (!ov.quiet)
            std::cout << "simulation complete: " << cfg.particles << " particles, tau = "
                      << t_last << ", phase rate = " << phase_rate << "\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

int run_verify(const std::string& suite, bool quiet) {
    std::vector<CheckResult> checks;
    if (suite == "cocycle")
        checks = verify_cocycle();
    else if (suite == "lemma")
        checks = verify_lemma();
    else if (suite == "generator")
        checks = verify_generator();
    else if (suite == "formulation")
        checks = verify_formulation();
    else if (suite == "integrability")
        checks = verify_integrability();
    else {
        std::cerr << "unknown verify suite '" << suite
                  << "' (expected cocycle|lemma|generator|formulation|integrability)\n";
        return 2;
    }
    bool all;
    if (quiet) {
        all = true;
        for (const auto& c : checks) all = all && c.pass;
    } else {
        std::cout << "suite: " << suite << "\n";
        all = print_checks(std::cout, checks);
        if (suite == "integrability") {
            std::cout << "report:\n"
                      << cohomology_report_json(check_cohomologous(
                             standard_gamma_family(64, 71), 1.0 / kTwoPi, 0.0));
        }
        std::cout << (all ? "all checks passed\n" : "FAILURES present\n");
    }
    return all ? 0 : 1;
}

}  // namespace qgs
